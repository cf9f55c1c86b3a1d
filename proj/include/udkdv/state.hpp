#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace udkdv {

using Value = std::int64_t;

/// A bi-infinite integer lattice: `cells` stored from index `offset`, every other
/// site equal to `background`.
struct LatticeState {
  Value background = 0;
  Value offset = 0;
  std::vector<Value> cells;

  Value at(Value n) const {
    if (n < offset || n >= end()) return background;
    return cells[static_cast<std::size_t>(n - offset)];
  }
  Value end() const { return offset + static_cast<Value>(cells.size()); }
  bool empty() const { return cells.empty(); }

  bool operator==(const LatticeState&) const = default;
};

/// Trim background cells from both ends. An empty window is returned as is; a
/// nonempty all-background one becomes an empty window at offset 0.
LatticeState canonicalize(LatticeState state);

/// Pointwise equality as bi-infinite sequences, ignoring the window layout.
bool same_sequence(const LatticeState& a, const LatticeState& b);

/// The cells of `state` on [lo, hi), as a state with exactly that window.
LatticeState materialize(const LatticeState& state, Value lo, Value hi);

/// Sum of (U_n - background) over the window.
Value excess_mass(const LatticeState& state);

struct SpacetimePattern {
  Value t0 = 0;
  std::vector<LatticeState> rows;

  Value background() const { return rows.empty() ? 0 : rows.front().background; }
  const LatticeState& at_time(Value t) const;
};

/// Gauged box configuration: each box holds 0..capacity balls; boxes outside
/// the window hold `background` balls.
struct BoxedState {
  Value capacity = 1;
  Value background = 0;
  Value offset = 0;
  std::vector<Value> balls;

  Value at(Value n) const {
    if (n < offset || n >= offset + static_cast<Value>(balls.size())) return background;
    return balls[static_cast<std::size_t>(n - offset)];
  }
  LatticeState as_state() const { return {background, offset, balls}; }

  bool operator==(const BoxedState&) const = default;
};

// Text formats. A state file is
//   # background: <int>
//   # offset: <int>
//   <space-separated integers>
// and a pattern file adds "# t0: <int>" with one data line per time step.

LatticeState read_state(std::string_view text);
std::string write_state(const LatticeState& state);

SpacetimePattern read_pattern(std::string_view text);
/// Rows are written over the union of their windows so every line has the same width.
std::string write_pattern(const SpacetimePattern& pattern);

/// True when the text carries a "# t0:" header.
bool looks_like_pattern(std::string_view text);

struct RenderRange {
  Value lo;
  Value hi;  // exclusive
};

/// One text line per row. Cells equal to `dot_value` print '.', values 0..9
/// print their digit; anything else prints 'X' and is listed in legend
/// lines ("# X t=<t> n=<n> value=<v>") after the rows.
std::string render_ascii(const SpacetimePattern& pattern, Value dot_value,
                         std::optional<RenderRange> range = std::nullopt);

}  // namespace udkdv
