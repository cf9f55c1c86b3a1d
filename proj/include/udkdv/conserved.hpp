#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udkdv/evolution.hpp"
#include "udkdv/state.hpp"

namespace udkdv {

/// Box range [left, right] used for counting at one time step.
struct Window {
  Value left = 0;
  Value right = 0;

  Value span() const { return right - left; }
  bool operator==(const Window&) const = default;
};

/// t = 0 window ends and the current time; they fix the parity of later windows:
/// left - left0 = t and right - right0 = t (mod 2).
struct Anchors {
  Value left0 = 0;
  Value right0 = 0;
  Value t = 0;
};

struct ConservedProfile {
  Value gauge = 0;               // M
  Value span = 0;                // N_t - M_t
  Window window{};
  std::vector<Value> raw;        // arcline counts per pass, nonincreasing
  std::vector<Value> normalized; // q_j
};

/// Smallest window holding every non-background box at t and t+1, with one
/// background box of margin, adjusted for parity and for the rule that the
/// first pass may not land in the last box.
Window select_window(const BoxedState& now, const BoxedState& next,
                     std::optional<Anchors> anchors = std::nullopt);

/// Arcline passes over boxes [left, right]. Each pass chains leftmost ball ->
/// vacancy in a strictly later box -> ball in a strictly later box -> ...;
/// balls of the last box are never sources. Returns one count per pass.
std::vector<Value> arcline_passes(const BoxedState& boxed, const Window& w);

/// Whether the first pass connects a vacancy of box `w.right`.
bool first_pass_reaches_last_box(const BoxedState& boxed, const Window& w);

/// q_j = raw_j - span/2 for j <= 2M, raw_j otherwise; raw is zero-padded to 2M entries.
std::vector<Value> normalize_conserved(std::span<const Value> raw, Value gauge, Value span);

/// Balls picked up in one sweep of a capacity-`k` carrier over the finite
/// system made of boxes [left, right - 1] with every other box empty.
Value balls_moved(const BoxedState& boxed, const Window& w, Value k);

struct ProfileOptions {
  std::optional<Value> gauge;      // defaults to the state's own M
  std::optional<Anchors> anchors;  // defaults to fixing t = 0 at this state
};

/// Full pipeline. A state with background B is read as the bg-0 KdV state U - B
/// (L = 1, unbounded carrier): gauge, step once, pick the window, count, normalize.
/// The result is re-checked on a window widened by two boxes on each side.
ConservedProfile conserved_profile(const LatticeState& state, const ProfileOptions& options = {});

/// Profiles of `state` and its next `steps` iterates, all sharing the gauge and
/// t = 0 anchors of the first one.
std::vector<ConservedProfile> conserved_orbit(const LatticeState& state, Value steps);

/// Conjugate of the tail (q_{2M+1}, q_{2M+2}, ...): row lengths of the Young diagram.
std::vector<Value> young_rows(const ConservedProfile& profile);

/// Conjugate partition of a nonincreasing sequence of positive parts.
std::vector<Value> conjugate_partition(std::span<const Value> parts);

/// (-q_1 - q_2, q_1 - q_2): negative soliton count and unit-amplitude count. M = 1 only.
std::pair<Value, Value> background_counts(const ConservedProfile& profile);

}  // namespace udkdv
