#include "udkdv/state.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "udkdv/error.hpp"

namespace udkdv {

LatticeState canonicalize(LatticeState state) {
  auto& c = state.cells;
  if (c.empty()) return state;
  auto first = std::find_if(c.begin(), c.end(), [&](Value v) { return v != state.background; });
  if (first == c.end()) return {state.background, 0, {}};
  auto last = std::find_if(c.rbegin(), c.rend(), [&](Value v) { return v != state.background; }).base();
  state.offset += first - c.begin();
  state.cells = std::vector<Value>(first, last);
  return state;
}

bool same_sequence(const LatticeState& a, const LatticeState& b) {
  if (a.background != b.background) return false;
  const Value lo = std::min(a.offset, b.offset);
  const Value hi = std::max(a.end(), b.end());
  for (Value n = lo; n < hi; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

LatticeState materialize(const LatticeState& state, Value lo, Value hi) {
  LatticeState out{state.background, lo, {}};
  out.cells.reserve(static_cast<std::size_t>(std::max<Value>(0, hi - lo)));
  for (Value n = lo; n < hi; ++n) out.cells.push_back(state.at(n));
  return out;
}

Value excess_mass(const LatticeState& state) {
  Value sum = 0;
  for (Value v : state.cells) sum += v - state.background;
  return sum;
}

const LatticeState& SpacetimePattern::at_time(Value t) const {
  if (t < t0 || t >= t0 + static_cast<Value>(rows.size()))
    throw InputError("time " + std::to_string(t) + " outside pattern");
  return rows[static_cast<std::size_t>(t - t0)];
}

namespace {

Value parse_int(std::string_view token) {
  Value v = 0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || begin == end)
    throw InputError("not an integer: '" + std::string(token) + "'");
  return v;
}

std::vector<Value> parse_row(std::string_view line) {
  std::vector<Value> row;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) row.push_back(parse_int(line.substr(i, j - i)));
    i = j;
  }
  return row;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Parsed {
  std::map<std::string, Value, std::less<>> headers;
  std::vector<std::vector<Value>> rows;
};

Parsed parse(std::string_view text) {
  Parsed out;
  bool in_header = true;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!in_header) continue;
      std::string_view body = trim(line.substr(1));
      auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      std::string_view key = trim(body.substr(0, colon));
      if (key != "background" && key != "offset" && key != "t0") continue;
      std::string k(key);
      if (out.headers.count(k)) throw InputError("duplicate header '" + k + "'");
      out.headers[k] = parse_int(trim(body.substr(colon + 1)));
      continue;
    }
    in_header = false;
    out.rows.push_back(parse_row(line));
  }
  for (const char* key : {"background", "offset"})
    if (!out.headers.count(key)) throw InputError(std::string("missing header '# ") + key + ":'");
  return out;
}

void write_header(std::ostringstream& os, Value background, Value offset) {
  os << "# background: " << background << "\n# offset: " << offset << "\n";
}

void write_cells(std::ostringstream& os, const std::vector<Value>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? " " : "") << cells[i];
  os << "\n";
}

}  // namespace

LatticeState read_state(std::string_view text) {
  Parsed p = parse(text);
  if (p.rows.size() > 1) throw InputError("state file has more than one data line");
  LatticeState s{p.headers["background"], p.headers["offset"], {}};
  if (!p.rows.empty()) s.cells = std::move(p.rows.front());
  return s;
}

std::string write_state(const LatticeState& state) {
  std::ostringstream os;
  write_header(os, state.background, state.offset);
  if (!state.cells.empty()) write_cells(os, state.cells);
  return os.str();
}

bool looks_like_pattern(std::string_view text) {
  try {
    return parse(text).headers.count("t0") > 0;
  } catch (const InputError&) {
    return false;
  }
}

SpacetimePattern read_pattern(std::string_view text) {
  Parsed p = parse(text);
  auto t0 = p.headers.find("t0");
  if (t0 == p.headers.end()) throw InputError("missing header '# t0:'");
  SpacetimePattern pat{t0->second, {}};
  for (auto& row : p.rows)
    pat.rows.push_back(LatticeState{p.headers["background"], p.headers["offset"], std::move(row)});
  return pat;
}

std::string write_pattern(const SpacetimePattern& pattern) {
  const Value bg = pattern.background();
  Value lo = 0, hi = 0;
  bool any = false;
  for (const auto& r : pattern.rows) {
    if (r.background != bg) throw InputError("pattern rows have different backgrounds");
    if (r.empty()) continue;
    lo = any ? std::min(lo, r.offset) : r.offset;
    hi = any ? std::max(hi, r.end()) : r.end();
    any = true;
  }
  // Blank lines are skipped on read, so every row needs at least one cell.
  if (!any) hi = lo + 1;
  std::ostringstream os;
  write_header(os, bg, lo);
  os << "# t0: " << pattern.t0 << "\n";
  for (const auto& r : pattern.rows) {
    write_cells(os, materialize(r, lo, hi).cells);
  }
  return os.str();
}

std::string render_ascii(const SpacetimePattern& pattern, Value dot_value,
                         std::optional<RenderRange> range) {
  Value lo = 0, hi = 0;
  if (range) {
    lo = range->lo;
    hi = range->hi;
  } else {
    bool any = false;
    for (const auto& r : pattern.rows) {
      if (r.empty()) continue;
      lo = any ? std::min(lo, r.offset) : r.offset;
      hi = any ? std::max(hi, r.end()) : r.end();
      any = true;
    }
  }
  std::ostringstream os;
  std::ostringstream legend;
  for (std::size_t i = 0; i < pattern.rows.size(); ++i) {
    const auto& r = pattern.rows[i];
    const Value t = pattern.t0 + static_cast<Value>(i);
    std::string line;
    for (Value n = lo; n < hi; ++n) {
      const Value v = r.at(n);
      if (v == dot_value) {
        line += '.';
      } else if (v >= 0 && v <= 9) {
        line += static_cast<char>('0' + v);
      } else {
        line += 'X';
        legend << "# X t=" << t << " n=" << n << " value=" << v << "\n";
      }
    }
    os << line << "\n";
  }
  return os.str() + legend.str();
}

}  // namespace udkdv
