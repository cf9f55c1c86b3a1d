#include "udkdv/evolution.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "udkdv/error.hpp"

namespace udkdv {

Capacity Capacity::bounded(Value c) {
  if (c < 1) throw InputError("carrier capacity must be >= 1, got " + std::to_string(c));
  Capacity cap;
  cap.bounded_ = true;
  cap.value_ = c;
  return cap;
}

Value Capacity::value() const {
  if (!bounded_) throw PreconditionError("unbounded carrier has no numeric capacity");
  return value_;
}

LatticeState step_udkdv(const LatticeState& state) {
  if (state.background != 0)
    throw PreconditionError("ultradiscrete KdV step needs background 0, got " +
                            std::to_string(state.background));
  LatticeState next{0, state.offset, {}};
  next.cells.reserve(state.cells.size() + 8);
  // partial = sum_{k<n} (U^t_k - U^{t+1}_k), built while emitting left to right
  Value partial = 0;
  for (Value u : state.cells) {
    const Value nu = std::min(1 - u, partial);
    next.cells.push_back(nu);
    partial += u - nu;
  }
  while (partial != 0) {
    const Value nu = std::min<Value>(1, partial);
    next.cells.push_back(nu);
    partial -= nu;
  }
  return canonicalize(std::move(next));
}

SweepResult carrier_sweep(const LatticeState& state, const CarrierParams& params) {
  const Value b = state.background;
  const Value cap = params.box_capacity;
  if (cap < 1) throw InputError("box capacity must be >= 1");
  if (b > cap - b)
    throw PreconditionError("background " + std::to_string(b) + " is not stationary for box capacity " +
                            std::to_string(cap));
  if (params.carrier.is_bounded() && b > params.carrier.value() - b)
    throw PreconditionError("background " + std::to_string(b) +
                            " is not stationary for carrier capacity " +
                            std::to_string(params.carrier.value()));

  SweepResult out;
  out.trace.boundary = b;
  out.trace.offset = state.offset;
  LatticeState next{b, state.offset, {}};
  next.cells.reserve(state.cells.size() + 8);

  Value v = b;
  auto site = [&](Value u) {
    out.trace.values.push_back(v);
    const Value pick = params.carrier.is_bounded() ? std::min(u, params.carrier.value() - v) : u;
    const Value nu = u + std::min(cap - u, v) - pick;
    next.cells.push_back(nu);
    out.moved += pick;
    v = u + v - nu;
  };
  for (Value u : state.cells) site(u);

  // Past the window every site holds b; the load must drain back to b.
  const Value limit = std::abs(v - b) + 8;
  for (Value extra = 0; v != b; ++extra) {
    if (extra >= limit)
      throw PreconditionError("carrier load does not return to the background value");
    site(b);
  }
  out.next = canonicalize(std::move(next));
  return out;
}

LatticeState step_ballmove(const LatticeState& state) {
  if (state.background != 0) throw PreconditionError("ball-move rule needs background 0");
  Value balls = 0;
  for (Value u : state.cells) {
    if (u != 0 && u != 1) throw PreconditionError("ball-move rule needs a binary state");
    balls += u;
  }
  std::vector<Value> seq = state.cells;
  seq.resize(seq.size() + static_cast<std::size_t>(balls) + 1, 0);

  std::vector<std::size_t> alive(seq.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::vector<Value> next = seq;

  Value unpaired = balls;
  while (unpaired > 0) {
    std::vector<std::size_t> keep;
    keep.reserve(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (i + 1 < alive.size() && seq[alive[i]] == 1 && seq[alive[i + 1]] == 0) {
        next[alive[i]] = 0;
        next[alive[i + 1]] = 1;
        --unpaired;
        ++i;
        continue;
      }
      keep.push_back(alive[i]);
    }
    alive = std::move(keep);
  }
  return canonicalize(LatticeState{0, state.offset, std::move(next)});
}

Value compute_gauge_offset(const LatticeState& state, const CarrierParams& params) {
  const auto sweep = carrier_sweep(state, params);
  const Value cap = params.box_capacity;
  const bool bounded = params.carrier.is_bounded();
  const Value c = bounded ? params.carrier.value() : 0;

  Value lowest = std::min(state.background, cap - state.background);
  if (bounded) lowest = std::min(lowest, c - state.background);
  for (Value u : state.cells) lowest = std::min({lowest, u, cap - u});
  for (Value v : sweep.trace.values) {
    lowest = std::min(lowest, v);
    if (bounded) lowest = std::min(lowest, c - v);
  }
  return std::max<Value>(0, -lowest);
}

BoxedState gauge_shift(const LatticeState& state, Value gauge, Value box_capacity) {
  if (gauge < 0) throw InputError("gauge offset must be nonnegative");
  BoxedState boxed{box_capacity + 2 * gauge, state.background + gauge, state.offset, {}};
  auto check = [&](Value count) {
    if (count < 0 || count > boxed.capacity)
      throw PreconditionError("gauge offset " + std::to_string(gauge) +
                              " too small: box count " + std::to_string(count) +
                              " outside [0, " + std::to_string(boxed.capacity) + "]");
  };
  check(boxed.background);
  boxed.balls.reserve(state.cells.size());
  for (Value u : state.cells) {
    check(u + gauge);
    boxed.balls.push_back(u + gauge);
  }
  return boxed;
}

CarrierParams gauged(const CarrierParams& params, Value gauge) {
  return {params.box_capacity + 2 * gauge, params.carrier.shifted(2 * gauge)};
}

namespace {

Value parse_value(std::string_view s, const char* what) {
  Value v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InputError(std::string("bad ") + what + " in rule: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rule Rule::parse(std::string_view text) {
  if (text == "udkdv") return {Kind::udkdv, {1, Capacity::unbounded()}};
  if (text == "ballmove") return {Kind::ballmove, {1, Capacity::unbounded()}};
  if (text.substr(0, 8) == "carrier:") {
    std::string_view rest = text.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw InputError("rule must be carrier:L:C");
    const Value l = parse_value(rest.substr(0, colon), "box capacity");
    std::string_view c = rest.substr(colon + 1);
    if (l < 1) throw InputError("box capacity must be >= 1");
    Capacity cap = (c == "inf" || c == "unbounded") ? Capacity::unbounded()
                                                     : Capacity::bounded(parse_value(c, "carrier capacity"));
    return {Kind::carrier, {l, cap}};
  }
  throw InputError("unknown rule '" + std::string(text) + "' (udkdv, ballmove, carrier:L:C)");
}

std::string Rule::name() const {
  switch (kind) {
    case Kind::udkdv:
      return "udkdv";
    case Kind::ballmove:
      return "ballmove";
    case Kind::carrier:
      return "carrier:" + std::to_string(params.box_capacity) + ":" +
             (params.carrier.is_bounded() ? std::to_string(params.carrier.value()) : "inf");
  }
  return "?";
}

LatticeState apply_rule(const Rule& rule, const LatticeState& state) {
  switch (rule.kind) {
    case Rule::Kind::udkdv:
      return step_udkdv(state);
    case Rule::Kind::ballmove:
      return step_ballmove(state);
    case Rule::Kind::carrier:
      return carrier_sweep(state, rule.params).next;
  }
  throw InputError("invalid rule");
}

SpacetimePattern evolve_pattern(const LatticeState& state, const Rule& rule, Value steps, Value t0) {
  if (steps < 0) throw InputError("steps must be >= 0");
  SpacetimePattern pat{t0, {state}};
  pat.rows.reserve(static_cast<std::size_t>(steps) + 1);
  for (Value i = 0; i < steps; ++i) pat.rows.push_back(apply_rule(rule, pat.rows.back()));
  return pat;
}

}  // namespace udkdv
