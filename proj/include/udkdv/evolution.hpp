#pragma once

#include <string>
#include <string_view>

#include "udkdv/state.hpp"

namespace udkdv {

/// Carrier capacity: a positive bound or unbounded. With an unbounded carrier
/// the pick-up term min[U, C - V] is exactly U.
class Capacity {
 public:
  static Capacity unbounded() { return Capacity{}; }
  static Capacity bounded(Value c);

  bool is_bounded() const { return bounded_; }
  Value value() const;  // throws if unbounded

  Capacity shifted(Value by) const { return bounded_ ? bounded(value_ + by) : *this; }

  bool operator==(const Capacity&) const = default;

 private:
  bool bounded_ = false;
  Value value_ = 0;
};

struct CarrierParams {
  Value box_capacity = 1;
  Capacity carrier = Capacity::unbounded();
};

/// Carrier load V_n entering site n, for n in [offset, offset + values.size());
/// equal to `boundary` elsewhere.
struct CarrierTrace {
  Value boundary = 0;
  Value offset = 0;
  std::vector<Value> values;

  Value at(Value n) const {
    if (n < offset || n >= offset + static_cast<Value>(values.size())) return boundary;
    return values[static_cast<std::size_t>(n - offset)];
  }
};

struct SweepResult {
  LatticeState next;  // canonical
  CarrierTrace trace;
  Value moved = 0;    // balls picked up by the carrier during the sweep
};

/// One step of U^{t+1}_n = min[1 - U^t_n, sum_{k<n}(U^t_k - U^{t+1}_k)].
/// Requires background 0.
LatticeState step_udkdv(const LatticeState& state);

/// One left-to-right sweep of
///   U' = U + min[L - U, V] - min[U, C - V],   V_{n+1} = U + V - U'
/// starting from V = background. Requires the all-background state to be
/// stationary (B <= L - B, and B <= C - B when C is bounded).
SweepResult carrier_sweep(const LatticeState& state, const CarrierParams& params);

/// The arcline rule: repeatedly pair each ball with the adjacent (after
/// removing already paired sites) vacancy to its right, then move every ball
/// along its arc. Binary states on background 0 only.
LatticeState step_ballmove(const LatticeState& state);

/// M = max(0, -min_n[U_n, V_n, L - U_n, C - V_n]) with V from one carrier sweep.
Value compute_gauge_offset(const LatticeState& state, const CarrierParams& params);

/// Box counts U + M with capacity L + 2M. Throws if some count leaves [0, L + 2M].
BoxedState gauge_shift(const LatticeState& state, Value gauge, Value box_capacity = 1);

/// The gauged counterpart of `params`: (L + 2M, C + 2M).
CarrierParams gauged(const CarrierParams& params, Value gauge);

struct Rule {
  enum class Kind { udkdv, ballmove, carrier };
  Kind kind = Kind::udkdv;
  CarrierParams params{};

  /// "udkdv", "ballmove", or "carrier:L:C" with C an integer or "inf".
  static Rule parse(std::string_view text);
  std::string name() const;
};

LatticeState apply_rule(const Rule& rule, const LatticeState& state);

/// Rows t0 .. t0 + steps, the first equal to `state`.
SpacetimePattern evolve_pattern(const LatticeState& state, const Rule& rule, Value steps,
                                Value t0 = 0);

}  // namespace udkdv
