#include "udkdv/conserved.hpp"

#include <algorithm>
#include <stdexcept>

#include "udkdv/error.hpp"

namespace udkdv {

namespace {

Value odd(Value x) { return ((x % 2) + 2) % 2; }

struct PassOutcome {
  Value arcs = 0;
  bool reached_last = false;
};

// One chain over boxes 0..last; balls of box `last` are not sources.
PassOutcome run_pass(std::vector<Value>& balls, std::vector<Value>& vacancies, std::size_t last) {
  PassOutcome out;
  std::size_t from = 0;
  for (;;) {
    std::size_t b = from;
    while (b < last && balls[b] == 0) ++b;
    if (b >= last) break;
    std::size_t v = b + 1;
    while (v <= last && vacancies[v] == 0) ++v;
    if (v > last) break;
    --balls[b];
    --vacancies[v];
    ++out.arcs;
    if (v == last) out.reached_last = true;
    from = v + 1;
  }
  return out;
}

struct Boxes {
  std::vector<Value> balls;
  std::vector<Value> vacancies;
  std::size_t last = 0;
};

Boxes window_boxes(const BoxedState& boxed, const Window& w) {
  if (w.right <= w.left) throw InputError("window must contain at least two boxes");
  Boxes out;
  for (Value n = w.left; n <= w.right; ++n) {
    const Value b = boxed.at(n);
    out.balls.push_back(b);
    out.vacancies.push_back(boxed.capacity - b);
  }
  out.last = out.balls.size() - 1;
  return out;
}

bool balls_left(const Boxes& bx) {
  return std::any_of(bx.balls.begin(), bx.balls.begin() + static_cast<std::ptrdiff_t>(bx.last),
                     [](Value b) { return b > 0; });
}

std::optional<std::pair<Value, Value>> deviation_extent(const BoxedState& s) {
  std::optional<std::pair<Value, Value>> ext;
  for (std::size_t i = 0; i < s.balls.size(); ++i) {
    if (s.balls[i] == s.background) continue;
    const Value n = s.offset + static_cast<Value>(i);
    if (!ext)
      ext = {n, n};
    else
      ext->second = n;
  }
  return ext;
}

}  // namespace

bool first_pass_reaches_last_box(const BoxedState& boxed, const Window& w) {
  Boxes bx = window_boxes(boxed, w);
  return run_pass(bx.balls, bx.vacancies, bx.last).reached_last;
}

Window select_window(const BoxedState& now, const BoxedState& next, std::optional<Anchors> anchors) {
  if (now.background != next.background || now.capacity != next.capacity)
    throw InputError("boxed states at t and t+1 must share capacity and background");
  auto a = deviation_extent(now);
  auto b = deviation_extent(next);
  Value lo = now.offset, hi = now.offset;
  if (a && b) {
    lo = std::min(a->first, b->first);
    hi = std::max(a->second, b->second);
  } else if (a || b) {
    lo = (a ? a : b)->first;
    hi = (a ? a : b)->second;
  }
  Window w{lo - 1, hi + 1};
  if (anchors) {
    if (odd(w.left - anchors->left0 - anchors->t)) --w.left;
    if (odd(w.right - anchors->right0 - anchors->t)) ++w.right;
    if (odd(w.span())) throw InputError("anchors must span an even number of boxes");
  } else if (odd(w.span())) {
    ++w.right;
  }

  // In the background region the first pass lands on every other box, so
  // widening the right end by 2 cannot move it off the last box when M > 0.
  // Free anchors shift both ends instead, which keeps the span even.
  Value total = 0;
  for (Value v : now.balls) total += std::abs(v - now.background);
  const Value limit = total + 4;
  for (Value tries = 0; tries <= limit; ++tries) {
    if (!first_pass_reaches_last_box(now, w)) return w;
    if (anchors) {
      w.right += 2;
    } else {
      --w.left;
      ++w.right;
    }
  }
  throw std::logic_error("no window satisfies the last-box condition");
}

std::vector<Value> arcline_passes(const BoxedState& boxed, const Window& w) {
  Boxes bx = window_boxes(boxed, w);
  std::vector<Value> counts;
  while (balls_left(bx)) {
    const auto pass = run_pass(bx.balls, bx.vacancies, bx.last);
    if (pass.arcs == 0) throw std::logic_error("arcline pass made no progress");
    counts.push_back(pass.arcs);
  }
  return counts;
}

std::vector<Value> normalize_conserved(std::span<const Value> raw, Value gauge, Value span) {
  if (odd(span)) throw InputError("window span must be even");
  if (gauge < 0) throw InputError("gauge level must be nonnegative");
  std::vector<Value> q(raw.begin(), raw.end());
  if (q.size() < static_cast<std::size_t>(2 * gauge)) q.resize(static_cast<std::size_t>(2 * gauge), 0);
  for (std::size_t j = 0; j < static_cast<std::size_t>(2 * gauge); ++j) q[j] -= span / 2;
  return q;
}

Value balls_moved(const BoxedState& boxed, const Window& w, Value k) {
  LatticeState finite{0, w.left, {}};
  for (Value n = w.left; n < w.right; ++n) finite.cells.push_back(boxed.at(n));
  return carrier_sweep(finite, {boxed.capacity, Capacity::bounded(k)}).moved;
}

namespace {

const CarrierParams kKdv{1, Capacity::unbounded()};

LatticeState as_eq1(const LatticeState& state) {
  LatticeState out{0, state.offset, state.cells};
  for (Value& v : out.cells) v -= state.background;
  return out;
}

ConservedProfile count_at(const BoxedState& now, const Window& w, Value gauge) {
  ConservedProfile p;
  p.gauge = gauge;
  p.window = w;
  p.span = w.span();
  p.raw = arcline_passes(now, w);
  p.normalized = normalize_conserved(p.raw, gauge, p.span);
  return p;
}

}  // namespace

ConservedProfile conserved_profile(const LatticeState& state, const ProfileOptions& options) {
  const LatticeState u = as_eq1(state);
  const Value gauge = options.gauge.value_or(compute_gauge_offset(u, kKdv));
  const LatticeState next = carrier_sweep(u, kKdv).next;
  const BoxedState now_boxed = gauge_shift(u, gauge);
  const BoxedState next_boxed = gauge_shift(next, gauge);

  const Window w = select_window(now_boxed, next_boxed, options.anchors);
  ConservedProfile p = count_at(now_boxed, w, gauge);

  const Window wide{w.left - 2, w.right + 2};
  if (first_pass_reaches_last_box(now_boxed, wide))
    throw std::logic_error("widened window violates the last-box condition");
  if (count_at(now_boxed, wide, gauge).normalized != p.normalized)
    throw std::logic_error("conserved quantities changed under window widening");
  return p;
}

std::vector<ConservedProfile> conserved_orbit(const LatticeState& state, Value steps) {
  std::vector<ConservedProfile> out;
  out.push_back(conserved_profile(state));
  const Value gauge = out.front().gauge;
  const Anchors base{out.front().window.left, out.front().window.right, 0};
  LatticeState u = as_eq1(state);
  for (Value t = 1; t <= steps; ++t) {
    u = step_udkdv(u);
    Anchors a = base;
    a.t = t;
    out.push_back(conserved_profile(u, {gauge, a}));
  }
  return out;
}

std::vector<Value> conjugate_partition(std::span<const Value> parts) {
  std::vector<Value> out;
  if (parts.empty()) return out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0 || (i > 0 && parts[i] > parts[i - 1]))
      throw PreconditionError("partition parts must be nonnegative and nonincreasing");
  }
  for (Value row = 1; row <= parts.front(); ++row) {
    Value len = 0;
    for (Value p : parts)
      if (p >= row) ++len;
    out.push_back(len);
  }
  return out;
}

std::vector<Value> young_rows(const ConservedProfile& profile) {
  const auto tail_begin = std::min(profile.normalized.size(), static_cast<std::size_t>(2 * profile.gauge));
  std::vector<Value> tail(profile.normalized.begin() + static_cast<std::ptrdiff_t>(tail_begin),
                          profile.normalized.end());
  while (!tail.empty() && tail.back() == 0) tail.pop_back();
  return conjugate_partition(tail);
}

std::pair<Value, Value> background_counts(const ConservedProfile& profile) {
  if (profile.gauge != 1)
    throw PreconditionError("background counts need gauge level 1, got " + std::to_string(profile.gauge));
  const Value q1 = profile.normalized.size() > 0 ? profile.normalized[0] : 0;
  const Value q2 = profile.normalized.size() > 1 ? profile.normalized[1] : 0;
  return {-q1 - q2, q1 - q2};
}

}  // namespace udkdv
