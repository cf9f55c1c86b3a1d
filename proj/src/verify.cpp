#include "udkdv/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "udkdv/conserved.hpp"
#include "udkdv/error.hpp"

namespace udkdv {

namespace {

using Status = SuiteResult::Status;

// Collects checks; keeps the first failure message.
class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& what) {
    ++result_.checks;
    if (!ok && result_.status != Status::failed) {
      result_.status = Status::failed;
      result_.detail = what();
    }
  }
  void fail(const std::string& what) {
    check(false, [&] { return what; });
  }
  bool failed() const { return result_.status == Status::failed; }
  SuiteResult skip(const std::string& why) {
    result_.status = Status::skipped;
    result_.detail = why;
    return result_;
  }
  SuiteResult done() const { return result_; }

 private:
  SuiteResult result_;
};

std::string show(const LatticeState& s) {
  std::ostringstream out;
  out << "bg=" << s.background << " offset=" << s.offset << " [";
  for (std::size_t i = 0; i < s.cells.size(); ++i) out << (i ? " " : "") << s.cells[i];
  out << "]";
  return out.str();
}

std::string show(const std::vector<Value>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

std::string show(const BackgroundSpec& spec) {
  return "shift=" + std::to_string(spec.shift) + " b=" + show(spec.b) + " delta=" + show(spec.delta);
}

std::string show(const SolutionSpec& spec) {
  std::vector<Value> P, C;
  for (const auto& s : spec.solitons) {
    P.push_back(s.amplitude);
    C.push_back(s.phase);
  }
  return show(spec.background) + " P=" + show(P) + " C=" + show(C);
}

Value uniform(std::mt19937_64& rng, Value lo, Value hi) { return std::uniform_int_distribution<Value>(lo, hi)(rng); }

LatticeState random_binary(std::mt19937_64& rng) {
  LatticeState s{0, 0, {}};
  const Value len = uniform(rng, 0, 24);
  for (Value i = 0; i < len; ++i) s.cells.push_back(uniform(rng, 0, 1));
  return canonicalize(std::move(s));
}

LatticeState minus_background(const LatticeState& s) {
  LatticeState out{0, s.offset, s.cells};
  for (Value& v : out.cells) v -= s.background;
  return out;
}

const CarrierParams kKdv{1, Capacity::unbounded()};
const CarrierParams kBackground{3, Capacity::unbounded()};

// Every spec with s <= max_s and b_i <= max_b, shift 0.
void for_each_spec(Value max_s, Value max_b, const std::function<void(const BackgroundSpec&)>& f) {
  for (Value s = 0; s <= max_s; ++s) {
    BackgroundSpec spec;
    spec.b.assign(static_cast<std::size_t>(s), 0);
    spec.delta.assign(static_cast<std::size_t>(s), 0);
    for (;;) {
      f(spec);
      std::size_t i = 0;
      for (; i < spec.b.size(); ++i) {
        if (spec.delta[i] == 0) {
          spec.delta[i] = 1;
          break;
        }
        spec.delta[i] = 0;
        if (spec.b[i] < max_b) {
          ++spec.b[i];
          break;
        }
        spec.b[i] = 0;
      }
      if (i == spec.b.size()) break;
    }
  }
}

std::vector<LatticeState> states_or_random(const VerifyOptions& o, std::size_t count,
                                           const std::function<LatticeState(std::mt19937_64&)>& gen) {
  if (o.corpus) return *o.corpus;
  std::mt19937_64 rng(o.seed);
  std::vector<LatticeState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen(rng));
  return out;
}

// --------------------------------------------------------------------------

SuiteResult oracle_equivalence(const VerifyOptions& o) {
  Tally tally("oracle-equivalence");
  auto states = states_or_random(o, 500, random_binary);
  std::erase_if(states, [](const LatticeState& s) {
    return s.background != 0 || std::any_of(s.cells.begin(), s.cells.end(), [](Value v) { return v != 0 && v != 1; });
  });
  if (states.empty()) return tally.skip("no binary background-0 states in the corpus");
  for (const auto& s : states) {
    const auto a = o.hooks.ballmove(s);
    const auto b = o.hooks.udkdv(s);
    const auto c = o.hooks.carrier(s);
    tally.check(same_sequence(a, b) && same_sequence(b, c), [&] {
      return "rules disagree on " + show(s) + ": ballmove " + show(a) + ", udkdv " + show(b) + ", carrier " + show(c);
    });
  }
  return tally.done();
}

SuiteResult conserved_invariance(const VerifyOptions& o) {
  Tally tally("conserved-invariance");
  const auto states = states_or_random(o, 200, random_state);
  if (states.empty()) return tally.skip("empty corpus");
  constexpr Value steps = 30;
  for (const auto& s : states) {
    try {
      const auto orbit = conserved_orbit(s, steps);
      const auto& q0 = orbit.front().normalized;
      LatticeState u = minus_background(s);
      for (Value t = 0; t <= steps; ++t) {
        const auto& p = orbit[static_cast<std::size_t>(t)];
        tally.check(p.normalized == q0, [&] {
          return "q changed at t=" + std::to_string(t) + " for " + show(s) + ": " + show(q0) + " -> " +
                 show(p.normalized);
        });
        const BoxedState boxed = gauge_shift(u, p.gauge);
        const Window wide{p.window.left - 2, p.window.right + 2};
        const auto q_wide = normalize_conserved(arcline_passes(boxed, wide), p.gauge, wide.span());
        tally.check(q_wide == p.normalized, [&] {
          return "q changed under widening at t=" + std::to_string(t) + " for " + show(s) + ": " +
                 show(p.normalized) + " -> " + show(q_wide);
        });
        u = o.hooks.udkdv(u);
      }
    } catch (const std::exception& e) {
      tally.fail("conserved profile failed for " + show(s) + ": " + e.what());
    }
  }
  return tally.done();
}

SuiteResult energy_identity(const VerifyOptions& o) {
  Tally tally("energy-identity");
  const auto states = states_or_random(o, 100, random_state);
  if (states.empty()) return tally.skip("empty corpus");
  for (const auto& s : states) {
    try {
      const auto p = conserved_profile(s);
      const BoxedState boxed = gauge_shift(minus_background(s), p.gauge);
      Value partial = 0;
      for (Value k = 1; k <= 6; ++k) {
        if (static_cast<std::size_t>(k) <= p.raw.size()) partial += p.raw[static_cast<std::size_t>(k - 1)];
        const Value moved = balls_moved(boxed, p.window, k);
        tally.check(partial == moved, [&] {
          return "k=" + std::to_string(k) + " for " + show(s) + ": sum of passes " + std::to_string(partial) +
                 ", carrier moved " + std::to_string(moved);
        });
      }
    } catch (const std::exception& e) {
      tally.fail("energy identity failed for " + show(s) + ": " + e.what());
    }
  }
  return tally.done();
}

SuiteResult closed_form(const VerifyOptions&) {
  Tally tally("closed-form");
  for_each_spec(4, 3, [&](const BackgroundSpec& spec) {
    if (tally.failed()) return;
    const auto c = derive_background_constants(spec);
    Value prev2 = 0, prev1 = 0;
    for (Value x = -40; x <= 40; ++x) {
      const Value closed = rho_background_closed(c, x);
      const Value oracle = rho_background_truncated(c, x);
      tally.check(closed == oracle, [&] {
        return show(spec) + " x=" + std::to_string(x) + ": closed " + std::to_string(closed) + ", oracle " +
               std::to_string(oracle);
      });
      if (x >= -38)
        tally.check(closed - 2 * prev1 + prev2 >= 0,
                    [&] { return show(spec) + ": not convex at x=" + std::to_string(x - 1); });
      prev2 = prev1;
      prev1 = closed;
    }
  });
  return tally.done();
}

SuiteResult prop2(const VerifyOptions&) {
  Tally tally("prop2");
  for_each_spec(4, 3, [&](const BackgroundSpec& spec) {
    if (tally.failed()) return;
    const auto c = derive_background_constants(spec);
    for (Value k = -60; k <= 20; ++k) {
      const Half u = background_cell_closed(c, Half::from_int(k));
      const Value f = background_profile(spec, k);
      tally.check(u == Half::from_int(f), [&] {
        return show(spec) + " k=" + std::to_string(k) + ": tent sum " + to_string(u) + ", profile " +
               std::to_string(f);
      });
    }
  });
  return tally.done();
}

void check_solution(Tally& tally, const SolutionSpec& spec) {
  const TauEvaluator tau = spec.evaluator();
  constexpr Value lo = -30, hi = 30;
  for (Value t = lo; t <= hi; ++t)
    for (Value n = lo; n <= hi; ++n) {
      const Value r = bilinear_residual(tau, n, t, 3);
      tally.check(r == 0, [&] {
        return show(spec) + ": bilinear residual " + std::to_string(r) + " at n=" + std::to_string(n) +
               " t=" + std::to_string(t);
      });
    }
  LatticeState row = tau_row(tau, lo);
  for (Value t = lo; t < hi; ++t) {
    const auto sweep = carrier_sweep(row, kBackground);
    LatticeState next = tau_row(tau, t + 1);
    tally.check(same_sequence(sweep.next, next), [&] {
      return show(spec) + ": carrier step from t=" + std::to_string(t) + " gives " + show(sweep.next) +
             ", tau row is " + show(next);
    });
    for (Value n = lo; n <= hi; ++n) {
      const Value v = v_from_tau(tau, n, t);
      tally.check(sweep.trace.at(n) == v, [&] {
        return show(spec) + ": carrier load " + std::to_string(sweep.trace.at(n)) + " vs tau " +
               std::to_string(v) + " at n=" + std::to_string(n) + " t=" + std::to_string(t);
      });
    }
    row = std::move(next);
  }
}

SuiteResult theorem1(const VerifyOptions& o) {
  Tally tally("theorem1");
  for (const auto& spec : theorem_parameter_sets(o.seed)) {
    try {
      check_solution(tally, spec);
    } catch (const std::exception& e) {
      tally.fail(show(spec) + ": " + e.what());
    }
  }
  return tally.done();
}

SuiteResult phase_shift(const VerifyOptions& o) {
  Tally tally("phase-shift");
  for (const auto& spec : theorem_parameter_sets(o.seed)) {
    const TauEvaluator tau = spec.evaluator();
    const Value m = static_cast<Value>(spec.solitons.size());
    std::optional<Value> shift;
    std::string last_error;
    for (Value T = 30; T <= 240 && !shift; T *= 2) {
      try {
        shift = measure_background_shift(tau_pattern(tau, -T, T), spec.background, m);
      } catch (const PreconditionError& e) {
        last_error = e.what();
      }
    }
    if (!shift) {
      tally.fail(show(spec) + ": " + last_error);
      continue;
    }
    tally.check(*shift == -2 * m, [&] {
      return show(spec) + ": background shift " + std::to_string(*shift) + ", expected " + std::to_string(-2 * m);
    });
  }
  return tally.done();
}

SuiteResult soliton_content(const VerifyOptions& o) {
  Tally tally("soliton-content");
  for (const auto& spec : theorem_parameter_sets(o.seed)) {
    try {
      const TauEvaluator tau = spec.evaluator();
      const auto& c = *tau.background_constants();
      std::vector<Value> expect;
      for (const auto& s : spec.solitons) expect.push_back(s.amplitude - 2);
      std::sort(expect.rbegin(), expect.rend());
      std::optional<std::vector<Value>> first_q;
      for (Value t : {-10, 10}) {
        const auto p = conserved_profile(tau_row(tau, t));
        tally.check(p.gauge == 1, [&] { return show(spec) + ": gauge " + std::to_string(p.gauge) + ", expected 1"; });
        if (p.gauge != 1) continue;
        const auto rows = young_rows(p);
        tally.check(rows == expect, [&] {
          return show(spec) + " t=" + std::to_string(t) + ": Young rows " + show(rows) + ", expected " + show(expect);
        });
        const auto counts = background_counts(p);
        tally.check(counts == std::pair{c.s + 1, c.l_prime}, [&] {
          return show(spec) + " t=" + std::to_string(t) + ": counts (" + std::to_string(counts.first) + "," +
                 std::to_string(counts.second) + "), expected (" + std::to_string(c.s + 1) + "," +
                 std::to_string(c.l_prime) + ")";
        });
        if (!first_q) first_q = p.normalized;
        tally.check(p.normalized == *first_q, [&] {
          return show(spec) + ": q differs between t=-10 and t=10: " + show(*first_q) + " vs " + show(p.normalized);
        });
      }
    } catch (const std::exception& e) {
      tally.fail(show(spec) + ": " + e.what());
    }
  }
  return tally.done();
}

LatticeState shifted(LatticeState s, Value by) {
  if (!s.empty()) s.offset += by;
  return s;
}

SuiteResult vacuum(const VerifyOptions& o) {
  Tally tally("vacuum");
  for (Value bg : {0, 1}) {
    const LatticeState empty{bg, 0, {}};
    const auto p = conserved_profile(empty);
    tally.check(std::all_of(p.normalized.begin(), p.normalized.end(), [](Value q) { return q == 0; }),
                [&] { return "uniform background " + std::to_string(bg) + " gives q=" + show(p.normalized); });
  }

  std::vector<BackgroundSpec> backgrounds{{0, {}, {}}, {0, {1, 2}, {1, 0}}};
  for (const auto& spec : theorem_parameter_sets(o.seed)) backgrounds.push_back(spec.background);
  for (const auto& spec : backgrounds) {
    try {
      const TauEvaluator tau = TauEvaluator::background(spec);
      for (Value t = -5; t < 5; ++t) {
        const LatticeState row = tau_row(tau, t);
        const LatticeState next = tau_row(tau, t + 1);
        tally.check(same_sequence(next, shifted(row, 1)),
                    [&] { return show(spec) + ": background row t=" + std::to_string(t + 1) + " is not a unit shift"; });
        tally.check(same_sequence(carrier_sweep(row, kBackground).next, shifted(row, 1)),
                    [&] { return show(spec) + ": carrier does not move the background by one site"; });
        for (Value n = row.offset - 2; n <= row.end() + 2; ++n) {
          const Value want = background_profile(spec, n - t);
          tally.check(row.at(n) == want, [&] {
            return show(spec) + ": row t=" + std::to_string(t) + " n=" + std::to_string(n) + " is " +
                   std::to_string(row.at(n)) + ", profile gives " + std::to_string(want);
          });
        }
      }
      const auto p = conserved_profile(tau_row(tau, 0));
      const auto rows = young_rows(p);
      tally.check(rows.empty(), [&] { return show(spec) + ": pure background has Young rows " + show(rows); });
    } catch (const std::exception& e) {
      tally.fail(show(spec) + ": " + e.what());
    }
  }
  return tally.done();
}

SuiteResult evolution(const VerifyOptions& o) {
  Tally tally("evolution");
  if (!o.pattern || o.pattern->rows.empty()) return tally.skip("no pattern given");
  const auto& pat = *o.pattern;
  const Rule rule = o.rule.value_or(Rule{Rule::Kind::carrier, {1 + 2 * pat.background(), Capacity::unbounded()}});
  for (std::size_t i = 0; i + 1 < pat.rows.size(); ++i) {
    const Value t = pat.t0 + static_cast<Value>(i);
    try {
      const auto next = apply_rule(rule, pat.rows[i]);
      tally.check(same_sequence(next, pat.rows[i + 1]), [&] {
        return rule.name() + " from t=" + std::to_string(t) + " gives " + show(next) + ", pattern has " +
               show(pat.rows[i + 1]);
      });
    } catch (const std::exception& e) {
      tally.fail(rule.name() + " at t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return tally.done();
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"oracle-equivalence", oracle_equivalence},
      {"conserved-invariance", conserved_invariance},
      {"energy-identity", energy_identity},
      {"closed-form", closed_form},
      {"prop2", prop2},
      {"theorem1", theorem1},
      {"phase-shift", phase_shift},
      {"soliton-content", soliton_content},
      {"vacuum", vacuum},
      {"evolution", evolution},
  };
  return r;
}

}  // namespace

std::string SuiteResult::line() const {
  switch (status) {
    case Status::passed:
      return "PASS " + name + " (" + std::to_string(checks) + " checks)";
    case Status::failed:
      return "FAIL " + name + ": " + detail;
    case Status::skipped:
      return "skipped " + name + ": " + detail;
  }
  return name;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(options);
  throw InputError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry()) out.push_back(fn(options));
  return out;
}

LatticeState random_state(std::mt19937_64& rng) {
  for (;;) {
    LatticeState s{0, 0, {}};
    const Value len = uniform(rng, 1, 24);
    for (Value i = 0; i < len; ++i) s.cells.push_back(uniform(rng, -2, 3));
    s = canonicalize(std::move(s));
    if (compute_gauge_offset(s, kKdv) <= 2) return s;
  }
}

std::vector<SolutionSpec> theorem_parameter_sets(std::uint64_t seed, int count) {
  std::vector<SolutionSpec> out;
  SolutionSpec base;
  base.background = {0, {2, 1}, {0, 1}};
  base.solitons = {{4, -7}, {7, -5}};
  out.push_back(base);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < count; ++i) {
    SolutionSpec spec;
    const Value s = uniform(rng, 0, 3);
    spec.background.shift = uniform(rng, -3, 3);
    for (Value j = 0; j < s; ++j) {
      spec.background.b.push_back(uniform(rng, 0, 3));
      spec.background.delta.push_back(uniform(rng, 0, 1));
    }
    std::vector<Value> amps{4, 5, 6, 7, 8};
    std::shuffle(amps.begin(), amps.end(), rng);
    const Value m = uniform(rng, 1, 3);
    for (Value j = 0; j < m; ++j) spec.solitons.push_back({amps[static_cast<std::size_t>(j)], uniform(rng, -10, 5)});
    out.push_back(spec);
  }
  return out;
}

SpacetimePattern tau_pattern(const TauEvaluator& tau, Value t_lo, Value t_hi) {
  if (t_lo > t_hi) throw InputError("empty time range");
  SpacetimePattern pat{t_lo, {}};
  for (Value t = t_lo; t <= t_hi; ++t) pat.rows.push_back(tau_row(tau, t));
  return pat;
}

}  // namespace udkdv
