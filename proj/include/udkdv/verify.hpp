#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "udkdv/evolution.hpp"
#include "udkdv/solutions.hpp"
#include "udkdv/state.hpp"

namespace udkdv {

using StepFn = std::function<LatticeState(const LatticeState&)>;

/// Step functions the suites treat as the implementation under test. Swapping
/// one for a corrupted rule must turn the matching suite red.
struct StepHooks {
  StepFn udkdv = step_udkdv;
  StepFn ballmove = step_ballmove;
  StepFn carrier = [](const LatticeState& s) { return carrier_sweep(s, {1, Capacity::unbounded()}).next; };
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// States (or pattern rows) to use instead of random ones. An empty corpus
  /// makes the corpus-driven suites skip.
  std::optional<std::vector<LatticeState>> corpus;
  /// Pattern for the "evolution" suite.
  std::optional<SpacetimePattern> pattern;
  /// Rule for the "evolution" suite; defaults to carrier:(1 + 2B):inf for background B.
  std::optional<Rule> rule;
  StepHooks hooks;
};

struct SuiteResult {
  enum class Status { passed, failed, skipped };

  std::string name;
  Status status = Status::passed;
  std::int64_t checks = 0;
  std::string detail;  // first failure, or the reason for skipping

  bool ok() const { return status != Status::failed; }
  std::string line() const;
};

/// Suites in the order "all" runs them.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const VerifyOptions& options);
std::vector<SuiteResult> run_all(const VerifyOptions& options);

/// Random bg-0 state: window length <= 24, values in [-2, 3], gauge M <= 2.
LatticeState random_state(std::mt19937_64& rng);

/// A fixed combined solution (amplitudes 4 and 7 over b = (2, 1), delta = (0, 1))
/// followed by `count` random ones: s <= 3, b_i <= 3, shift in [-3, 3], 1..3
/// distinct amplitudes in [4, 8], phases in [-10, 5].
std::vector<SolutionSpec> theorem_parameter_sets(std::uint64_t seed, int count = 20);

/// Rows t_lo..t_hi of `tau`, each over its own safe window.
SpacetimePattern tau_pattern(const TauEvaluator& tau, Value t_lo, Value t_hi);

}  // namespace udkdv
