// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "udkdv/conserved.hpp"
#include "udkdv/verify.hpp"

using namespace udkdv;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome normalization() {
  const std::vector<Value> raw{7, 5, 2, 1, 1, 1};
  const auto q = normalize_conserved(raw, 1, 14);
  const std::vector<Value> want{0, -2, 2, 1, 1, 1};
  if (q == want) return {true, "q = (0,-2,2,1,1,1)"};
  std::string got;
  for (Value v : q) got += std::to_string(v) + " ";
  return {false, "got " + got};
}

Outcome suite(const std::string& name) {
  VerifyOptions o;
  o.seed = 0;
  const auto r = run_suite(name, o);
  if (r.status == SuiteResult::Status::passed) return {true, std::to_string(r.checks) + " checks"};
  return {false, r.line()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {"raw (7,5,2,1,1,1), M=1, span 14 normalizes to (0,-2,2,1,1,1)", normalization},
      {"ball-move, KdV step and carrier(1,inf) agree on 500 binary states", [] { return suite("oracle-equivalence"); }},
      {"q invariant over 30 steps and under widening, 200 states", [] { return suite("conserved-invariance"); }},
      {"pass prefix sums equal carrier(k) displacement, k=1..6, 100 states", [] { return suite("energy-identity"); }},
      {"closed-form rho_F equals the truncated oracle, s<=4, b<=3, |x|<=40", [] { return suite("closed-form"); }},
      {"tent-sum cells equal the background profile on [-60,20]", [] { return suite("prop2"); }},
      {"combined solutions solve the carrier system and the bilinear equation", [] { return suite("theorem1"); }},
      {"background phase shift is -2m", [] { return suite("phase-shift"); }},
      {"Young rows P-2 and background counts (s+1, l')", [] { return suite("soliton-content"); }},
      {"vacuum has q = 0 and backgrounds move one site per step", [] { return suite("vacuum"); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.ok) ++failed;
    std::printf("%s criterion %zu: %s [%s, %.2fs]\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].title,
                out.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
