#include <doctest.h>

#include <set>

#include "udkdv/error.hpp"
#include "udkdv/verify.hpp"

using namespace udkdv;

namespace {

LatticeState off_by_one(const LatticeState& s) {
  LatticeState next = step_udkdv(s);
  if (!next.empty()) next.offset += 1;
  return next;
}

}  // namespace

TEST_CASE("fast suites pass and are deterministic") {
  VerifyOptions o;
  o.seed = 0;
  for (const char* name : {"oracle-equivalence", "conserved-invariance", "energy-identity", "vacuum"}) {
    const auto a = run_suite(name, o);
    const auto b = run_suite(name, o);
    CHECK_MESSAGE(a.status == SuiteResult::Status::passed, a.line());
    CHECK(a.line() == b.line());
    CHECK(a.checks > 0);
  }
}

TEST_CASE("a corrupted rule turns oracle-equivalence red") {
  VerifyOptions o;
  o.hooks.udkdv = off_by_one;
  const auto r = run_suite("oracle-equivalence", o);
  CHECK(r.status == SuiteResult::Status::failed);
  CHECK(r.line().rfind("FAIL oracle-equivalence", 0) == 0);

  VerifyOptions p;
  p.hooks.ballmove = [](const LatticeState& s) { return s; };
  CHECK(run_suite("oracle-equivalence", p).status == SuiteResult::Status::failed);
}

TEST_CASE("empty corpus skips corpus suites") {
  VerifyOptions o;
  o.corpus = std::vector<LatticeState>{};
  o.pattern = SpacetimePattern{};
  for (const char* name : {"oracle-equivalence", "conserved-invariance", "energy-identity", "evolution"}) {
    const auto r = run_suite(name, o);
    CHECK(r.status == SuiteResult::Status::skipped);
    CHECK(r.ok());
    CHECK(r.line().rfind("skipped", 0) == 0);
  }
  CHECK(run_suite("evolution", VerifyOptions{}).status == SuiteResult::Status::skipped);
}

TEST_CASE("corpus states drive the suites") {
  VerifyOptions o;
  o.corpus = std::vector<LatticeState>{{0, 0, {1, 1, 0, 1}}, {0, 2, {-1, 2, 1}}, {1, 0, {0, 2, 0}}};
  CHECK(run_suite("oracle-equivalence", o).checks == 1);
  CHECK(run_suite("conserved-invariance", o).status == SuiteResult::Status::passed);
  CHECK(run_suite("energy-identity", o).status == SuiteResult::Status::passed);
}

TEST_CASE("evolution suite checks a pattern") {
  VerifyOptions o;
  o.pattern = evolve_pattern({0, 0, {1, 1, 0, 1}}, Rule::parse("udkdv"), 6);
  CHECK(run_suite("evolution", o).status == SuiteResult::Status::passed);

  o.pattern->rows[3].cells.push_back(1);
  CHECK(run_suite("evolution", o).status == SuiteResult::Status::failed);

  o.pattern = evolve_pattern({1, 0, {0, 2}}, Rule::parse("carrier:3:inf"), 4);
  CHECK(run_suite("evolution", o).status == SuiteResult::Status::passed);
  o.rule = Rule::parse("carrier:3:1");
  CHECK(run_suite("evolution", o).status == SuiteResult::Status::failed);
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("nope", {}), InputError); }

TEST_CASE("random generators") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_state(rng);
    CHECK(s.background == 0);
    CHECK(s.cells.size() <= 24);
    for (Value v : s.cells) {
      CHECK(v >= -2);
      CHECK(v <= 3);
    }
    CHECK(compute_gauge_offset(s, {1, Capacity::unbounded()}) <= 2);
  }

  const auto sets = theorem_parameter_sets(4);
  REQUIRE(sets.size() == 21);
  CHECK(sets.front().solitons == SolitonSet{{4, -7}, {7, -5}});
  for (const auto& spec : sets) {
    CHECK(spec.background.s() <= 3);
    CHECK(spec.solitons.size() >= 1);
    CHECK(spec.solitons.size() <= 3);
    std::set<Value> amps;
    for (const auto& s : spec.solitons) {
      amps.insert(s.amplitude);
      CHECK(s.amplitude >= 4);
      CHECK(s.amplitude <= 8);
      CHECK(s.phase >= -10);
      CHECK(s.phase <= 5);
    }
    CHECK(amps.size() == spec.solitons.size());
  }
  const auto again = theorem_parameter_sets(4);
  for (std::size_t i = 0; i < sets.size(); ++i) CHECK(write_solution(sets[i]) == write_solution(again[i]));
}
