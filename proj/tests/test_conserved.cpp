#include <doctest.h>

#include <random>

#include "udkdv/conserved.hpp"
#include "udkdv/error.hpp"

using namespace udkdv;

namespace {

LatticeState binary(std::string_view bits, Value offset = 0) {
  LatticeState s{0, offset, {}};
  for (char c : bits) s.cells.push_back(c == '1' ? 1 : 0);
  return canonicalize(s);
}

BoxedState flat(Value capacity, Value balls) { return {capacity, balls, 0, {}}; }

}  // namespace

TEST_CASE("arcline passes") {
  CHECK(arcline_passes(flat(3, 1), {0, 14}) == std::vector<Value>{7, 7});
  CHECK(arcline_passes(gauge_shift(binary("1110001110001"), 0), {-1, 14}) == std::vector<Value>{3, 2, 2});
  CHECK(conserved_profile(binary("0111011010")).raw == std::vector<Value>{3, 1, 1, 1});
  CHECK(arcline_passes(flat(1, 0), {0, 5}).empty());
  CHECK_THROWS_AS(arcline_passes(flat(1, 0), {2, 2}), InputError);
}

TEST_CASE("balls in the last box are never sources") {
  const BoxedState last_only{1, 0, 3, {1}};
  CHECK(arcline_passes(last_only, {0, 3}).empty());
  CHECK(arcline_passes(last_only, {0, 4}) == std::vector<Value>{1});
}

TEST_CASE("normalization") {
  const std::vector<Value> raw{7, 5, 2, 1, 1, 1};
  CHECK(normalize_conserved(raw, 1, 14) == std::vector<Value>{0, -2, 2, 1, 1, 1});
  CHECK(normalize_conserved(std::vector<Value>{7, 7}, 1, 14) == std::vector<Value>{0, 0});
  CHECK(normalize_conserved(std::vector<Value>{3, 2, 2}, 0, 12) == std::vector<Value>{3, 2, 2});
  CHECK(normalize_conserved(std::vector<Value>{}, 1, 4) == std::vector<Value>{-2, -2});
  CHECK_THROWS_AS(normalize_conserved(raw, 1, 13), InputError);
}

TEST_CASE("window selection") {
  const auto vac = flat(1, 0);
  const auto w = select_window(vac, vac);
  CHECK(w.span() == 2);

  BoxedState dev{3, 1, 3, {0, 1, 1, 1, 2}};
  const auto a = select_window(dev, dev, Anchors{0, 0, 0});
  CHECK(a.left <= 2);
  CHECK(a.right >= 8);
  CHECK(a.span() % 2 == 0);
  CHECK(a.left % 2 == 0);
  CHECK(a.right % 2 == 0);
  CHECK_FALSE(first_pass_reaches_last_box(dev, a));

  CHECK_THROWS_AS(select_window(dev, flat(1, 0)), InputError);
}

TEST_CASE("selected windows satisfy the last-box rule") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    LatticeState s{0, 0, {}};
    const auto len = 1 + rng() % 16;
    for (std::size_t k = 0; k < len; ++k) s.cells.push_back(static_cast<Value>(rng() % 6) - 2);
    const Value M = compute_gauge_offset(s, {1, Capacity::unbounded()});
    const auto now = gauge_shift(s, M);
    const auto next = gauge_shift(step_udkdv(s), M);
    const auto w = select_window(now, next);
    CHECK(w.span() % 2 == 0);
    CHECK_FALSE(first_pass_reaches_last_box(now, w));
  }
}

TEST_CASE("conserved profile") {
  const auto p = conserved_profile(binary("011100011"));
  CHECK(p.gauge == 0);
  CHECK(p.normalized == std::vector<Value>{2, 2, 1});

  for (Value bg : {0, 1, 3}) {
    const auto v = conserved_profile({bg, 0, {}});
    for (Value q : v.normalized) CHECK(q == 0);
  }

  // Background with zeros at 0, -4, -9 on bg 1.
  LatticeState f{1, -9, std::vector<Value>(10, 1)};
  for (Value z : {-9, -4, 0}) f.cells[static_cast<std::size_t>(z + 9)] = 0;
  const auto g = conserved_profile(f);
  CHECK(g.gauge == 1);
  REQUIRE(g.normalized.size() >= 2);
  CHECK(g.normalized[0] == -1);
  CHECK(g.normalized[1] == -2);
  CHECK(background_counts(g) == std::pair<Value, Value>{3, 1});
  CHECK(young_rows(g).empty());
}

TEST_CASE("conserved quantities along an orbit") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    LatticeState s{0, 0, {}};
    const auto len = 1 + rng() % 14;
    for (std::size_t k = 0; k < len; ++k) s.cells.push_back(static_cast<Value>(rng() % 6) - 2);
    const auto orbit = conserved_orbit(s, 12);
    for (const auto& p : orbit) CHECK(p.normalized == orbit.front().normalized);
  }
}

TEST_CASE("energy identity") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 60; ++i) {
    LatticeState s{0, 0, {}};
    const auto len = 1 + rng() % 14;
    for (std::size_t k = 0; k < len; ++k) s.cells.push_back(static_cast<Value>(rng() % 6) - 2);
    const auto p = conserved_profile(s);
    const auto boxed = gauge_shift(s, p.gauge);
    Value sum = 0;
    for (Value k = 1; k <= 6; ++k) {
      if (k <= static_cast<Value>(p.raw.size())) sum += p.raw[static_cast<std::size_t>(k - 1)];
      CHECK(balls_moved(boxed, p.window, k) == sum);
    }
  }
}

TEST_CASE("Young rows and background counts") {
  CHECK(conjugate_partition(std::vector<Value>{2, 2, 1, 1, 1}) == std::vector<Value>{5, 2});
  CHECK(conjugate_partition(std::vector<Value>{2, 1, 1, 1}) == std::vector<Value>{4, 1});
  CHECK(conjugate_partition(std::vector<Value>{}).empty());
  CHECK_THROWS_AS(conjugate_partition(std::vector<Value>{1, 2}), PreconditionError);

  ConservedProfile p;
  p.gauge = 1;
  p.normalized = {0, -2, 2, 1, 1, 1};
  CHECK(young_rows(p) == std::vector<Value>{4, 1});
  CHECK(background_counts(p) == std::pair<Value, Value>{2, 2});
  p.normalized = {-1, -2};
  CHECK(background_counts(p) == std::pair<Value, Value>{3, 1});
  p.normalized = {0, 0};
  CHECK(background_counts(p) == std::pair<Value, Value>{0, 0});
  CHECK(young_rows(p).empty());
  p.gauge = 0;
  CHECK_THROWS_AS(background_counts(p), PreconditionError);
}
