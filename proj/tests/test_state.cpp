#include <doctest.h>

#include "udkdv/error.hpp"
#include "udkdv/state.hpp"

using namespace udkdv;

TEST_CASE("canonicalize trims background cells") {
  CHECK(canonicalize({0, 0, {0, 1, 0}}) == LatticeState{0, 1, {1}});
  CHECK(canonicalize({1, 3, {}}) == LatticeState{1, 3, {}});
  CHECK(canonicalize({0, -2, {0, 0, 0}}) == LatticeState{0, 0, {}});
  const LatticeState s{2, -5, {2, 2, 0, 3, 2}};
  CHECK(canonicalize(canonicalize(s)) == canonicalize(s));
  CHECK(same_sequence(s, canonicalize(s)));
}

TEST_CASE("same_sequence ignores window layout") {
  CHECK(same_sequence({0, 0, {0, 1}}, {0, 1, {1, 0, 0}}));
  CHECK_FALSE(same_sequence({0, 0, {1}}, {0, 1, {1}}));
  CHECK_FALSE(same_sequence({0, 0, {}}, {1, 0, {}}));
}

TEST_CASE("materialize and excess mass") {
  const LatticeState s{1, 2, {0, 3}};
  const auto m = materialize(s, 0, 5);
  CHECK(m.offset == 0);
  CHECK(m.cells == std::vector<Value>{1, 1, 0, 3, 1});
  CHECK(excess_mass(s) == 1);
}

TEST_CASE("state codec") {
  const auto s = read_state("# background: 0\n# offset: 0\n1 1 1\n");
  CHECK(s == LatticeState{0, 0, {1, 1, 1}});

  const auto t = read_state("# background: 1\n# offset: -4\n0 2 0\n");
  CHECK(t.at(-4) == 0);
  CHECK(t.at(-3) == 2);
  CHECK(t.at(-2) == 0);
  CHECK(t.at(-5) == 1);
  CHECK(t.at(10) == 1);

  for (const LatticeState& c : {LatticeState{0, 0, {}}, LatticeState{1, -7, {0, 3, -2}}, LatticeState{-3, 4, {5}}}) {
    CHECK(read_state(write_state(c)) == c);
  }
  const std::string text = "# background: 1\n# offset: -7\n0 3 -2\n";
  CHECK(write_state(read_state(text)) == text);
}

TEST_CASE("state codec errors") {
  CHECK_THROWS_AS(read_state("# offset: 0\n1\n"), InputError);
  CHECK_THROWS_AS(read_state("# background: 0\n1\n"), InputError);
  CHECK_THROWS_AS(read_state("# background: 0\n# offset: 0\n1 x 1\n"), InputError);
  CHECK_THROWS_AS(read_state("# background: 0\n# background: 1\n# offset: 0\n"), InputError);
  CHECK_THROWS_AS(read_state("# background: 0\n# offset: 0\n1\n2\n"), InputError);
  CHECK_THROWS_AS(read_state("# background: zero\n# offset: 0\n"), InputError);
}

TEST_CASE("comments and blank lines after the header are ignored") {
  const auto s = read_state("# background: 0\n# offset: 2\n\n# a note\n1 0 1\n\n");
  CHECK(s == LatticeState{0, 2, {1, 0, 1}});
}

TEST_CASE("pattern codec") {
  SpacetimePattern p{-3, {{1, 0, {0, 2}}, {1, 1, {0, 2}}, {1, 0, {}}}};
  const auto text = write_pattern(p);
  CHECK(looks_like_pattern(text));
  CHECK_FALSE(looks_like_pattern(write_state({0, 0, {1}})));
  const auto back = read_pattern(text);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.t0 == -3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_sequence(back.rows[i], p.rows[i]));
  CHECK(back.at_time(-2).at(1) == 0);
  CHECK_THROWS_AS(back.at_time(0), InputError);
}

TEST_CASE("render_ascii") {
  CHECK(render_ascii({0, {{0, 0, {0, 1, 1, 1, 0}}}}, 0, RenderRange{0, 5}) == ".111.\n");
  CHECK(render_ascii({0, {{1, 0, {1, 1, 0, 2, 1}}}}, 1, RenderRange{0, 5}) == "..02.\n");
  CHECK(render_ascii({0, {{0, 0, {}}}}, 0, RenderRange{0, 4}) == "....\n");

  const auto wide = render_ascii({5, {{0, 0, {12}}}}, 0, RenderRange{-1, 2});
  CHECK(wide == ".X.\n# X t=5 n=0 value=12\n");
}
