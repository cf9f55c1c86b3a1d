#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "udkdv/cli.hpp"
#include "udkdv/solutions.hpp"
#include "udkdv/state.hpp"

using namespace udkdv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "udkdv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("udkdv-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = path_ / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path_ / name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  bool exists(const std::string& name) const { return fs::exists(path_ / name); }
  std::size_t entries() const { return static_cast<std::size_t>(std::distance(fs::directory_iterator(path_), {})); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kTwoSoliton = "# solution v1\nshift: 0\ns: 2\nb: 2 1\ndelta: 0 1\nP: 4 7\nC: -7 -5\n";

std::string q_line(const std::string& block) {
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("q:", 0) == 0) return line;
  return {};
}

}  // namespace

TEST_CASE("evolve writes a pattern") {
  TempDir d;
  const auto in = d.file("s.txt", "# background: 0\n# offset: 0\n1 1 1\n");
  const auto r = run({"evolve", "--rule", "udkdv", "--steps", "8", "--in", in, "--out", d.file("p.txt")});
  REQUIRE(r.code == 0);
  const auto p = read_pattern(d.read("p.txt"));
  REQUIRE(p.rows.size() == 9);
  for (Value t = 0; t <= 8; ++t) CHECK(canonicalize(p.rows[static_cast<std::size_t>(t)]).offset == 3 * t);

  const auto stdout_run = run({"evolve", "--steps", "2", "--in", in});
  CHECK(stdout_run.code == 0);
  CHECK(looks_like_pattern(stdout_run.out));
}

TEST_CASE("synth, verify and conserved on a two-soliton solution") {
  TempDir d;
  const auto spec = d.file("two.sol", kTwoSoliton);
  const auto pat = d.file("two.pat");
  REQUIRE(run({"synth", "--spec", spec, "--n", "-110..60", "--t", "-10..10", "--out", pat}).code == 0);

  const auto v = run({"verify", "--suite", "evolution", "--in", pat});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("PASS evolution", 0) == 0);

  const auto early = run({"conserved", "--in", pat, "--t", "-10..-10"});
  const auto late = run({"conserved", "--in", pat, "--t", "10..10"});
  REQUIRE(early.code == 0);
  REQUIRE(late.code == 0);
  CHECK(q_line(early.out) == "q: -1 -2 2 2 1 1 1");
  CHECK(q_line(early.out) == q_line(late.out));
  CHECK(late.out.find("young: 5 2\n") != std::string::npos);
  CHECK(late.out.find("counts: 3 1\n") != std::string::npos);
}

TEST_CASE("a truncated pattern fails the evolution check") {
  TempDir d;
  const auto spec = d.file("two.sol", kTwoSoliton);
  const auto pat = d.file("cut.pat");
  REQUIRE(run({"synth", "--spec", spec, "--n", "-20..40", "--t", "-10..10", "--out", pat}).code == 0);
  const auto v = run({"verify", "--suite", "evolution", "--in", pat});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("FAIL evolution", 0) == 0);
}

TEST_CASE("conserved on a state file") {
  TempDir d;
  const auto in = d.file("s.txt", "# background: 0\n# offset: 0\n0 1 1 1 0 0 0 1 1\n");
  const auto r = run({"conserved", "--in", in});
  CHECK(r.code == 0);
  CHECK(q_line(r.out) == "q: 2 2 1");
}

TEST_CASE("render") {
  TempDir d;
  const auto in = d.file("s.txt", "# background: 1\n# offset: 0\n1 1 0 2 1\n");
  const auto r = run({"render", "--in", in, "--n", "0..4"});
  CHECK(r.code == 0);
  CHECK(r.out == "..02.\n");
  const auto z = run({"render", "--in", in, "--dot", "0", "--n", "0..4"});
  CHECK(z.out == "11.21\n");
}

TEST_CASE("verify with seed and empty corpus") {
  TempDir d;
  const auto r = run({"verify", "--suite", "oracle-equivalence", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS oracle-equivalence", 0) == 0);
  CHECK(run({"verify", "--suite", "oracle-equivalence", "--seed", "3"}).out == r.out);

  const auto empty = d.file("empty.pat", "# background: 0\n# offset: 0\n# t0: 0\n");
  const auto e = run({"verify", "--in", empty, "--suite", "energy-identity"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("skipped energy-identity", 0) == 0);
}

TEST_CASE("input errors exit 2 without partial output") {
  TempDir d;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"evolve", "--steps", "1"}).code == 2);
  CHECK(run({"evolve", "--steps", "-1", "--in", d.file("x", "# background: 0\n# offset: 0\n")}).code == 2);
  CHECK(run({"evolve", "--steps", "1", "--in", d.file("missing.txt")}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);

  const auto bad = d.file("bad.txt", "# background: 0\n# offset: 0\n2 0\n");
  const auto before = d.entries();
  const auto r = run({"evolve", "--rule", "ballmove", "--steps", "2", "--in", bad, "--out", d.file("out.txt")});
  CHECK(r.code == 2);
  CHECK(r.err.find("binary") != std::string::npos);
  CHECK_FALSE(d.exists("out.txt"));
  CHECK(d.entries() == before);

  const auto sol = d.file("s.sol", kTwoSoliton);
  CHECK(run({"synth", "--spec", sol, "--n", "5..1", "--t", "0..1"}).code == 2);
  CHECK(run({"synth", "--spec", sol, "--n", "a..b", "--t", "0..1"}).code == 2);
  CHECK(run({"synth", "--spec", sol, "--n", "0..4"}).code == 2);
  CHECK(run({"evolve", "--rule", "carrier:0:1", "--steps", "1", "--in", bad}).code == 2);
}
