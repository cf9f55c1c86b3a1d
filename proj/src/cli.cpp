#include "udkdv/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "udkdv/conserved.hpp"
#include "udkdv/error.hpp"
#include "udkdv/evolution.hpp"
#include "udkdv/solutions.hpp"
#include "udkdv/state.hpp"
#include "udkdv/verify.hpp"

namespace udkdv {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct Range {
  Value lo = 0;
  Value hi = 0;
};

Range parse_range(const std::string& text, const char* flag) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InputError(std::string(flag) + " expects A..B, got '" + text + "'");
  Range r;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    r.lo = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    r.hi = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
  } catch (const std::logic_error&) {
    throw InputError(std::string(flag) + " expects integers A..B, got '" + text + "'");
  }
  if (r.lo > r.hi) throw InputError(std::string(flag) + " range is empty: '" + text + "'");
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Temp file in the target directory, then rename, so failures leave no partial output.
void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path + "'");
  }
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_atomic(out_path, text);
}

SpacetimePattern read_any_pattern(const std::string& text) {
  if (looks_like_pattern(text)) return read_pattern(text);
  return SpacetimePattern{0, {read_state(text)}};
}

std::string join(const std::vector<Value>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string profile_block(Value t, const ConservedProfile& p) {
  std::string s = "# t: " + std::to_string(t) + "\n";
  s += "M: " + std::to_string(p.gauge) + "\n";
  s += "window: " + std::to_string(p.window.left) + " " + std::to_string(p.window.right) + "\n";
  s += "raw: " + join(p.raw) + "\n";
  s += "q: " + join(p.normalized) + "\n";
  s += "young: " + join(young_rows(p)) + "\n";
  if (p.gauge == 1) {
    const auto [neg, unit] = background_counts(p);
    s += "counts: " + std::to_string(neg) + " " + std::to_string(unit) + "\n";
  }
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact integer simulator for the ultradiscrete KdV equation and box-ball systems", "udkdv"};
  app.require_subcommand(1);

  std::string rule_text = "udkdv", in_path, out_path, spec_path, n_text, t_text, suite = "all";
  Value steps = 0, dot = 0;
  std::uint64_t seed = 0;
  bool rule_given = false;

  auto* evolve = app.add_subcommand("evolve", "Evolve a state file and write the pattern");
  evolve->add_option("--rule", rule_text, "udkdv | ballmove | carrier:L:C");
  evolve->add_option("--steps", steps, "Number of time steps")->required()->check(CLI::NonNegativeNumber);
  evolve->add_option("--in", in_path, "State file")->required();
  evolve->add_option("--out", out_path, "Pattern file (stdout if omitted)");

  auto* conserved = app.add_subcommand("conserved", "Conserved quantities of a state or pattern rows");
  conserved->add_option("--in", in_path, "State or pattern file")->required();
  conserved->add_option("--t", t_text, "Rows A..B of a pattern (all rows if omitted)");
  conserved->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* synth = app.add_subcommand("synth", "Evaluate a solution spec on a grid");
  synth->add_option("--spec", spec_path, "Solution spec file")->required();
  synth->add_option("--n", n_text, "Site range A..B")->required();
  synth->add_option("--t", t_text, "Time range A..B")->required();
  synth->add_option("--out", out_path, "Pattern file (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "Suite name or 'all'");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--in", in_path, "State or pattern corpus");
  verify->add_option("--rule", rule_text, "Rule for the evolution suite")->each([&](const std::string&) {
    rule_given = true;
  });
  verify->add_option("--out", out_path, "Report file (stdout if omitted)");

  auto* render = app.add_subcommand("render", "Draw a state or pattern as ASCII");
  render->add_option("--in", in_path, "State or pattern file")->required();
  render->add_option("--dot", dot, "Value drawn as '.' (default: the background)");
  render->add_option("--n", n_text, "Site range A..B");
  render->add_option("--out", out_path, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*evolve) {
      const Rule rule = Rule::parse(rule_text);
      const LatticeState state = read_state(read_file(in_path));
      emit(out_path, write_pattern(evolve_pattern(state, rule, steps)), out);
      return kOk;
    }

    if (*conserved) {
      const SpacetimePattern pat = read_any_pattern(read_file(in_path));
      Value lo = pat.t0, hi = pat.t0 + static_cast<Value>(pat.rows.size()) - 1;
      if (!t_text.empty()) {
        const Range r = parse_range(t_text, "--t");
        lo = r.lo;
        hi = r.hi;
      }
      std::string text;
      for (Value t = lo; t <= hi; ++t) text += profile_block(t, conserved_profile(pat.at_time(t)));
      emit(out_path, text, out);
      return kOk;
    }

    if (*synth) {
      const SolutionSpec spec = read_solution(read_file(spec_path));
      const Range n = parse_range(n_text, "--n");
      const Range t = parse_range(t_text, "--t");
      emit(out_path, write_pattern(synthesize(spec.evaluator(), n.lo, n.hi, t.lo, t.hi)), out);
      return kOk;
    }

    if (*verify) {
      VerifyOptions options;
      options.seed = seed;
      if (rule_given) options.rule = Rule::parse(rule_text);
      if (!in_path.empty()) {
        const SpacetimePattern pat = read_any_pattern(read_file(in_path));
        options.corpus = pat.rows;
        options.pattern = pat;
      }
      std::vector<SuiteResult> results;
      if (suite == "all")
        results = run_all(options);
      else
        results.push_back(run_suite(suite, options));
      std::string report;
      bool ok = true;
      for (const auto& r : results) {
        report += r.line() + "\n";
        ok = ok && r.ok();
      }
      emit(out_path, report, out);
      if (!ok) err << "verification failed\n";
      return ok ? kOk : kVerifyFailed;
    }

    if (*render) {
      const std::string text = read_file(in_path);
      const SpacetimePattern pat = read_any_pattern(text);
      const Value dot_value = render->count("--dot") ? dot : pat.background();
      std::optional<RenderRange> range;
      if (!n_text.empty()) {
        const Range n = parse_range(n_text, "--n");
        range = RenderRange{n.lo, n.hi + 1};
      }
      emit(out_path, render_ascii(pat, dot_value, range), out);
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kInputError;
}

}  // namespace udkdv
