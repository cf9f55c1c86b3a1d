#include "udkdv/solutions.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "udkdv/error.hpp"

namespace udkdv {

namespace {

Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Max of a concave function over integers k >= lo, given its real maximizer num/den.
template <class F>
Value concave_max(F f, Value num, Value den, Value lo) {
  const Value c = floor_div(num, den);
  return std::max({f(std::max(lo, c)), f(std::max(lo, c + 1)), f(lo)});
}

}  // namespace

void BackgroundSpec::validate() const {
  if (b.size() != delta.size()) throw InputError("b and delta must have the same length");
  for (Value v : b)
    if (v < 0) throw InputError("b_i must be nonnegative");
  for (Value d : delta)
    if (d != 0 && d != 1) throw InputError("delta_i must be 0 or 1");
}

Value BackgroundConstants::c_bar(Value i) const {
  for (Value j = 1; j <= s; ++j)
    if (B[j - 1] < i && i <= B[j]) return -2 * j + 1;
  return -2 * s - 1;
}

Value BackgroundConstants::c_prime(Value i) const { return -(ones[static_cast<std::size_t>(i - 1)] - i); }

bool BackgroundConstants::in_I(Value r) const { return std::binary_search(I.begin(), I.end(), r); }

BackgroundConstants derive_background_constants(const BackgroundSpec& spec) {
  spec.validate();
  BackgroundConstants c;
  c.spec = spec;
  c.s = static_cast<Value>(spec.s());
  c.B = {0};
  c.Delta = {0};
  Value sum_b = 0;
  for (std::size_t i = 0; i < spec.s(); ++i) {
    c.B.push_back(c.B.back() + spec.b[i]);
    c.Delta.push_back(c.Delta.back() + spec.delta[i]);
    sum_b += spec.b[i];
    const Value idx = static_cast<Value>(i) + 1;
    if (spec.delta[i] == 1) {
      c.ones.push_back(idx);
      c.S1.push_back(idx);
    } else {
      c.S0.push_back(idx);
    }
  }
  c.l = c.Delta.back();
  c.ones.push_back(c.s + 1);
  c.delta_last = ((c.s - c.l + 1) % 2 + 2) % 2;
  c.l_prime = c.l + c.delta_last;
  c.K = c.l + sum_b;

  c.C_T = 0;
  for (Value j = 1; j <= c.s; ++j) c.C_T += (2 * j - 1) * spec.b[static_cast<std::size_t>(j - 1)];
  for (Value j = 1; j <= c.l; ++j) c.C_T += c.ones[static_cast<std::size_t>(j - 1)] - j;
  c.Q_0 = c.C_T + c.K * (c.K - 1) + (c.K - c.l) * (c.K - c.l - 1);

  std::set<Value> bar;
  for (Value i : c.S0) {
    const Value base = 2 * c.B[i - 1] + c.Delta[i - 1];
    for (Value k = 0; k < spec.b[static_cast<std::size_t>(i - 1)]; ++k) bar.insert(base + 2 * k + 1);
  }
  for (Value r = 1; r <= c.slope_count(); ++r) {
    if (bar.count(r))
      c.I_bar.push_back(r);
    else
      c.I.push_back(r);
  }
  return c;
}

std::vector<Value> background_zeros(const BackgroundSpec& spec) {
  spec.validate();
  std::vector<Value> z{spec.shift};
  Value acc = 0;
  for (std::size_t i = 0; i < spec.s(); ++i) {
    acc += 2 * spec.b[i] + spec.delta[i] + 1;
    z.push_back(spec.shift - acc);
  }
  return z;
}

Value background_profile(const BackgroundSpec& spec, Value k) {
  const auto z = background_zeros(spec);
  return std::find(z.begin(), z.end(), k) == z.end() ? 1 : 0;
}

Value theta(const BackgroundConstants& c, Value r) {
  if (!c.in_I(r)) throw InputError("theta: r = " + std::to_string(r) + " is not in I");
  const auto& b = c.spec.b;
  const auto& d = c.spec.delta;
  auto bj = [&](Value j) { return b[static_cast<std::size_t>(j - 1)]; };
  auto dj = [&](Value j) { return d[static_cast<std::size_t>(j - 1)]; };
  auto sq = [](Value v) { return v * (v - 1); };

  for (Value i = 1; i <= c.s; ++i) {
    const Value base = 2 * c.B[i - 1] + c.Delta[i - 1];
    const Value top = 2 * c.B[i] + c.Delta[i];
    const bool one = dj(i) == 1;
    if (r < base + (one ? 1 : 2) || r > top) continue;
    if ((r - base) % 2 == 0) {
      const Value k = (r - base) / 2;
      Value pre = 0;
      for (Value j = 1; j < i; ++j) pre += (2 * j - 1) * bj(j) + (j - c.Delta[j]) * dj(j);
      return pre + (2 * i - 1) * k + sq(c.B[i - 1] + k + c.Delta[i - 1]) + sq(c.B[i - 1] + k);
    }
    if (one) {
      const Value k = (r - base - 1) / 2;
      Value pre = 0;
      for (Value j = 1; j < i; ++j) pre += (2 * j - 1) * bj(j);
      for (Value j = 1; j <= i; ++j) pre += (j - c.Delta[j]) * dj(j);
      return pre + (2 * i - 1) * k + sq(c.B[i - 1] + k + c.Delta[i]) + sq(c.B[i - 1] + k);
    }
  }
  throw std::logic_error("theta: no case covers r = " + std::to_string(r));
}

Value truncation_bound(const BackgroundConstants& c, Value x) {
  return c.K + c.l_prime + c.s + (std::abs(x) + 1) / 2 + 4;
}

Value rho_background_truncated(const BackgroundConstants& c, Value x, Value R) {
  if (R < truncation_bound(c, x))
    throw InputError("truncation radius " + std::to_string(R) + " below the bound " +
                     std::to_string(truncation_bound(c, x)));
  std::vector<Value> cp(static_cast<std::size_t>(c.l_prime) + 1, 0);
  for (Value k = 1; k <= c.l_prime; ++k) cp[static_cast<std::size_t>(k)] = cp[static_cast<std::size_t>(k - 1)] + c.c_prime(k);

  Value best = std::numeric_limits<Value>::min();
  auto scan = [&](Value k1, Value cbar_sum) {
    for (Value k2 = 0; k2 <= c.l_prime; ++k2) {
      const Value v = -(2 * k1 + k2) * x + cbar_sum + cp[static_cast<std::size_t>(k2)] - 2 * k1 * (k1 - 1) -
                      k2 * (k2 - 1) - 2 * k1 * k2;
      best = std::max(best, v);
    }
  };
  for (Value k1 = -R; k1 <= 0; ++k1) scan(k1, k1);
  Value acc = 0;
  for (Value k1 = 1; k1 <= R; ++k1) {
    acc += c.c_bar(k1);
    scan(k1, acc);
  }
  return best;
}

Value rho_background_truncated(const BackgroundConstants& c, Value x) {
  return rho_background_truncated(c, x, truncation_bound(c, x));
}

Value rho_background_closed(const BackgroundConstants& c, Value x) {
  // rho^(-) = max_{k>=0} [(2x-1)k - 2k(k+1)]
  const Value minus = concave_max([&](Value k) { return (2 * x - 1) * k - 2 * k * (k + 1); }, 2 * x - 3, 4, 0);

  const Value A = c.slope_count();
  Value plus = 0;
  if (c.delta_last == 0) {
    const Value lin = 4 * c.K - 2 * c.l + 2 * c.s - 1;
    plus = concave_max([&](Value q) { return -(A + 2 * q) * x - q * (2 * q + lin) - c.Q_0; },
                       -(lin + 2 * x), 4, 1);
  } else {
    const Value off = A + c.s;
    plus = concave_max([&](Value q) { return -(A + q) * x - q * (q - 1) / 2 - q * off - c.Q_0; },
                       1 - 2 * off - 2 * x, 2, 1);
  }

  Value zero = 0;
  for (Value r : c.I) zero = std::max(zero, -r * x - theta(c, r));
  return std::max({minus, zero, plus});
}

// ---------------------------------------------------------------------------

namespace {

void check_subset_limit(std::size_t n) {
  if (n > kMaxSubsetSolitons)
    throw InputError("at most " + std::to_string(kMaxSubsetSolitons) + " solitons supported, got " +
                     std::to_string(n));
}

// Max over subsets J of sum_{i in J} term_i - sum_{i != j in J} min[P_i, P_j] + extra(|J|).
template <class Extra>
Value subset_max(const SolitonSet& sol, const std::vector<Value>& term, Extra extra) {
  const std::size_t m = sol.size();
  std::vector<std::size_t> chosen;
  Value best = std::numeric_limits<Value>::min();
  auto dfs = [&](auto&& self, std::size_t i, Value acc) -> void {
    if (i == m) {
      best = std::max(best, acc + extra(static_cast<Value>(chosen.size())));
      return;
    }
    self(self, i + 1, acc);
    Value add = term[i];
    for (std::size_t j : chosen) add -= 2 * std::min(sol[i].amplitude, sol[j].amplitude);
    chosen.push_back(i);
    self(self, i + 1, acc + add);
    chosen.pop_back();
  };
  dfs(dfs, 0, 0);
  return best;
}

void check_amplitudes(const SolitonSet& sol, Value min_p) {
  for (const auto& s : sol)
    if (s.amplitude < min_p)
      throw InputError("soliton amplitude must be >= " + std::to_string(min_p) + ", got " +
                       std::to_string(s.amplitude));
}

}  // namespace

Value rho_nsoliton(const SolitonSet& solitons, Value L, Value n, Value t) {
  check_subset_limit(solitons.size());
  std::vector<Value> term;
  for (const auto& s : solitons) term.push_back(s.phase + t * s.amplitude - n * std::min(s.amplitude, L));
  return std::max<Value>(0, subset_max(solitons, term, [](Value) { return Value{0}; }));
}

Value rho_combined(const SolitonSet& solitons, const BackgroundConstants& background, Value n, Value t) {
  check_subset_limit(solitons.size());
  check_amplitudes(solitons, 3);
  std::vector<Value> term;
  for (const auto& s : solitons) term.push_back(-3 * n + s.amplitude * t + s.phase);
  const Value x0 = n - t - background.spec.shift;
  std::vector<Value> bg;
  for (std::size_t j = 0; j <= solitons.size(); ++j)
    bg.push_back(rho_background_closed(background, x0 + 2 * static_cast<Value>(j)));
  return subset_max(solitons, term, [&](Value size) { return bg[static_cast<std::size_t>(size)]; });
}

TauEvaluator TauEvaluator::nsoliton(SolitonSet solitons, Value L) {
  check_subset_limit(solitons.size());
  check_amplitudes(solitons, 1);
  if (L < 1) throw InputError("box capacity must be >= 1");
  TauEvaluator e;
  e.kind_ = Kind::nsoliton;
  e.solitons_ = std::move(solitons);
  e.L_ = L;
  return e;
}

TauEvaluator TauEvaluator::background(const BackgroundSpec& spec) {
  TauEvaluator e;
  e.kind_ = Kind::background;
  e.background_ = derive_background_constants(spec);
  e.L_ = 3;
  return e;
}

TauEvaluator TauEvaluator::combined(SolitonSet solitons, const BackgroundSpec& spec) {
  check_subset_limit(solitons.size());
  check_amplitudes(solitons, 3);
  TauEvaluator e;
  e.kind_ = Kind::combined;
  e.solitons_ = std::move(solitons);
  e.background_ = derive_background_constants(spec);
  e.L_ = 3;
  return e;
}

TauEvaluator TauEvaluator::affine(Value alpha, Value beta, Value gamma) {
  TauEvaluator e;
  e.affine_ = true;
  e.alpha_ = alpha;
  e.beta_ = beta;
  e.gamma_ = gamma;
  return e;
}

Value TauEvaluator::boundary() const { return kind_ == Kind::nsoliton ? 0 : 1; }

Value TauEvaluator::evaluate(Value n, Value t) const {
  Value v = 0;
  if (affine_) {
    v = alpha_ * n + beta_ * t + gamma_;
  } else {
    switch (kind_) {
      case Kind::nsoliton:
        v = rho_nsoliton(solitons_, L_, n, t);
        break;
      case Kind::background:
        v = rho_background_closed(*background_, n - t - background_->spec.shift);
        break;
      case Kind::combined:
        v = rho_combined(solitons_, *background_, n, t);
        break;
    }
  }
  if (bump_ && bump_->first == std::pair{n, t}) v += bump_->second;
  return v;
}

Value TauEvaluator::operator()(Value n, Value t) const {
  constexpr Value lim = std::numeric_limits<std::int32_t>::max();
  if (std::abs(n) >= lim || std::abs(t) >= lim) return evaluate(n, t);
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
                            static_cast<std::uint32_t>(t);
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->values.find(key);
    if (it != memo_->values.end()) return it->second;
  }
  const Value v = evaluate(n, t);
  std::lock_guard lock(memo_->mutex);
  memo_->values.emplace(key, v);
  return v;
}

Value TauEvaluator::content_radius(Value t) const {
  Value max_p = 0, sum_c = 0;
  for (const auto& s : solitons_) {
    max_p = std::max(max_p, s.amplitude);
    sum_c += std::abs(s.phase);
  }
  const Value m = static_cast<Value>(solitons_.size());
  Value r = std::abs(t) * (max_p + 1) + sum_c + 8 * m * max_p + 40;
  if (background_) r += 2 * (2 * background_->K + background_->s + 2) + std::abs(background_->spec.shift);
  return r;
}

TauEvaluator TauEvaluator::perturbed(Value n, Value t, Value delta) const {
  TauEvaluator e = *this;
  e.bump_ = {{n, t}, delta};
  e.memo_ = std::make_shared<Memo>();
  return e;
}

Value u_from_tau(const TauEvaluator& tau, Value n, Value t) {
  return tau(n, t) - tau(n, t - 1) - tau(n + 1, t) + tau(n + 1, t - 1);
}

Value v_from_tau(const TauEvaluator& tau, Value n, Value t) {
  return tau(n, t + 1) - 2 * tau(n, t) + tau(n, t - 1);
}

Value bilinear_residual(const TauEvaluator& tau, Value n, Value t, Value L) {
  const Value lhs = tau(n + 1, t + 1) + tau(n, t - 1);
  const Value rhs = std::max(tau(n + 1, t - 1) + tau(n, t + 1) - L, tau(n, t) + tau(n + 1, t));
  return std::abs(lhs - rhs);
}

LatticeState tau_row(const TauEvaluator& tau, Value t) {
  const Value bg = tau.boundary();
  constexpr Value quiet = 6;
  Value r = tau.content_radius(t);
  for (int attempt = 0; attempt < 4; ++attempt, r *= 2) {
    LatticeState row{bg, -r, {}};
    for (Value n = -r; n <= r; ++n) row.cells.push_back(u_from_tau(tau, n, t));
    const auto& c = row.cells;
    const bool ends_quiet = std::all_of(c.begin(), c.begin() + quiet, [&](Value v) { return v == bg; }) &&
                            std::all_of(c.end() - quiet, c.end(), [&](Value v) { return v == bg; });
    if (ends_quiet) return canonicalize(std::move(row));
  }
  throw PreconditionError("row t = " + std::to_string(t) + " does not settle to the boundary value");
}

SpacetimePattern synthesize(const TauEvaluator& tau, Value n_lo, Value n_hi, Value t_lo, Value t_hi) {
  if (n_lo > n_hi || t_lo > t_hi) throw InputError("synthesis ranges must be nonempty");
  SpacetimePattern pat{t_lo, {}};
  for (Value t = t_lo; t <= t_hi; ++t) {
    LatticeState row{tau.boundary(), n_lo, {}};
    for (Value n = n_lo; n <= n_hi; ++n) row.cells.push_back(u_from_tau(tau, n, t));
    pat.rows.push_back(canonicalize(std::move(row)));
  }
  return pat;
}

// ---------------------------------------------------------------------------

std::string to_string(Half h) {
  if (h.is_integer()) return std::to_string(h.as_int());
  return std::to_string(h.twice()) + "/2";
}

Half tent1(Half x) {
  const Value X = x.twice();
  if (-4 <= X && X <= -2) return Half::from_twice(X + 4);
  if (-2 <= X && X <= 0) return Half::from_twice(-X);
  return {};
}

Half tent2(Half x) {
  const Value X = x.twice();
  if (-5 <= X && X <= -3) return Half::from_twice(2 * X + 10);
  if (-3 <= X && X <= -1) return Half::from_twice(-2 * X - 2);
  return {};
}

Half tent(Value k, Half x) {
  if (k < 0) throw InputError("tent index must be nonnegative");
  Half sum;
  if (k % 2 == 1) {
    for (Value i = 0; i < k; ++i) sum = sum + tent1(x + Half::from_int(i));
  } else {
    for (Value i = 0; i < k / 2; ++i) sum = sum + tent2(x + Half::from_int(2 * i));
  }
  return sum;
}

Half background_cell_closed(const BackgroundConstants& c, Half x) {
  // Every tent vanishes outside [-3, 0], so only indices with shifted argument
  // in that range contribute.
  const Value ax = std::abs(x.twice()) / 2 + 1;
  Half sum;
  for (Value k = 1; 2 * k + 1 <= ax + 4; ++k) sum = sum + tent2(x + Half::from_int(-2 * k - 1));

  const Value A = c.slope_count() + c.s;
  const Value upper = ax + A + 4;
  if (c.delta_last == 0) {
    for (Value k = 0; 2 * k <= upper; ++k) sum = sum + tent2(x + Half::from_int(A + 2 * k));
  } else {
    for (Value k = 0; k <= upper; ++k) sum = sum + tent1(x + Half::from_int(A + k));
  }

  for (Value i = 1; i <= c.s; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    const Value off = 2 * c.B[i - 1] + c.Delta[i - 1] + i - 1;
    sum = sum + tent(2 * c.spec.b[idx] + c.spec.delta[idx], x + Half::from_int(off));
  }
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

// d with row(n) = 0 exactly at n = z + t + d for the template zeros z, searched
// by anchoring the rightmost template zero to each observed zero.
std::optional<Value> align_row(const LatticeState& row, Value t, const std::vector<Value>& zeros) {
  std::vector<Value> observed;
  for (std::size_t i = 0; i < row.cells.size(); ++i)
    if (row.cells[i] == 0) observed.push_back(row.offset + static_cast<Value>(i));
  if (row.background == 0) return std::nullopt;

  std::vector<Value> found;
  for (Value o : observed) {
    const Value d = o - zeros.front() - t;
    bool all = true;
    for (Value z : zeros) all = all && row.at(z + t + d) == 0;
    if (all) found.push_back(d);
  }
  if (found.size() == 1) return found.front();
  // Several candidates: keep the one explaining every observed zero.
  std::optional<Value> exact;
  for (Value d : found) {
    if (observed.size() != zeros.size()) continue;
    if (exact) return std::nullopt;
    exact = d;
  }
  return exact;
}

}  // namespace

Value measure_background_shift(const SpacetimePattern& pattern, const BackgroundSpec& spec, Value solitons) {
  if (pattern.rows.size() < 2) throw PreconditionError("pattern needs at least two rows");
  if (solitons < 0) throw InputError("soliton count must be nonnegative");
  const auto zeros = background_zeros(spec);
  const Value t_first = pattern.t0;
  const Value t_last = pattern.t0 + static_cast<Value>(pattern.rows.size()) - 1;
  const auto first = align_row(pattern.rows.front(), t_first, zeros);
  const auto last = align_row(pattern.rows.back(), t_last, zeros);
  if (!first || !last)
    throw PreconditionError("background zeros could not be aligned; the pattern is too short for " +
                            std::to_string(solitons) + " solitons to separate");
  return *last - *first;
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<Value> parse_ints(std::string_view key, std::string_view s) {
  std::vector<Value> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    Value v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw InputError("solution field '" + std::string(key) + "': bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Value parse_one(std::string_view key, std::string_view s) {
  const auto v = parse_ints(key, s);
  if (v.size() != 1) throw InputError("solution field '" + std::string(key) + "' needs exactly one integer");
  return v.front();
}

std::string join(const std::vector<Value>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

TauEvaluator SolutionSpec::evaluator() const {
  switch (kind) {
    case TauEvaluator::Kind::nsoliton:
      return TauEvaluator::nsoliton(solitons, L);
    case TauEvaluator::Kind::background:
      return TauEvaluator::background(background);
    case TauEvaluator::Kind::combined:
      return TauEvaluator::combined(solitons, background);
  }
  throw InputError("invalid solution kind");
}

SolutionSpec read_solution(std::string_view text) {
  SolutionSpec spec;
  std::set<std::string> seen;
  std::optional<Value> s;
  std::vector<Value> P, C;
  bool header = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (trim(line.substr(1)) == "solution v1") header = true;
      continue;
    }
    if (!header) throw InputError("solution file must start with '# solution v1'");
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw InputError("solution line without ':': '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view val = trim(line.substr(colon + 1));
    if (!seen.insert(key).second) throw InputError("duplicate solution field '" + key + "'");
    if (key == "kind") {
      if (val == "combined")
        spec.kind = TauEvaluator::Kind::combined;
      else if (val == "background")
        spec.kind = TauEvaluator::Kind::background;
      else if (val == "nsoliton")
        spec.kind = TauEvaluator::Kind::nsoliton;
      else
        throw InputError("unknown solution kind '" + std::string(val) + "'");
    } else if (key == "shift") {
      spec.background.shift = parse_one(key, val);
    } else if (key == "s") {
      s = parse_one(key, val);
    } else if (key == "b") {
      spec.background.b = parse_ints(key, val);
    } else if (key == "delta") {
      spec.background.delta = parse_ints(key, val);
    } else if (key == "P") {
      P = parse_ints(key, val);
    } else if (key == "C") {
      C = parse_ints(key, val);
    } else if (key == "L") {
      spec.L = parse_one(key, val);
    } else {
      throw InputError("unknown solution field '" + key + "'");
    }
  }
  if (!header) throw InputError("solution file must start with '# solution v1'");
  if (s && *s != static_cast<Value>(spec.background.b.size()))
    throw InputError("s = " + std::to_string(*s) + " but b has " + std::to_string(spec.background.b.size()) +
                     " entries");
  if (s && *s != static_cast<Value>(spec.background.delta.size()))
    throw InputError("s = " + std::to_string(*s) + " but delta has " +
                     std::to_string(spec.background.delta.size()) + " entries");
  spec.background.validate();
  if (P.size() != C.size()) throw InputError("P and C must have the same length");
  for (std::size_t i = 0; i < P.size(); ++i) spec.solitons.push_back({P[i], C[i]});
  spec.evaluator();  // validates amplitudes and limits
  return spec;
}

std::string write_solution(const SolutionSpec& spec) {
  std::vector<Value> P, C;
  for (const auto& s : spec.solitons) {
    P.push_back(s.amplitude);
    C.push_back(s.phase);
  }
  std::string out = "# solution v1\n";
  switch (spec.kind) {
    case TauEvaluator::Kind::combined:
      out += "kind: combined\n";
      break;
    case TauEvaluator::Kind::background:
      out += "kind: background\n";
      break;
    case TauEvaluator::Kind::nsoliton:
      out += "kind: nsoliton\n";
      break;
  }
  out += "shift: " + std::to_string(spec.background.shift) + "\n";
  out += "s: " + std::to_string(spec.background.s()) + "\n";
  out += "b: " + join(spec.background.b) + "\n";
  out += "delta: " + join(spec.background.delta) + "\n";
  out += "P: " + join(P) + "\n";
  out += "C: " + join(C) + "\n";
  if (spec.kind == TauEvaluator::Kind::nsoliton) out += "L: " + std::to_string(spec.L) + "\n";
  return out;
}

}  // namespace udkdv
