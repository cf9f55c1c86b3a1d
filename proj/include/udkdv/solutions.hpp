#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "udkdv/state.hpp"

namespace udkdv {

// ---------------------------------------------------------------------------
// Background (negative soliton) profiles

/// Parameters of a 0/1 background with s+1 zeros. Zero j sits at
/// shift - sum_{i=1}^{j} (2 b_i + delta_i + 1), j = 0..s.
struct BackgroundSpec {
  Value shift = 0;
  std::vector<Value> b;
  std::vector<Value> delta;

  std::size_t s() const { return b.size(); }
  void validate() const;
};

/// Derived constants of a background. Indices follow the 1-based convention of
/// the formulas: B[i], Delta[i] for i = 0..s, `ones` = m_1..m_l, m_{l+1}.
struct BackgroundConstants {
  BackgroundSpec spec;
  Value s = 0;
  Value l = 0;
  Value delta_last = 0;  // delta_{s+1}
  Value l_prime = 0;
  Value K = 0;
  Value C_T = 0;
  Value Q_0 = 0;
  std::vector<Value> B;      // size s+1
  std::vector<Value> Delta;  // size s+1
  std::vector<Value> ones;   // m_1 < ... < m_l, then m_{l+1} = s + 1
  std::vector<Value> S0;     // {i in [s] : delta_i = 0}
  std::vector<Value> S1;     // {i in [s] : delta_i = 1}
  std::vector<Value> I;      // [2K - l] minus I_bar, ascending
  std::vector<Value> I_bar;  // ascending

  /// \bar C_i for i >= 1: -2j + 1 on (B_{j-1}, B_j], -2s - 1 past B_s.
  Value c_bar(Value i) const;
  /// C'_i = -(m_i - i), i = 1..l'.
  Value c_prime(Value i) const;
  bool in_I(Value r) const;
  Value slope_count() const { return 2 * K - l; }  // 2K - l
};

BackgroundConstants derive_background_constants(const BackgroundSpec& spec);

/// The 0/1 profile \tilde F(k - shift).
Value background_profile(const BackgroundSpec& spec, Value k);

/// Zero positions of the profile, from right (j = 0) to left (j = s).
std::vector<Value> background_zeros(const BackgroundSpec& spec);

/// Theta_r for r in I. Throws InputError otherwise.
Value theta(const BackgroundConstants& c, Value r);

/// Smallest |k_1| range that provably contains the maximizer at x.
Value truncation_bound(const BackgroundConstants& c, Value x);

/// Brute-force rho_F(x): max over |k_1| <= R, 0 <= k_2 <= l' of the original
/// two-index expression. Shift is ignored; x is the profile coordinate.
Value rho_background_truncated(const BackgroundConstants& c, Value x, Value R);
Value rho_background_truncated(const BackgroundConstants& c, Value x);

/// Closed form max[rho^(-), rho^(0), rho^(+)]. Shift is ignored.
Value rho_background_closed(const BackgroundConstants& c, Value x);

// ---------------------------------------------------------------------------
// Solitons and tau functions

struct Soliton {
  Value amplitude = 1;  // P_i
  Value phase = 0;      // C_i

  bool operator==(const Soliton&) const = default;
};
using SolitonSet = std::vector<Soliton>;

inline constexpr std::size_t kMaxSubsetSolitons = 20;

/// max{0, max_J [sum_{i in J}(C_i + t P_i - n min[P_i, L]) - sum_{i != j in J} min[P_i, P_j]]},
/// interaction summed over ordered pairs.
Value rho_nsoliton(const SolitonSet& solitons, Value L, Value n, Value t);

/// Solitons over a background: max over J of the soliton terms with
/// -3n + P t + C plus rho_F(n - t - shift + 2|J|). Every P must be >= 3.
Value rho_combined(const SolitonSet& solitons, const BackgroundConstants& background, Value n, Value t);

/// Memoizing evaluator (n, t) -> rho. Thread-safe.
class TauEvaluator {
 public:
  enum class Kind { nsoliton, background, combined };

  static TauEvaluator nsoliton(SolitonSet solitons, Value L);
  static TauEvaluator background(const BackgroundSpec& spec);
  static TauEvaluator combined(SolitonSet solitons, const BackgroundSpec& spec);
  /// rho = alpha n + beta t + gamma; used for checks.
  static TauEvaluator affine(Value alpha, Value beta, Value gamma);

  Value operator()(Value n, Value t) const;

  Kind kind() const { return kind_; }
  /// Limit of U and V away from the content: 0 for N-soliton, 1 otherwise.
  Value boundary() const;
  /// Box capacity L of the bilinear equation the evaluator solves.
  Value box_capacity() const { return L_; }
  const SolitonSet& solitons() const { return solitons_; }
  const std::optional<BackgroundConstants>& background_constants() const { return background_; }

  /// Rows of U for this t lie inside [-r, r] (background everywhere outside).
  Value content_radius(Value t) const;

  /// Replace rho at one site by rho + delta. For perturbation probes.
  TauEvaluator perturbed(Value n, Value t, Value delta) const;

 private:
  struct Memo {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, Value> values;
  };

  Value evaluate(Value n, Value t) const;

  Kind kind_ = Kind::nsoliton;
  SolitonSet solitons_;
  std::optional<BackgroundConstants> background_;
  Value L_ = 3;
  bool affine_ = false;
  Value alpha_ = 0, beta_ = 0, gamma_ = 0;
  std::optional<std::pair<std::pair<Value, Value>, Value>> bump_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// U_n^t = rho_n^t - rho_n^{t-1} - rho_{n+1}^t + rho_{n+1}^{t-1}.
Value u_from_tau(const TauEvaluator& tau, Value n, Value t);
/// V_n^t = rho_n^{t+1} - 2 rho_n^t + rho_n^{t-1}, the carrier load entering site n at time t.
Value v_from_tau(const TauEvaluator& tau, Value n, Value t);

/// |LHS - RHS| of rho_{n+1}^{t+1} + rho_n^{t-1} = max[rho_{n+1}^{t-1} + rho_n^{t+1} - L, rho_n^t + rho_{n+1}^t].
Value bilinear_residual(const TauEvaluator& tau, Value n, Value t, Value L);

/// The row U^t_. as a canonical state with the evaluator's boundary value.
LatticeState tau_row(const TauEvaluator& tau, Value t);

/// Rows t_lo..t_hi of U restricted to n in [n_lo, n_hi].
SpacetimePattern synthesize(const TauEvaluator& tau, Value n_lo, Value n_hi, Value t_lo, Value t_hi);

// ---------------------------------------------------------------------------
// Tent-function closed form of U_F

/// Exact x / 2 for integer `twice`.
class Half {
 public:
  constexpr Half() = default;
  static constexpr Half from_int(Value v) { return Half(2 * v); }
  static constexpr Half from_twice(Value twice) { return Half(twice); }

  constexpr Value twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr Value as_int() const { return twice_ / 2; }  // meaningful when is_integer()

  constexpr Half operator+(Half o) const { return Half(twice_ + o.twice_); }
  constexpr bool operator==(const Half&) const = default;

 private:
  constexpr explicit Half(Value twice) : twice_(twice) {}
  Value twice_ = 0;
};

std::string to_string(Half h);

Half tent1(Half x);
Half tent2(Half x);
/// t_{2k+1}(x) = sum_{i=0}^{2k} t_1(x + i), t_{2k}(x) = sum_{i=0}^{k-1} t_2(x + 2i), t_0 = 0.
Half tent(Value k, Half x);

/// U_F(x) = U_F^(-) + U_F^(0) + U_F^(+) in profile coordinates (shift ignored).
Half background_cell_closed(const BackgroundConstants& c, Half x);

// ---------------------------------------------------------------------------

/// Position displacement d_last - d_first of the background, where row t of the
/// pattern matches \tilde F(n - t - d) around its zeros. Equals -2m after m
/// solitons have passed through.
Value measure_background_shift(const SpacetimePattern& pattern, const BackgroundSpec& spec, Value solitons);

// ---------------------------------------------------------------------------
// Solution spec files
//
//   # solution v1
//   kind: combined            (optional: combined | background | nsoliton)
//   shift: <int>
//   s: <int>
//   b: <ints>
//   delta: <ints>
//   P: <ints>
//   C: <ints>
//   L: <int>                  (nsoliton only, default 1)

struct SolutionSpec {
  TauEvaluator::Kind kind = TauEvaluator::Kind::combined;
  BackgroundSpec background;
  SolitonSet solitons;
  Value L = 1;

  TauEvaluator evaluator() const;
};

SolutionSpec read_solution(std::string_view text);
std::string write_solution(const SolutionSpec& spec);

}  // namespace udkdv
