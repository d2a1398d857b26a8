#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qbc {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace qbc

/// Closed-form rate, probability and binding expressions of the
/// BB84-embedded bit commitment scheme. All logarithms are base 2.
namespace qbc::math {

/// Error-correction efficiency f(Q_tol) used when none is given.
inline constexpr double kDefaultEcEfficiency = 1.2;

struct RateParams {
  std::uint64_t n_quarter = 100;  ///< N; a frame holds 4N signals
  double q_tol = 0.0;
  double leak_ec = 0.0;  ///< bits disclosed by error correction
  double eps_sec = 1e-9;
  double eps_cor = 1e-9;
  double f_ec = kDefaultEcEfficiency;

  /// Throws DomainError when a field violates its range.
  void validate() const;
};

enum class BindingVariant {
  literal,    ///< exponent (dN - floor(EN))^2 / (1 - N), as printed
  hoeffding,  ///< exponent -2 (dN - floor(EN))^2 / N
};

struct BindingParams {
  double p_commit = 0.0;
  std::uint64_t n_tol = 2;
  double e_tol = 0.0;
  std::uint64_t delta_grid = 10000;
  BindingVariant variant = BindingVariant::literal;

  void validate() const;
};

const char* to_string(BindingVariant v);

double binary_entropy(double q);

/// log2 C(n, k) via log-gamma; never forms the integer.
double log2_binom(std::int64_t n, std::int64_t k);

/// log2(sum 2^t) over terms, stable against overflow. Empty input gives -inf.
double log2_sum_exp2(const std::vector<double>& terms);

/// Exact C(n, k).
BigInt exact_binom(std::uint64_t n, std::uint64_t k);

/// log2 of a non-negative big integer (-inf for zero).
double log2(const BigInt& value);

/// floor(e_tol * n_tol), robust to decimal fractions that are not exact in binary.
std::uint64_t tolerated_errors(double e_tol, std::uint64_t n_tol);

/// Secret key rate bound; may be negative.
double key_rate_bound(const RateParams& params);

/// Error-correction leakage f * 4N * h(Q_tol).
double default_leak_ec(std::uint64_t n_quarter, double q_tol, double f_ec = kDefaultEcEfficiency);

struct DiscardLength {
  double exact;   ///< R * h(Q / (1 - h(Q))), R = 4N (1 - h(Q))
  double approx;  ///< 4N h(Q) (1 - h(Q))
};

/// Key length discarded in privacy amplification.
DiscardLength pa_discard(const RateParams& params);

/// (1 - h(q))^2 - f h(q). Defined on [0, 0.5).
double final_key_rate(double q_tol, double f_ec = kDefaultEcEfficiency);

/// The same rate written as 1 - h - f h - h (1 - h); used as a cross-check.
double final_key_rate_expanded(double q_tol, double f_ec = kDefaultEcEfficiency);

struct Feasibility {
  double required_rate;
  bool feasible;
};

/// Whether a standalone BB84 link can fund the one-time pad for all 2N
/// same-basis outcomes of every frame, i.e. whether r >= 1.
Feasibility standalone_feasibility(double q_tol);

/// x * C(4N, 2N) / 2^(6N), evaluated in log domain. Throws DomainError when
/// x exceeds C(2N, N).
double commit_probability(std::uint64_t n_quarter, const BigInt& x);

/// r - p + p log2(p) / (2N), with r = final_key_rate(q_tol).
double redundant_key_rate(double q_tol, double p, std::uint64_t n_quarter);

/// Upper bound on the binding parameter eps_b. The infimum over delta is
/// taken on delta_grid points strictly inside (e_tol, 1/2). Clamped to >= 0.
double binding_bound(const BindingParams& params);

}  // namespace qbc::math
