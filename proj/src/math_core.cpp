#include "qbc/math_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qbc/errors.hpp"

namespace qbc::math {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_q_tol(double q_tol) {
  require(q_tol >= 0.0 && q_tol < 0.5, "q_tol must lie in [0, 0.5), got " + std::to_string(q_tol));
}

}  // namespace

void RateParams::validate() const {
  require(n_quarter >= 1, "n_quarter must be >= 1");
  require_q_tol(q_tol);
  require(leak_ec >= 0.0 && std::isfinite(leak_ec), "leak_ec must be a finite non-negative number");
  require(eps_sec > 0.0 && eps_sec < 1.0, "eps_sec must lie in (0, 1)");
  require(eps_cor > 0.0 && eps_cor < 1.0, "eps_cor must lie in (0, 1)");
  require(f_ec >= 1.0 && std::isfinite(f_ec), "f_ec must be >= 1");
}

void BindingParams::validate() const {
  require(p_commit >= 0.0 && p_commit <= 1.0, "p_commit must lie in [0, 1]");
  require(n_tol >= 1, "n_tol must be >= 1");
  require(n_tol != 1, "n_tol = 1 divides by zero in the binding exponent");
  require(e_tol >= 0.0 && e_tol < 0.5, "e_tol must lie in [0, 0.5)");
  require(delta_grid >= 2, "delta_grid must be >= 2");
}

const char* to_string(BindingVariant v) {
  return v == BindingVariant::literal ? "literal" : "hoeffding";
}

double binary_entropy(double q) {
  require(q >= 0.0 && q <= 1.0, "binary entropy argument must lie in [0, 1], got " + std::to_string(q));
  auto term = [](double t) { return t > 0.0 ? -t * std::log2(t) : 0.0; };
  return term(q) + term(1.0 - q);
}

double log2_binom(std::int64_t n, std::int64_t k) {
  require(n >= 0, "log2_binom: n must be non-negative");
  require(k >= 0 && k <= n, "log2_binom: k must lie in [0, n]");
  if (k == 0 || k == n) return 0.0;
  const auto lg = [](std::int64_t v) { return std::lgamma(static_cast<double>(v) + 1.0); };
  return (lg(n) - lg(k) - lg(n - k)) / std::numbers::ln2;
}

double log2_sum_exp2(const std::vector<double>& terms) {
  if (terms.empty()) return kNegInf;
  const double top = *std::max_element(terms.begin(), terms.end());
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

BigInt exact_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  // Each partial product is C(n-k+i, i), so the division is exact.
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double log2(const BigInt& value) {
  if (value < 0) throw DomainError("log2 of a negative integer");
  if (value == 0) return kNegInf;
  const auto top = boost::multiprecision::msb(value);
  if (top < 1000) return std::log2(value.convert_to<double>());
  // Leading 61 bits are plenty for a double mantissa.
  double head = 0.0;
  for (auto i = top; i + 61 > top; --i) head = 2.0 * head + (boost::multiprecision::bit_test(value, i) ? 1.0 : 0.0);
  return std::log2(head) + static_cast<double>(top - 60);
}

std::uint64_t tolerated_errors(double e_tol, std::uint64_t n_tol) {
  return static_cast<std::uint64_t>(std::floor(e_tol * static_cast<double>(n_tol) + 1e-9));
}

double default_leak_ec(std::uint64_t n_quarter, double q_tol, double f_ec) {
  return 4.0 * static_cast<double>(n_quarter) * f_ec * binary_entropy(q_tol);
}

double key_rate_bound(const RateParams& params) {
  params.validate();
  const double frame = 4.0 * static_cast<double>(params.n_quarter);
  const double finite_size =
      (1.0 - 2.0 * std::log2(params.eps_sec) - std::log2(params.eps_cor)) / frame;
  return 1.0 - binary_entropy(params.q_tol) - params.leak_ec / frame - finite_size;
}

DiscardLength pa_discard(const RateParams& params) {
  params.validate();
  const double hq = binary_entropy(params.q_tol);
  const double frame = 4.0 * static_cast<double>(params.n_quarter);
  require(hq < 1.0, "pa_discard: h(q_tol) must be < 1");
  const double inner = params.q_tol / (1.0 - hq);
  require(inner <= 1.0, "pa_discard: q_tol / (1 - h(q_tol)) = " + std::to_string(inner) + " leaves [0, 1]");
  const double raw_length = frame * (1.0 - hq);
  return {raw_length * binary_entropy(inner), frame * hq * (1.0 - hq)};
}

double final_key_rate(double q_tol, double f_ec) {
  require_q_tol(q_tol);
  const double h = binary_entropy(q_tol);
  return (1.0 - h) * (1.0 - h) - f_ec * h;
}

double final_key_rate_expanded(double q_tol, double f_ec) {
  require_q_tol(q_tol);
  const double h = binary_entropy(q_tol);
  return 1.0 - h - f_ec * h - h * (1.0 - h);
}

Feasibility standalone_feasibility(double q_tol) {
  // (1/2) * 4N * r >= 2N  <=>  r >= 1, independent of N.
  constexpr double required = 1.0;
  return {required, final_key_rate(q_tol) >= required};
}

double commit_probability(std::uint64_t n_quarter, const BigInt& x) {
  require(n_quarter >= 1, "commit_probability: n_quarter must be >= 1");
  require(x >= 0, "commit_probability: x must be non-negative");
  if (x > exact_binom(2 * n_quarter, n_quarter)) {
    throw DomainError("commit_probability: x exceeds C(2N, N)");
  }
  if (x == 0) return 0.0;
  const auto n = static_cast<std::int64_t>(n_quarter);
  return std::exp2(log2(x) + log2_binom(4 * n, 2 * n) - 6.0 * static_cast<double>(n));
}

double redundant_key_rate(double q_tol, double p, std::uint64_t n_quarter) {
  require(p >= 0.0 && p <= 1.0, "redundant_key_rate: p must lie in [0, 1]");
  require(n_quarter >= 1, "redundant_key_rate: n_quarter must be >= 1");
  const double r = final_key_rate(q_tol);
  if (p == 0.0) return r;
  return r - p + p * std::log2(p) / (2.0 * static_cast<double>(n_quarter));
}

double binding_bound(const BindingParams& params) {
  params.validate();
  if (params.p_commit == 0.0) return 0.0;

  const double n = static_cast<double>(params.n_tol);
  const std::uint64_t tolerated = tolerated_errors(params.e_tol, params.n_tol);
  const double floor_term = static_cast<double>(tolerated);

  // log2 of 1 + sum_{k=1}^{floor(E N)} (2^k - 1) C(N, k)
  std::vector<double> terms{0.0};
  terms.reserve(tolerated + 1);
  for (std::uint64_t k = 1; k <= tolerated; ++k) {
    const double kd = static_cast<double>(k);
    const double log2_mersenne = kd + std::log1p(-std::exp2(-kd)) / std::numbers::ln2;
    terms.push_back(log2_mersenne + log2_binom(static_cast<std::int64_t>(params.n_tol),
                                               static_cast<std::int64_t>(k)));
  }
  const double log2_count = log2_sum_exp2(terms);

  const double lo = params.e_tol;
  const double width = 0.5 - lo;
  require(width > 0.0, "binding_bound: empty delta interval");
  const double grid = static_cast<double>(params.delta_grid);

  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < params.delta_grid; ++i) {
    const double delta = lo + width * (static_cast<double>(i) + 0.5) / grid;
    const double gap = delta * n - floor_term;
    const double exponent = params.variant == BindingVariant::literal
                                ? gap * gap / (1.0 - n)
                                : -2.0 * gap * gap / n;
    const double e = std::exp(exponent);
    const double value =
        -std::expm1(exponent) * std::exp2(1.0 - (1.0 - binary_entropy(delta)) * n) + 2.0 * e;
    best = std::min(best, value);
  }
  if (!(best > 0.0)) return 0.0;

  const double p = params.p_commit;
  const double log2_lead = std::log2(p) + binary_entropy(p);
  return std::max(0.0, std::exp2(log2_lead + std::log2(best) + log2_count));
}

}  // namespace qbc::math
