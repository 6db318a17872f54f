/**
 * @file hermite.hpp
 * @brief Normalized Hermite functions, their |tau|-scaled variants and
 *        Gauss-Hermite quadrature.
 *
 * psi_m(x) = (2^m m! sqrt(pi))^{-1/2} H_m(x) e^{-x^2/2} is evaluated by the
 * normalized three-term recurrence. The recurrence runs on the polynomial
 * part only and tracks a binary exponent, so the Gaussian factor is applied
 * once per entry; entries whose magnitude is below the smallest double flush
 * to exactly zero.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heisenberg {

inline constexpr double kPiQuarterInv = 0.75112554446494248286;  // pi^{-1/4}

/// Values psi_0(point) .. psi_max_degree(point).
struct HermiteEval {
  double point = 0.0;
  int max_degree = 0;
  std::vector<double> values;
};

struct ScaledHermiteParams {
  double tau = 1.0;
  int degree = 0;
};

namespace detail {

// Runs the normalized recurrence on p_m(x) = psi_m(x) e^{x^2/2} and returns
// p_m(x) * exp(log_weight). Intermediate values are rescaled whenever they
// grow past 2^500 so that the recurrence never overflows.
inline std::vector<double> hermite_recurrence(double x, int max_degree,
                                              double log_weight) {
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1, 0.0);
  std::vector<double> log_scale(out.size(), 0.0);
  constexpr double kBig = 0x1p500;
  constexpr double kLogBig = 500.0 * std::numbers::ln2;

  double prev = 0.0;
  double cur = kPiQuarterInv;
  double shift = 0.0;  // cur_true = cur * e^{shift}
  out[0] = cur;
  for (int m = 0; m < max_degree; ++m) {
    const double next = x * std::sqrt(2.0 / (m + 1)) * cur -
                        std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      shift += kLogBig;
    }
    out[m + 1] = cur;
    log_scale[m + 1] = shift;
  }
  for (std::size_t m = 0; m < out.size(); ++m) {
    if (out[m] == 0.0) continue;
    const double log_mag = std::log(std::abs(out[m])) + log_scale[m] + log_weight;
    out[m] = std::copysign(std::exp(log_mag), out[m]);
  }
  return out;
}

}  // namespace detail

/// psi_0(x) .. psi_M(x) by the normalized recurrence
/// psi_{m+1} = x sqrt(2/(m+1)) psi_m - sqrt(m/(m+1)) psi_{m-1}.
inline HermiteEval eval_hermite_batch(double x, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("eval_hermite_batch: max_degree < 0");
  return {x, max_degree, detail::hermite_recurrence(x, max_degree, -0.5 * x * x)};
}

/// Orthonormal Hermite polynomials p_m(x) = psi_m(x) e^{x^2/2}, orthonormal
/// under the weight e^{-x^2}. Used to build Gauss-Hermite integrands.
inline std::vector<double> eval_hermite_polynomial_batch(double x, int max_degree) {
  if (max_degree < 0) {
    throw std::invalid_argument("eval_hermite_polynomial_batch: max_degree < 0");
  }
  return detail::hermite_recurrence(x, max_degree, 0.0);
}

inline double eval_hermite(int degree, double x) {
  return eval_hermite_batch(x, degree).values.back();
}

/// Psi^tau_m(beta) = |tau|^{-1/4} psi_m(beta / sqrt|tau|).
inline double eval_scaled_hermite(const ScaledHermiteParams& params, double beta) {
  if (params.tau == 0.0 || !std::isfinite(params.tau)) {
    throw std::invalid_argument("eval_scaled_hermite: tau must be finite and nonzero");
  }
  if (params.degree < 0) throw std::invalid_argument("eval_scaled_hermite: degree < 0");
  const double abs_tau = std::abs(params.tau);
  return std::pow(abs_tau, -0.25) * eval_hermite(params.degree, beta / std::sqrt(abs_tau));
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kMaxGaussHermiteOrder = 200;

namespace detail {

// Orthonormal Hermite polynomials p_n(z) and p_{n-1}(z) (weight e^{-z^2}).
inline std::pair<double, double> orthonormal_hermite_pair(int n, double z) {
  double p1 = kPiQuarterInv;
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
  }
  return {p1, p2};
}

// Number of eigenvalues below x of the Hermite Jacobi matrix (zero diagonal,
// off-diagonal sqrt(k/2)), by the Sturm sequence of its LDL^T pivots.
inline int jacobi_count_below(int n, double x) {
  int count = 0;
  double d = -x;
  for (int k = 0;; ++k) {
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
    if (k + 1 == n) break;
    d = -x - 0.5 * (k + 1) / d;
  }
  return count;
}

}  // namespace detail

/// Gauss-Hermite rule for the weight e^{-x^2}. Each root of the degree-`order`
/// orthonormal Hermite polynomial is bracketed by Sturm bisection on the Jacobi
/// matrix and then polished by Newton. Nodes are returned in ascending order.
inline QuadratureRule gauss_hermite_nodes(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite_nodes: order < 1");
  if (order > kMaxGaussHermiteOrder) {
    throw std::domain_error("gauss_hermite_nodes: order above supported maximum 200");
  }
  const int n = order;
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  // All roots lie inside |x| < sqrt(2n + 1).
  const double bound = std::sqrt(2.0 * n + 1.0) + 1.0;

  for (int k = n / 2; k < n; ++k) {  // roots k = n/2 .. n-1 are >= 0
    double lo = (n % 2 == 1 && k == n / 2) ? -0.5 : 0.0, hi = bound;
    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      (detail::jacobi_count_below(n, mid) > k ? hi : lo) = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int iter = 0; iter < 8; ++iter) {
      const auto [p, q] = detail::orthonormal_hermite_pair(n, z);
      const double step = p / (std::sqrt(2.0 * n) * q);
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    if (n % 2 == 1 && k == n / 2) z = 0.0;
    const double deriv = std::sqrt(2.0 * n) * detail::orthonormal_hermite_pair(n, z).second;
    rule.nodes[k] = z;
    rule.weights[k] = 2.0 / (deriv * deriv);
    rule.nodes[n - 1 - k] = -z;
    rule.weights[n - 1 - k] = rule.weights[k];
  }
  for (int i = 1; i < n; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) throw std::runtime_error("gauss_hermite_nodes: repeated root");
  }
  return rule;
}

}  // namespace heisenberg
