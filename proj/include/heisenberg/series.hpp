/**
 * @file series.hpp
 * @brief One-dimensional rho_hat rebuilt from its Hermite eigenfunction
 *        expansion (tau > 0 branch).
 *
 * u(s, alpha, beta, tau) = rho_hat * e^{-i alpha beta / tau} solves
 *   du/ds = (1/4)(tau^2 d^2/dbeta^2 - beta^2 - gamma tau) u,
 * and Psi^tau_m are its eigenfunctions, so
 *   u = sum_m a_m(alpha, tau) e^{-(2m+1+gamma) s tau / 4} Psi^tau_m(beta).
 * This path shares nothing with kernels.hpp beyond the Hermite recurrence and
 * serves as the independent check of the closed form.
 */
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heisenberg/hermite.hpp"
#include "heisenberg/kernels.hpp"

namespace heisenberg {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IdentityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesConfig {
  int max_terms = 4000;
  double tail_tol = 1e-17;
};

/// u together with the truncation actually used.
struct UValue {
  complex value;
  int terms = 0;          // number of summed terms (m = 0 .. terms-1)
  double tail_bound = 0;  // bound on the discarded tail, relative to sqrt(2)|e^{-(1+gamma)s tau/4}|
};

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

namespace detail {

inline complex minus_i_pow(int m) {
  switch (m % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

inline void check_series_config(const SeriesConfig& cfg) {
  if (cfg.max_terms < 1) throw std::invalid_argument("SeriesConfig: max_terms must be >= 1");
  if (!(cfg.tail_tol > 0.0)) throw std::invalid_argument("SeriesConfig: tail_tol must be > 0");
}

// Smallest M with S^M / (1 - S) <= tol, capped at max_terms. Returns the
// number of terms and the achieved bound.
inline std::pair<int, double> terms_for(double ratio, const SeriesConfig& cfg) {
  if (ratio >= 1.0) return {cfg.max_terms, std::numeric_limits<double>::infinity()};
  const double log_r = std::log(ratio);
  const double need = (std::log(cfg.tail_tol) + std::log1p(-ratio)) / log_r;
  int m = need <= 1.0 ? 1 : static_cast<int>(std::ceil(need));
  if (m > cfg.max_terms) m = cfg.max_terms;
  return {m, std::exp(m * log_r) / (1.0 - ratio)};
}

}  // namespace detail

/// a_m(alpha, tau) = (-i)^m sqrt(2 pi) tau^{1/4} psi_m(alpha / sqrt tau).
inline complex coefficient_a_m(int m, double alpha, double tau) {
  if (m < 0) throw std::invalid_argument("coefficient_a_m: m < 0");
  if (!(tau > 0.0)) throw std::invalid_argument("coefficient_a_m: requires tau > 0");
  const double psi = eval_hermite(m, alpha / std::sqrt(tau));
  return detail::minus_i_pow(m) * (std::sqrt(2.0 * std::numbers::pi) * std::pow(tau, 0.25) * psi);
}

/// Partial sum of the eigenfunction expansion of u. Stops at the first M whose
/// geometric tail bound S^M/(1-S), S = e^{-s tau/2}, is below tail_tol, or at
/// max_terms. At s = 0 the series only converges distributionally and the
/// call throws ConvergenceError.
inline UValue u_series(const SeriesConfig& cfg, double s, double alpha, double beta, double tau,
                       complex gamma) {
  detail::check_series_config(cfg);
  if (!(tau > 0.0)) throw std::invalid_argument("u_series: requires tau > 0");
  if (!(s >= 0.0)) throw std::invalid_argument("u_series: requires s >= 0");

  const double ratio = std::exp(-0.5 * s * tau);
  const auto [terms, bound] = detail::terms_for(ratio, cfg);
  if (!(bound <= cfg.tail_tol) && s == 0.0) {
    throw ConvergenceError("u_series: tail_tol unreachable at s = 0 (distributional limit)");
  }

  const double root = std::sqrt(tau);
  const auto psi_a = eval_hermite_batch(alpha / root, terms - 1).values;
  const auto psi_b = eval_hermite_batch(beta / root, terms - 1).values;
  // a_m Psi_m(beta) = (-i)^m sqrt(2pi) psi_m(alpha/sqrt tau) psi_m(beta/sqrt tau); the
  // tau^{1/4} factors cancel.
  const complex lead = std::sqrt(2.0 * std::numbers::pi) * std::exp(-(1.0 + gamma) * s * tau / 4.0);
  CompensatedSum sum;
  double decay = 1.0;
  for (int m = 0; m < terms; ++m) {
    sum.add(detail::minus_i_pow(m) * (psi_a[m] * psi_b[m] * decay));
    decay *= ratio;
  }
  return {lead * sum.value(), terms, bound};
}

/// rho_hat(s, alpha, beta, tau) for n = 1 from the series: e^{i alpha beta/tau} u.
inline complex rho_hat_series(const SeriesConfig& cfg, double s, double alpha, double beta,
                              double tau, complex gamma) {
  if (!(s > 0.0)) throw std::invalid_argument("rho_hat_series: requires s > 0");
  const UValue u = u_series(cfg, s, alpha, beta, tau, gamma);
  return std::polar(1.0, alpha * beta / tau) * u.value;
}

/// Closed form of sum_m (-iS)^m psi_m(x) psi_m(y):
/// pi^{-1/2} (1+S^2)^{-1/2} exp(-(1-S^2)(x^2+y^2)/(2(1+S^2))) exp(-i 2S xy/(1+S^2)).
inline complex mehler_closed_form(double S, double x, double y) {
  const double q = 1.0 + S * S;
  const double mod = std::exp(-0.5 * (1.0 - S * S) / q * (x * x + y * y)) /
                     std::sqrt(std::numbers::pi * q);
  return std::polar(mod, -2.0 * S * x * y / q);
}

struct MehlerResult {
  complex series;
  complex closed_form;
  double abs_diff = 0.0;
  int terms = 0;
};

inline constexpr double kMehlerTolerance = 1e-11;

/// Truncated sum_m (-iS)^m psi_m(x) psi_m(y) next to its closed form.
inline MehlerResult mehler_truncated(double S, double x, double y, const SeriesConfig& cfg = {}) {
  detail::check_series_config(cfg);
  if (!(S > 0.0 && S < 1.0)) throw std::invalid_argument("mehler_sum: requires 0 < S < 1");
  const int terms = detail::terms_for(S, cfg).first;
  const auto px = eval_hermite_batch(x, terms - 1).values;
  const auto py = eval_hermite_batch(y, terms - 1).values;
  CompensatedSum sum;
  double power = 1.0;
  for (int m = 0; m < terms; ++m) {
    sum.add(detail::minus_i_pow(m) * (power * px[m] * py[m]));
    power *= S;
  }
  MehlerResult out{sum.value(), mehler_closed_form(S, x, y), 0.0, terms};
  out.abs_diff = std::abs(out.series - out.closed_form);
  return out;
}

/// As mehler_truncated, but throws IdentityViolation when the two sides differ
/// by more than kMehlerTolerance.
inline MehlerResult mehler_sum(double S, double x, double y, const SeriesConfig& cfg = {}) {
  auto out = mehler_truncated(S, x, y, cfg);
  if (!(out.abs_diff <= kMehlerTolerance)) {
    throw IdentityViolation("mehler_sum: truncated sum departs from closed form by " +
                            std::to_string(out.abs_diff));
  }
  return out;
}

/// Weak-form check of u(0, ., alpha, tau) = e^{-i alpha beta/tau}: pairs the
/// first `terms` expansion terms with phi(beta) = e^{-beta^2/(4 tau)} and
/// returns |sum_m a_m <Psi_m, phi> - <e^{-i alpha beta/tau}, phi>|.
inline double u_initial_weak_error(double alpha, double tau, int terms) {
  if (!(tau > 0.0)) throw std::invalid_argument("u_initial_weak_error: requires tau > 0");
  if (terms < 1 || terms > 2 * kMaxGaussHermiteOrder) {
    throw std::invalid_argument("u_initial_weak_error: terms out of range");
  }
  // <Psi_m, phi> = tau^{1/4} int p_m(x) e^{-3x^2/4} dx, p_m = psi_m e^{x^2/2};
  // with x = z / sqrt(3/4) this is a Gauss-Hermite integral of a polynomial.
  constexpr double c = 0.75;
  const auto rule = gauss_hermite_nodes(kMaxGaussHermiteOrder);
  std::vector<double> inner(terms, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const auto p = eval_hermite_polynomial_batch(rule.nodes[i] / std::sqrt(c), terms - 1);
    for (int m = 0; m < terms; ++m) inner[m] += rule.weights[i] * p[m];
  }
  CompensatedSum sum;
  for (int m = 0; m < terms; ++m) {
    sum.add(coefficient_a_m(m, alpha, tau) * (std::pow(tau, 0.25) / std::sqrt(c) * inner[m]));
  }
  // int e^{-i alpha beta/tau} e^{-beta^2/(4 tau)} dbeta = sqrt(4 pi tau) e^{-alpha^2/tau}
  const double exact = std::sqrt(4.0 * std::numbers::pi * tau) * std::exp(-alpha * alpha / tau);
  return std::abs(sum.value() - exact);
}

}  // namespace heisenberg
