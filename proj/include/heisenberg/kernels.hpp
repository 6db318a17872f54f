/**
 * @file kernels.hpp
 * @brief Closed-form heat kernels of L_gamma on the Heisenberg group.
 *
 *  - rho_hat:        full spatial Fourier transform of the fundamental solution
 *  - rho_tilde:      partial (t-only) transform, the weighted dbar fundamental solution
 *  - heat_kernel_h:  the twisted kernel H acting on functions of (x, y)
 *
 * All kernels are assembled in log space and exponentiated once. The apparent
 * division by tau is a removable singularity; below |s tau| < kSeriesSwitch
 * the coefficients are evaluated from their Taylor series.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace heisenberg {

using complex = std::complex<double>;

inline constexpr double kSeriesSwitch = 1e-4;

/// Parameter tuple (s, tau, gamma, n) shared by every kernel.
struct KernelParams {
  double s = 0.0;
  double tau = 0.0;
  complex gamma{0.0, 0.0};
  int n = 1;

  /// gamma = n - 2q, the value at which L_gamma is Box_b on (0,q)-forms.
  static KernelParams boxb(double s, double tau, int n, int q) {
    if (q < 0 || q > n) throw std::invalid_argument("KernelParams::boxb: need 0 <= q <= n");
    return {s, tau, complex(n - 2.0 * q, 0.0), n};
  }
};

struct CoefficientsAB {
  double a_coef = 0.0;
  double b_coef = 0.0;
};

namespace detail {

inline void check_params(const KernelParams& p, const char* where) {
  if (p.n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
  if (!(p.s >= 0.0) || !std::isfinite(p.s)) {
    throw std::invalid_argument(std::string(where) + ": s must be finite and >= 0");
  }
  if (!std::isfinite(p.tau)) throw std::invalid_argument(std::string(where) + ": tau not finite");
}

inline void check_length(std::span<const double> v, int n, const char* where) {
  if (v.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(std::string(where) + ": vector length differs from n");
  }
}

/// log cosh(z), stable for all real z.
inline double log_cosh(double z) {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// log(sinh(v)/v), v real; equals 0 at v = 0.
inline double log_sinhc(double v) {
  const double a = std::abs(v);
  if (a < 1e-4) return a * a / 6.0 - a * a * a * a / 180.0;
  if (a < 20.0) return std::log(std::sinh(a) / a);
  return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2 - std::log(a);
}

/// v coth(v), equal to 1 at v = 0.
inline double v_coth_v(double v) {
  const double a = std::abs(v);
  if (a < 1e-4) {
    const double a2 = a * a;
    return 1.0 + a2 / 3.0 - a2 * a2 / 45.0 + 2.0 * a2 * a2 * a2 / 945.0;
  }
  return a / std::tanh(a);
}

inline CoefficientsAB coefficients_ab_direct(double s, double tau) {
  const double z = s * tau;
  const double a = std::tanh(0.5 * z) / tau;
  // 2 sinh^2(z/4) / cosh(z/2) = 1 - sech(z/2); the sinh form avoids cancellation
  // at moderate z, the sech form avoids overflow at large z.
  const double ratio = std::abs(z) < 100.0
                           ? 2.0 * std::pow(std::sinh(0.25 * z), 2) / std::cosh(0.5 * z)
                           : 1.0 - 1.0 / std::cosh(0.5 * z);
  return {a, ratio / tau};
}

// Taylor series in w = s tau / 2, truncated at w^6 relative.
inline CoefficientsAB coefficients_ab_series(double s, double tau) {
  const double w = 0.5 * s * tau;
  const double w2 = w * w;
  // tanh(w)/w = 1 - w^2/3 + 2w^4/15 - 17w^6/315
  const double tanhc = 1.0 - w2 / 3.0 + 2.0 * w2 * w2 / 15.0 - 17.0 * w2 * w2 * w2 / 315.0;
  // (1 - sech w)/(2w) = w/4 - 5w^3/48 + 61w^5/1440 - 277w^7/16128
  const double b_over_s =
      w * (0.25 - 5.0 * w2 / 48.0 + 61.0 * w2 * w2 / 1440.0 - 277.0 * w2 * w2 * w2 / 16128.0);
  return {0.5 * s * tanhc, s * b_over_s};
}

}  // namespace detail

/// A = sinh(s tau/2)/(tau cosh(s tau/2)), B = 2 sinh^2(s tau/4)/(tau cosh(s tau/2)).
inline CoefficientsAB coefficients_ab(double s, double tau) {
  if (!(s >= 0.0)) throw std::invalid_argument("coefficients_ab: s must be >= 0");
  if (std::abs(s * tau) < kSeriesSwitch) return detail::coefficients_ab_series(s, tau);
  return detail::coefficients_ab_direct(s, tau);
}

/// A^2 + B^2 = 4 sinh^2(s tau/4) / (tau^2 cosh(s tau/2)), written as
/// (s/2)^2 (sinh v / v)^2 / cosh(2v) with v = s tau/4; no removable singularity.
inline double a2_plus_b2(double s, double tau) {
  const double v = 0.25 * s * tau;
  return 0.25 * s * s * std::exp(2.0 * detail::log_sinhc(v) - detail::log_cosh(2.0 * v));
}

/// Fourier transform of the fundamental solution in (x, y, t):
/// e^{-gamma s tau/4} cosh(s tau/2)^{-n/2} exp(-A(|alpha|^2+|beta|^2)/2 + i B alpha.beta).
inline complex rho_hat(const KernelParams& p, std::span<const double> alpha,
                       std::span<const double> beta) {
  detail::check_params(p, "rho_hat");
  detail::check_length(alpha, p.n, "rho_hat");
  detail::check_length(beta, p.n, "rho_hat");
  if (p.s == 0.0) return {1.0, 0.0};

  const auto [a, b] = coefficients_ab(p.s, p.tau);
  double norm2 = 0.0;
  double dot = 0.0;
  for (int j = 0; j < p.n; ++j) {
    norm2 += alpha[j] * alpha[j] + beta[j] * beta[j];
    dot += alpha[j] * beta[j];
  }
  const complex exponent = -p.gamma * (p.s * p.tau / 4.0) -
                           0.5 * p.n * detail::log_cosh(0.5 * p.s * p.tau) - 0.5 * a * norm2 +
                           complex(0.0, b * dot);
  return std::exp(exponent);
}

/// Product over coordinates of the one-dimensional kernel with gamma/n.
inline complex rho_hat_product(const KernelParams& p, std::span<const double> alpha,
                               std::span<const double> beta) {
  detail::check_params(p, "rho_hat_product");
  detail::check_length(alpha, p.n, "rho_hat_product");
  detail::check_length(beta, p.n, "rho_hat_product");
  const KernelParams one{p.s, p.tau, p.gamma / static_cast<double>(p.n), 1};
  complex out{1.0, 0.0};
  for (int j = 0; j < p.n; ++j) {
    out *= rho_hat(one, alpha.subspan(j, 1), beta.subspan(j, 1));
  }
  return out;
}

/// Fundamental solution of the weighted dbar heat equation (d/ds + L~_gamma).
inline complex rho_tilde(const KernelParams& p, std::span<const double> x,
                         std::span<const double> y) {
  detail::check_params(p, "rho_tilde");
  detail::check_length(x, p.n, "rho_tilde");
  detail::check_length(y, p.n, "rho_tilde");
  if (!(p.s > 0.0)) throw std::invalid_argument("rho_tilde: s must be > 0");

  const auto [a, b] = coefficients_ab(p.s, p.tau);
  const double sum_sq = a2_plus_b2(p.s, p.tau);
  double norm2 = 0.0;
  double dot = 0.0;
  for (int j = 0; j < p.n; ++j) {
    norm2 += x[j] * x[j] + y[j] * y[j];
    dot += x[j] * y[j];
  }
  const double n = p.n;
  const complex exponent = -p.gamma * (p.s * p.tau / 4.0) -
                           n * std::log(2.0 * std::numbers::pi) -
                           0.5 * n * detail::log_cosh(0.5 * p.s * p.tau) -
                           0.5 * n * std::log(sum_sq) - a * norm2 / (2.0 * sum_sq) +
                           complex(0.0, -b * dot / sum_sq);
  return std::exp(exponent);
}

/// Heat kernel H(s, x', y', x, y). (x', y') is the source point integrated
/// against f, (x, y) the point where the solution is evaluated:
/// tau^n e^{-gamma s tau/4} / ((4pi)^n sinh^n(s tau/4))
///   * exp(-(tau/4) coth(s tau/4)(|x-x'|^2+|y-y'|^2) - i(tau/2)(x-x').(y+y')).
inline complex heat_kernel_h(const KernelParams& p, std::span<const double> xp,
                             std::span<const double> yp, std::span<const double> x,
                             std::span<const double> y) {
  detail::check_params(p, "heat_kernel_h");
  detail::check_length(xp, p.n, "heat_kernel_h");
  detail::check_length(yp, p.n, "heat_kernel_h");
  detail::check_length(x, p.n, "heat_kernel_h");
  detail::check_length(y, p.n, "heat_kernel_h");
  if (!(p.s > 0.0)) throw std::invalid_argument("heat_kernel_h: s must be > 0");

  double dist2 = 0.0;
  double twist = 0.0;
  for (int j = 0; j < p.n; ++j) {
    const double dx = x[j] - xp[j];
    const double dy = y[j] - yp[j];
    dist2 += dx * dx + dy * dy;
    twist += dx * (y[j] + yp[j]);
  }
  // tau / sinh(s tau/4) = (4/s) / sinhc(v); (tau/4) coth(s tau/4) = v coth(v) / s.
  const double v = 0.25 * p.s * p.tau;
  const double n = p.n;
  const double log_amp = n * (std::log(4.0 / p.s) - detail::log_sinhc(v)) -
                         n * std::log(4.0 * std::numbers::pi);
  const double decay = detail::v_coth_v(v) / p.s;
  const complex exponent = -p.gamma * (p.s * p.tau / 4.0) + log_amp - decay * dist2 +
                           complex(0.0, -0.5 * p.tau * twist);
  return std::exp(exponent);
}

struct SimplificationRatios {
  double ratio_b = 0.0;   // B / (A^2 + B^2)
  double ratio_ab = 0.0;  // A / B
};

/// Evaluates B/(A^2+B^2) and A/B from the coefficient definitions; these
/// equal tau/2 and coth(s tau/4).
inline SimplificationRatios simplification_identities(double s, double tau) {
  if (!(s > 0.0) || tau == 0.0) {
    throw std::invalid_argument("simplification_identities: need s > 0 and tau != 0");
  }
  const auto [a, b] = coefficients_ab(s, tau);
  return {b / (a * a + b * b), a / b};
}

}  // namespace heisenberg
