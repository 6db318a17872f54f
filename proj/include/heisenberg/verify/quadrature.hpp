/**
 * @file quadrature.hpp
 * @brief Quadrature oracles: semigroup composition and initial condition of H,
 *        Hermite orthonormality, and the a_m Fourier-coefficient identity.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "heisenberg/hermite.hpp"
#include "heisenberg/kernels.hpp"
#include "heisenberg/series.hpp"

namespace heisenberg::verify {

inline constexpr int kGaussLegendrePoints = 20;

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
inline QuadratureRule composite_gauss_legendre(double a, double b, int panels) {
  using Rule = boost::math::quadrature::gauss<double, kGaussLegendrePoints>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  QuadratureRule out;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      // Boost stores the non-negative half of the symmetric rule.
      out.nodes.push_back(mid - half * abscissa[i]);
      out.weights.push_back(half * weights[i]);
      if (abscissa[i] != 0.0) {
        out.nodes.push_back(mid + half * abscissa[i]);
        out.weights.push_back(half * weights[i]);
      }
    }
  }
  return out;
}

namespace detail {

/// Gaussian decay rate of |H(s, .)|: (tau/4) coth(s tau/4) = v coth(v) / s.
inline double heat_decay_rate(double s, double tau) {
  const double v = 0.25 * s * tau;
  const double a = std::abs(v);
  return (a < 1e-8 ? 1.0 : a / std::tanh(a)) / s;
}

// The box half-width at which the H envelope e^{-c r^2} falls below e^{-33} ~ 5e-15.
inline double envelope_radius(double rate) { return std::sqrt(33.0 / rate); }

// Two-dimensional tensor rule over [x0, x1] x [y0, y1] with panels sized to
// `width` (roughly 1.5 standard deviations of the narrowest Gaussian).
template <typename Fn>
complex integrate_box(double x0, double x1, double y0, double y1, double width, int refine, Fn&& f) {
  const int px = std::max(2, static_cast<int>(std::ceil((x1 - x0) / width))) * refine;
  const int py = std::max(2, static_cast<int>(std::ceil((y1 - y0) / width))) * refine;
  const auto rx = composite_gauss_legendre(x0, x1, px);
  const auto ry = composite_gauss_legendre(y0, y1, py);
  CompensatedSum sum;
  for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
    complex row{0.0, 0.0};
    for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
      row += ry.weights[j] * f(rx.nodes[i], ry.nodes[j]);
    }
    sum.add(rx.weights[i] * row);
  }
  return sum.value();
}

// Integrates at two refinements and signals disagreement.
template <typename Fn>
complex integrate_checked(double x0, double x1, double y0, double y1, double width, Fn&& f,
                          const char* where) {
  const complex coarse = integrate_box(x0, x1, y0, y1, width, 1, f);
  const complex fine = integrate_box(x0, x1, y0, y1, width, 2, f);
  if (std::abs(fine - coarse) > 1e-10 * std::max(1.0, std::abs(fine))) {
    throw ConvergenceError(std::string(where) + ": quadrature did not converge");
  }
  return fine;
}

}  // namespace detail

struct PointPair {
  double x = 0, y = 0;    // evaluation point (x, y)
  double xp = 0, yp = 0;  // source point (x', y')
};

struct SemigroupResult {
  complex composed;  // int H(s1; (x,y) <- (w,v)) H(s2; (w,v) <- (x',y')) dw dv
  complex direct;    // H(s1 + s2; (x,y) <- (x',y'))
  double rel_error = 0.0;
};

/// Compares the composition of H at times s1 and s2 with H at s1 + s2 (n = 1).
inline SemigroupResult semigroup_check(const KernelParams& first, const KernelParams& second,
                                       const PointPair& pts) {
  if (first.tau != second.tau || first.gamma != second.gamma || first.n != second.n) {
    throw std::invalid_argument("semigroup_check: tau, gamma and n must agree");
  }
  if (first.n != 1) throw std::invalid_argument("semigroup_check: n = 1 only");
  if (!(first.s > 0.0 && second.s > 0.0)) throw std::invalid_argument("semigroup_check: s must be > 0");

  const double rate = std::min(detail::heat_decay_rate(first.s, first.tau),
                               detail::heat_decay_rate(second.s, second.tau));
  const double r = detail::envelope_radius(rate);
  const double width = 1.5 / std::sqrt(2.0 * std::max(detail::heat_decay_rate(first.s, first.tau),
                                                      detail::heat_decay_rate(second.s, second.tau)));
  const double x[1] = {pts.x}, y[1] = {pts.y}, xp[1] = {pts.xp}, yp[1] = {pts.yp};
  const auto integrand = [&](double w, double v) {
    const double wa[1] = {w}, va[1] = {v};
    return heat_kernel_h(first, wa, va, x, y) * heat_kernel_h(second, xp, yp, wa, va);
  };
  SemigroupResult out;
  out.composed = detail::integrate_checked(std::min(pts.x, pts.xp) - r, std::max(pts.x, pts.xp) + r,
                                           std::min(pts.y, pts.yp) - r, std::max(pts.y, pts.yp) + r,
                                           width, integrand, "semigroup_check");
  KernelParams total = first;
  total.s = first.s + second.s;
  out.direct = heat_kernel_h(total, xp, yp, x, y);
  out.rel_error = std::abs(out.composed - out.direct) / std::abs(out.direct);
  return out;
}

/// f(x, y) = exp(-a (x - cx)^2 - b (y - cy)^2).
struct GaussianSpec {
  double a = 1.0, b = 1.0, cx = 0.0, cy = 0.0;
  double operator()(double x, double y) const {
    return std::exp(-a * (x - cx) * (x - cx) - b * (y - cy) * (y - cy));
  }
};

/// H[f](s, x, y) = int H(s; (x,y) <- (x',y')) f(x', y') dx' dy' by quadrature (n = 1).
inline complex apply_heat_kernel(const KernelParams& params, const GaussianSpec& f, double x, double y) {
  if (params.n != 1) throw std::invalid_argument("apply_heat_kernel: n = 1 only");
  const double rate = detail::heat_decay_rate(params.s, params.tau);
  const double r = detail::envelope_radius(rate);
  const double width = 1.5 / std::sqrt(2.0 * rate);
  const double xa[1] = {x}, ya[1] = {y};
  return detail::integrate_checked(x - r, x + r, y - r, y + r, width,
                                   [&](double u, double v) {
                                     const double ua[1] = {u}, va[1] = {v};
                                     return heat_kernel_h(params, ua, va, xa, ya) * f(u, v);
                                   },
                                   "apply_heat_kernel");
}

/// max over `probes` of |H[f](s, p) - f(p)| for each s in `s_sequence`.
inline std::vector<double> initial_condition_check(const KernelParams& params, const GaussianSpec& f,
                                                   const std::vector<double>& s_sequence,
                                                   const std::vector<std::pair<double, double>>& probes) {
  if (!(f.a > 0.0 && f.b > 0.0)) throw std::invalid_argument("initial_condition_check: need a, b > 0");
  std::vector<double> errors;
  for (double s : s_sequence) {
    KernelParams p = params;
    p.s = s;
    double worst = 0.0;
    for (const auto& [x, y] : probes) {
      worst = std::max(worst, std::abs(apply_heat_kernel(p, f, x, y) - f(x, y)));
    }
    errors.push_back(worst);
  }
  return errors;
}

/// True when each error is below 1.1x its predecessor and the last is below `final_tol`.
inline bool errors_decreasing(const std::vector<double>& errors, double final_tol) {
  if (errors.empty()) return false;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i] > 1.1 * errors[i - 1]) return false;
  }
  return errors.back() < final_tol;
}

/// max_{m,k <= max_degree} |<psi_m, psi_k> - delta_mk| by Gauss-Hermite quadrature
/// of order max_degree + 1 (exact for the degree-2M polynomial integrand).
inline double orthonormality_suite(int max_degree) {
  if (max_degree < 0 || max_degree > 60) {
    throw std::invalid_argument("orthonormality_suite: max_degree must be in [0, 60]");
  }
  const auto rule = gauss_hermite_nodes(max_degree + 1);
  std::vector<std::vector<double>> p;
  for (double x : rule.nodes) p.push_back(eval_hermite_polynomial_batch(x, max_degree));
  double worst = 0.0;
  for (int m = 0; m <= max_degree; ++m) {
    for (int k = 0; k <= m; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * p[i][m] * p[i][k];
      worst = std::max(worst, std::abs(acc - (m == k ? 1.0 : 0.0)));
    }
  }
  return worst;
}

/// int e^{-i alpha beta/tau} Psi^tau_m(beta) dbeta by composite Gauss-Legendre on
/// the region where Psi^tau_m is above 1e-18.
inline complex a_m_by_quadrature(int m, double alpha, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("a_m_by_quadrature: requires tau > 0");
  const double root = std::sqrt(tau);
  // psi_m is negligible beyond sqrt(2m+1) + 9.
  const double half = root * (std::sqrt(2.0 * m + 1.0) + 9.0);
  const auto rule = composite_gauss_legendre(-half, half, 8 * (m + 8));
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double beta = rule.nodes[i];
    sum.add(rule.weights[i] * std::polar(1.0, -alpha * beta / tau) *
            eval_scaled_hermite({tau, m}, beta));
  }
  return sum.value();
}

}  // namespace heisenberg::verify
