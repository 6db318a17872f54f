/**
 * @file residuals.hpp
 * @brief Finite-difference PDE residuals of the closed-form kernels.
 *
 * Each residual applies second-order central stencils to an exact solution,
 * so the max-norm residual over a probe set decays like h^2. The observed
 * order is the least-squares slope of log(residual) against log(h).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisenberg/hermite.hpp"
#include "heisenberg/kernels.hpp"
#include "heisenberg/series.hpp"

namespace heisenberg::verify {

struct ResidualReport {
  std::string equation;
  std::vector<double> step_sizes;
  std::vector<double> residual_norms;
  double convergence_order = 0.0;
};

/// One evaluation point. `coords` layout depends on the equation:
///   rho_hat, u:   {alpha, beta}                 (n = 1)
///   rho_tilde:    {x_1..x_n, y_1..y_n}
///   heat kernel:  {x'_1..x'_n, y'_1..y'_n, x_1..x_n, y_1..y_n}
///   hermite:      {x}       eigenfunction: {beta}
struct ProbePoint {
  KernelParams params;
  std::vector<double> coords;
  int degree = 0;  // Hermite probes only
};

using ProbeSet = std::vector<ProbePoint>;

inline const std::vector<double> kDefaultSteps{1e-2, 5e-3, 2.5e-3};

/// Least-squares slope of log(residual) vs log(h).
inline double fit_order(std::span<const double> h, std::span<const double> r) {
  if (h.size() != r.size() || h.size() < 2) throw std::invalid_argument("fit_order: need >= 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]);
    my += std::log(r[i]);
  }
  mx /= h.size();
  my /= h.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(r[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace detail {

using Field = std::function<complex(double s, std::span<const double> coords)>;

// Central-difference derivatives of a field at (s, c).
struct Stencil {
  const Field& f;
  double s;
  std::vector<double> c;
  double h;
  complex center;

  Stencil(const Field& field, double s_, std::span<const double> coords, double h_)
      : f(field), s(s_), c(coords.begin(), coords.end()), h(h_), center(field(s_, coords)) {}

  complex ds() const { return (f(s + h, c) - f(s - h, c)) / (2.0 * h); }

  std::pair<complex, complex> shifted(std::size_t i) const {
    auto plus = c;
    auto minus = c;
    plus[i] += h;
    minus[i] -= h;
    return {f(s, plus), f(s, minus)};
  }
  complex d1(std::size_t i) const {
    const auto [p, m] = shifted(i);
    return (p - m) / (2.0 * h);
  }
  complex d2(std::size_t i) const {
    const auto [p, m] = shifted(i);
    return (p - 2.0 * center + m) / (h * h);
  }
};

using PointResidual = std::function<double(const ProbePoint&, double h)>;

inline ResidualReport run_report(const std::string& name, const ProbeSet& probes,
                                 std::span<const double> steps, const PointResidual& residual) {
  if (probes.empty()) throw std::invalid_argument(name + ": empty probe set");
  ResidualReport rep{name, {steps.begin(), steps.end()}, {}, 0.0};
  for (double h : steps) {
    if (!(h > 0.0)) throw std::invalid_argument(name + ": step must be > 0");
    double worst = 0.0;
    for (const auto& p : probes) worst = std::max(worst, residual(p, h));
    rep.residual_norms.push_back(worst);
  }
  rep.convergence_order = fit_order(rep.step_sizes, rep.residual_norms);
  return rep;
}

// Residual of d/ds - (1/4)(Lap_{x,y} + 2i tau y.grad_x - (tau^2|y|^2 + gamma tau))
// for a field on coords whose last 2n entries are (x, y).
inline double weighted_dbar_residual(const Field& f, const ProbePoint& p, double h) {
  const int n = p.params.n;
  const std::size_t off = p.coords.size() - 2 * static_cast<std::size_t>(n);
  const double tau = p.params.tau;
  const Stencil st(f, p.params.s, p.coords, h);
  complex lap{0.0, 0.0};
  complex drift{0.0, 0.0};
  double y2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::size_t ix = off + j;
    const std::size_t iy = off + n + j;
    lap += st.d2(ix) + st.d2(iy);
    drift += p.coords[iy] * st.d1(ix);
    y2 += p.coords[iy] * p.coords[iy];
  }
  const complex op = lap + complex(0.0, 2.0 * tau) * drift - (tau * tau * y2 + p.params.gamma * tau) * st.center;
  return std::abs(st.ds() - 0.25 * op);
}

}  // namespace detail

/// d rho_hat/ds - (1/4)[-alpha^2 - 2i alpha tau d_beta + tau^2 d_beta^2 - beta^2 - gamma tau] rho_hat.
inline ResidualReport residual_rho_hat(const ProbeSet& probes,
                                       std::span<const double> steps = kDefaultSteps) {
  return detail::run_report("rho_hat", probes, steps, [](const ProbePoint& p, double h) {
    if (p.params.n != 1 || p.coords.size() != 2) {
      throw std::invalid_argument("residual_rho_hat: n = 1 probes only");
    }
    const detail::Field f = [&](double s, std::span<const double> c) {
      KernelParams q = p.params;
      q.s = s;
      return rho_hat(q, c.subspan(0, 1), c.subspan(1, 1));
    };
    const double alpha = p.coords[0], beta = p.coords[1], tau = p.params.tau;
    const detail::Stencil st(f, p.params.s, p.coords, h);
    const complex op = (-alpha * alpha - beta * beta - p.params.gamma * tau) * st.center -
                       complex(0.0, 2.0 * alpha * tau) * st.d1(1) + tau * tau * st.d2(1);
    return std::abs(st.ds() - 0.25 * op);
  });
}

/// du/ds - (1/4)(tau^2 d_beta^2 - beta^2 - gamma tau) u with u from the Hermite series.
inline ResidualReport residual_u(const ProbeSet& probes,
                                 std::span<const double> steps = kDefaultSteps,
                                 const SeriesConfig& cfg = {}) {
  return detail::run_report("u", probes, steps, [&cfg](const ProbePoint& p, double h) {
    if (p.coords.size() != 2) throw std::invalid_argument("residual_u: coords are {alpha, beta}");
    const double alpha = p.coords[0], tau = p.params.tau;
    const detail::Field f = [&](double s, std::span<const double> c) {
      return u_series(cfg, s, alpha, c[1], tau, p.params.gamma).value;
    };
    const double beta = p.coords[1];
    const detail::Stencil st(f, p.params.s, p.coords, h);
    const complex op = tau * tau * st.d2(1) - (beta * beta + p.params.gamma * tau) * st.center;
    return std::abs(st.ds() - 0.25 * op);
  });
}

/// (d/ds + L~_gamma) rho_tilde.
inline ResidualReport residual_rho_tilde(const ProbeSet& probes,
                                         std::span<const double> steps = kDefaultSteps) {
  return detail::run_report("rho_tilde", probes, steps, [](const ProbePoint& p, double h) {
    const auto n = static_cast<std::size_t>(p.params.n);
    if (p.coords.size() != 2 * n) throw std::invalid_argument("residual_rho_tilde: coords size");
    const detail::Field f = [&](double s, std::span<const double> c) {
      KernelParams q = p.params;
      q.s = s;
      return rho_tilde(q, c.subspan(0, n), c.subspan(n, n));
    };
    return detail::weighted_dbar_residual(f, p, h);
  });
}

/// (d/ds + L~_gamma in (x, y)) H(s, x', y', x, y) at fixed (x', y').
inline ResidualReport residual_heat_kernel(const ProbeSet& probes,
                                           std::span<const double> steps = kDefaultSteps) {
  return detail::run_report("heat_kernel", probes, steps, [](const ProbePoint& p, double h) {
    const auto n = static_cast<std::size_t>(p.params.n);
    if (p.coords.size() != 4 * n) throw std::invalid_argument("residual_heat_kernel: coords size");
    const detail::Field f = [&](double s, std::span<const double> c) {
      KernelParams q = p.params;
      q.s = s;
      return heat_kernel_h(q, c.subspan(0, n), c.subspan(n, n), c.subspan(2 * n, n),
                           c.subspan(3 * n, n));
    };
    return detail::weighted_dbar_residual(f, p, h);
  });
}

/// psi_m'' - (x^2 - (2m+1)) psi_m.
inline ResidualReport residual_hermite_ode(const ProbeSet& probes,
                                           std::span<const double> steps = kDefaultSteps) {
  return detail::run_report("hermite_ode", probes, steps, [](const ProbePoint& p, double h) {
    const double x = p.coords.at(0);
    const int m = p.degree;
    const double d2 = (eval_hermite(m, x + h) - 2.0 * eval_hermite(m, x) + eval_hermite(m, x - h)) / (h * h);
    return std::abs(d2 - (x * x - (2.0 * m + 1.0)) * eval_hermite(m, x));
  });
}

/// Eigenvalue of (tau^2 d_beta^2 - beta^2 - gamma tau) on Psi^tau_m. For tau < 0
/// only the oscillator part picks up |tau|.
inline complex eigenvalue(int m, double tau, complex gamma) {
  return -((2.0 * m + 1.0) * std::abs(tau) + gamma * tau);
}

/// (tau^2 d_beta^2 - beta^2 - gamma tau) Psi^tau_m - eigenvalue * Psi^tau_m.
inline ResidualReport residual_eigenfunction(const ProbeSet& probes,
                                             std::span<const double> steps = kDefaultSteps) {
  return detail::run_report("eigenfunction", probes, steps, [](const ProbePoint& p, double h) {
    const double beta = p.coords.at(0), tau = p.params.tau;
    const ScaledHermiteParams sp{tau, p.degree};
    const double c = eval_scaled_hermite(sp, beta);
    const double d2 = (eval_scaled_hermite(sp, beta + h) - 2.0 * c + eval_scaled_hermite(sp, beta - h)) / (h * h);
    const complex lhs = tau * tau * d2 - (beta * beta + p.params.gamma * tau) * c;
    return std::abs(lhs - eigenvalue(p.degree, tau, p.params.gamma) * c);
  });
}

}  // namespace heisenberg::verify
