/**
 * @file panels.hpp
 * @brief Fixed default probe panels for the verification suites.
 *
 * Kernel probes cover s in {0.25, 1, 4}, tau in {-2, -0.5, 0, 0.5, 2} and
 * gamma in {0, 1, -1, i} plus the Box_b values n - 2q, with coordinates in
 * [-2, 2]. Nothing here is random.
 */
#pragma once

#include <vector>

#include "heisenberg/verify/residuals.hpp"

namespace heisenberg::verify {

inline const std::vector<double> kPanelS{0.25, 1.0, 4.0};
inline const std::vector<double> kPanelTau{-2.0, -0.5, 0.0, 0.5, 2.0};

inline std::vector<complex> panel_gammas(int n) {
  std::vector<complex> g{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}};
  for (int q = 0; q <= n; ++q) {
    const complex boxb(n - 2.0 * q, 0.0);
    bool seen = false;
    for (const auto& v : g) seen = seen || v == boxb;
    if (!seen) g.push_back(boxb);
  }
  return g;
}

namespace detail {

template <typename Fn>
ProbeSet sweep(int n, const std::vector<double>& taus,
               const std::vector<std::vector<double>>& coords, Fn&& keep) {
  ProbeSet out;
  for (double s : kPanelS) {
    for (double tau : taus) {
      for (const auto& g : panel_gammas(n)) {
        for (const auto& c : coords) {
          ProbePoint p{{s, tau, g, n}, c, 0};
          if (keep(p)) out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

inline bool keep_all(const ProbePoint&) { return true; }

}  // namespace detail

inline ProbeSet default_rho_hat_probes() {
  return detail::sweep(1, kPanelTau, {{0.7, -1.3}, {-1.5, 0.4}, {2.0, 1.0}}, detail::keep_all);
}

/// u lives on the tau > 0 branch only.
inline ProbeSet default_u_probes() {
  return detail::sweep(1, {0.5, 2.0}, {{0.7, -1.3}, {-1.5, 0.4}}, detail::keep_all);
}

inline ProbeSet default_rho_tilde_probes() {
  auto out = detail::sweep(1, kPanelTau, {{0.3, -0.6}, {-1.2, 0.9}}, detail::keep_all);
  // n = 2 slice: one gamma per tau keeps the panel small.
  auto two = detail::sweep(2, kPanelTau, {{0.3, -0.2, 0.5, -0.4}, {-0.8, 0.6, 0.1, 0.7}},
                           [](const ProbePoint& p) { return p.params.s == 1.0; });
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

inline ProbeSet default_heat_kernel_probes() {
  const std::vector<std::vector<double>> pts{
      {0.4, -0.3, 0.4, -0.3},   // diagonal
      {0.5, -0.5, -0.4, 0.8},   // off-diagonal, twist active
      {-1.0, 0.6, 0.2, -1.1}};
  std::vector<double> taus = kPanelTau;
  taus.push_back(1e-5);  // exercises the small-s*tau series branch
  auto out = detail::sweep(1, taus, pts, detail::keep_all);
  auto two = detail::sweep(2, {-2.0, 0.0, 0.5}, {{0.1, 0.2, -0.3, 0.4, 0.5, -0.1, 0.2, -0.6}},
                           [](const ProbePoint& p) { return p.params.s == 1.0; });
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

/// m <= 40, x on a grid in [-5, 5].
inline ProbeSet default_hermite_ode_probes() {
  ProbeSet out;
  for (int m : {0, 1, 2, 5, 10, 20, 30, 40}) {
    for (int k = 0; k <= 20; ++k) {
      ProbePoint p{{}, {-5.0 + 0.5 * k}, m};
      if (std::abs(eval_hermite(m, p.coords[0])) > 1e-300) out.push_back(std::move(p));
    }
  }
  return out;
}

/// tau in {+-0.5, +-2}, gamma in {0, 1, -1, i}, m <= 20.
inline ProbeSet default_eigenfunction_probes() {
  ProbeSet out;
  for (double tau : {-2.0, -0.5, 0.5, 2.0}) {
    for (const complex g : {complex(0, 0), complex(1, 0), complex(-1, 0), complex(0, 1)}) {
      for (int m : {0, 1, 3, 7, 12, 20}) {
        for (double beta : {-2.0, -0.9, 0.0, 0.6, 1.7}) {
          out.push_back({{1.0, tau, g, 1}, {beta}, m});
        }
      }
    }
  }
  return out;
}

}  // namespace heisenberg::verify
