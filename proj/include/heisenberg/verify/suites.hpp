/**
 * @file suites.hpp
 * @brief Named verification suites over the fixed default panels, with JSON reports.
 */
#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisenberg/series.hpp"
#include "heisenberg/verify/inversion.hpp"
#include "heisenberg/verify/panels.hpp"
#include "heisenberg/verify/quadrature.hpp"
#include "heisenberg/verify/residuals.hpp"

namespace heisenberg::verify {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double lower = -std::numeric_limits<double>::infinity();  // passes iff lower <= value < upper
  double upper = 0.0;
  bool passed = false;
  std::string worst_case;
  std::string panel;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return !checks.empty();
  }
};

inline CheckResult make_check(std::string name, double value, double upper, std::string worst,
                              std::string panel,
                              double lower = -std::numeric_limits<double>::infinity()) {
  const bool ok = std::isfinite(value) && value >= lower && value < upper;
  return {std::move(name), value, lower, upper, ok, std::move(worst), std::move(panel)};
}

inline std::string describe(const KernelParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "s=%g tau=%g gamma=%g%+gi n=%d", p.s, p.tau, p.gamma.real(),
                p.gamma.imag(), p.n);
  return buf;
}

inline CheckResult order_check(const ResidualReport& r, const std::string& panel) {
  std::string detail = "residuals:";
  for (std::size_t i = 0; i < r.step_sizes.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " h=%g:%.3e", r.step_sizes[i], r.residual_norms[i]);
    detail += buf;
  }
  return make_check(r.equation + " residual order", r.convergence_order, 2.2, detail, panel, 1.8);
}

// --- individual checks -------------------------------------------------------

inline CheckResult check_orthonormality(int max_degree = 60) {
  return make_check("orthonormality deviation", orthonormality_suite(max_degree), 1e-10,
                    "max_degree=" + std::to_string(max_degree), "m,k <= " + std::to_string(max_degree));
}

inline CheckResult check_series_vs_closed_form() {
  double worst = 0.0;
  std::string where;
  for (double s : {0.5, 1.0, 2.0}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      for (const complex g : {complex(0, 0), complex(1, 0), complex(0, 1)}) {
        for (double a : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
          for (double b : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
            const double av[1] = {a}, bv[1] = {b};
            const complex closed = rho_hat({s, tau, g, 1}, av, bv);
            const complex series = rho_hat_series({}, s, a, b, tau, g);
            const double rel = std::abs(series - closed) / std::abs(closed);
            if (rel > worst) {
              worst = rel;
              where = describe({s, tau, g, 1}) + " alpha=" + std::to_string(a) + " beta=" + std::to_string(b);
            }
          }
        }
      }
    }
  }
  return make_check("series vs closed form (relative)", worst, 1e-10, where,
                    "s{0.5,1,2} tau{0.5,1,3} gamma{0,1,i} alpha,beta{-3,-1,0,1,3}");
}

inline CheckResult check_mehler() {
  double worst = 0.0;
  std::string where;
  for (double S : {0.1, 0.5, 0.9}) {
    for (int i = 0; i <= 12; ++i) {
      for (int j = 0; j <= 12; ++j) {
        const double x = -3.0 + 0.5 * i, y = -3.0 + 0.5 * j;
        const double diff = mehler_truncated(S, x, y).abs_diff;
        if (diff > worst) {
          worst = diff;
          where = "S=" + std::to_string(S) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
        }
      }
    }
  }
  return make_check("Mehler sum vs closed form (absolute)", worst, 1e-11, where,
                    "S{0.1,0.5,0.9} x,y in [-3,3] step 0.5");
}

inline CheckResult check_a_m_quadrature() {
  double worst = 0.0;
  std::string where;
  for (int m = 0; m <= 20; ++m) {
    for (double alpha : {-1.9, 0.0, 0.7}) {
      for (double tau : {0.5, 2.0}) {
        const double d = std::abs(a_m_by_quadrature(m, alpha, tau) - coefficient_a_m(m, alpha, tau));
        if (d > worst) {
          worst = d;
          where = "m=" + std::to_string(m) + " alpha=" + std::to_string(alpha) + " tau=" + std::to_string(tau);
        }
      }
    }
  }
  return make_check("a_m vs direct integral (absolute)", worst, 1e-10, where,
                    "m<=20 alpha{-1.9,0,0.7} tau{0.5,2}");
}

inline CheckResult check_u_initial_weak() {
  double worst = 0.0;
  std::string where;
  for (double alpha : {-1.0, 0.0, 0.5, 2.0}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      const double e = u_initial_weak_error(alpha, tau, 120);
      if (e > worst) {
        worst = e;
        where = "alpha=" + std::to_string(alpha) + " tau=" + std::to_string(tau);
      }
    }
  }
  return make_check("u(s=0) weak reconstruction", worst, 1e-6, where,
                    "alpha{-1,0,0.5,2} tau{0.5,1,3}, 120 terms");
}

inline CheckResult check_dft_inversion(double extent = 40.0, int count = 512) {
  double worst = 0.0;
  std::string where;
  for (double s : {0.5, 1.0, 2.0}) {
    for (double tau : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      for (const complex g : {complex(0, 0), complex(1, 0), complex(0, 1)}) {
        const KernelParams p{s, tau, g, 1};
        double e = std::numeric_limits<double>::infinity();
        try {
          e = dft_inversion_check(p, extent, count).max_rel_error;
        } catch (const ConvergenceError&) {
        }
        if (!(e <= worst)) {
          worst = e;
          where = describe(p);
        }
      }
    }
  }
  return make_check("DFT inversion of rho_hat vs rho_tilde", worst, 1e-6, where,
                    "s{0.5,1,2} tau{-2,-0.5,0,0.5,2} gamma{0,1,i}, extent 40, 512^2");
}

inline CheckResult check_semigroup(bool tau_zero) {
  double worst = 0.0;
  std::string where;
  const std::vector<PointPair> points{{0.3, -0.2, 0.3, -0.2}, {0.4, -0.3, -0.5, 0.6}};
  const std::vector<double> taus = tau_zero ? std::vector<double>{0.0} : std::vector<double>{-2.0, 0.5, 1.0};
  for (const auto& [s1, s2] : {std::pair{0.5, 0.5}, std::pair{0.3, 1.2}}) {
    for (double tau : taus) {
      for (const complex g : {complex(0, 0), complex(2, 0), complex(0, 1)}) {
        for (const auto& pts : points) {
          double e = std::numeric_limits<double>::infinity();
          try {
            e = semigroup_check({s1, tau, g, 1}, {s2, tau, g, 1}, pts).rel_error;
          } catch (const ConvergenceError&) {
          }
          if (!(e <= worst)) {
            worst = e;
            where = describe({s1, tau, g, 1}) + " s2=" + std::to_string(s2);
          }
        }
      }
    }
  }
  return tau_zero ? make_check("semigroup, tau = 0 (Gaussian)", worst, 1e-8, where,
                               "(s1,s2){(0.5,0.5),(0.3,1.2)} gamma{0,2,i}")
                  : make_check("semigroup composition", worst, 1e-6, where,
                               "(s1,s2){(0.5,0.5),(0.3,1.2)} tau{-2,0.5,1} gamma{0,2,i}");
}

inline const std::vector<double> kInitialConditionTimes{0.5, 0.1, 0.02, 0.004, 1e-3};

inline CheckResult check_initial_condition() {
  const GaussianSpec f{1.0, 0.5, 0.2, -0.1};
  const std::vector<std::pair<double, double>> probes{{0.2, -0.1}, {0.7, 0.3}};
  double worst_final = 0.0;
  bool monotone = true;
  std::string where;
  for (double tau : {1.0, 0.0, -2.0}) {
    for (const complex g : {complex(0, 0), complex(1, 0)}) {
      const KernelParams p{1.0, tau, g, 1};
      std::vector<double> errs;
      try {
        errs = initial_condition_check(p, f, kInitialConditionTimes, probes);
      } catch (const ConvergenceError&) {
        errs.assign(1, std::numeric_limits<double>::infinity());
      }
      const bool ok = errors_decreasing(errs, 5e-3);
      if (!ok) monotone = false;
      if (!(errs.back() <= worst_final) || !ok) {
        worst_final = std::max(worst_final, errs.back());
        where = describe(p);
        for (double e : errs) where += " " + std::to_string(e);
      }
    }
  }
  auto c = make_check("initial condition H[f](s) -> f, final error", worst_final, 5e-3, where,
                      "Gaussian a=1 b=0.5 c=(0.2,-0.1); tau{1,0,-2} gamma{0,1}; s 0.5..1e-3");
  c.passed = c.passed && monotone;
  return c;
}

// --- suites ----------------------------------------------------------------

inline const std::vector<std::string> kSuiteNames{"hermite", "series", "pde", "inversion", "semigroup"};

inline SuiteReport run_suite(const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep{name, {}, 0.0};
  if (name == "hermite") {
    rep.checks.push_back(check_orthonormality());
    rep.checks.push_back(order_check(residual_hermite_ode(default_hermite_ode_probes()), "m<=40, x in [-5,5]"));
    rep.checks.push_back(order_check(residual_eigenfunction(default_eigenfunction_probes()),
                                     "tau{+-0.5,+-2} gamma{0,1,-1,i} m<=20"));
  } else if (name == "series") {
    rep.checks.push_back(check_series_vs_closed_form());
    rep.checks.push_back(check_mehler());
    rep.checks.push_back(check_a_m_quadrature());
    rep.checks.push_back(check_u_initial_weak());
  } else if (name == "pde") {
    rep.checks.push_back(order_check(residual_u(default_u_probes()), "default u panel (tau > 0)"));
    rep.checks.push_back(order_check(residual_rho_hat(default_rho_hat_probes()), "default rho_hat panel"));
    rep.checks.push_back(order_check(residual_rho_tilde(default_rho_tilde_probes()), "default rho_tilde panel"));
    rep.checks.push_back(order_check(residual_heat_kernel(default_heat_kernel_probes()), "default heat kernel panel"));
  } else if (name == "inversion") {
    rep.checks.push_back(check_dft_inversion());
  } else if (name == "semigroup") {
    rep.checks.push_back(check_semigroup(false));
    rep.checks.push_back(check_semigroup(true));
    rep.checks.push_back(check_initial_condition());
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline nlohmann::json to_json(const SuiteReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json tol = {{"upper", c.upper}};
    if (std::isfinite(c.lower)) tol["lower"] = c.lower;
    checks.push_back({{"name", c.name},
                      {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr)},
                      {"tolerance", tol},
                      {"passed", c.passed},
                      {"worst_case", c.worst_case},
                      {"panel", c.panel}});
  }
  return {{"suite", rep.suite}, {"passed", rep.passed()}, {"checks", checks}};
}

}  // namespace heisenberg::verify
