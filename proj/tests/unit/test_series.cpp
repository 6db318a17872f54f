#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "heisenberg/kernels.hpp"
#include "heisenberg/series.hpp"
#include "heisenberg/verify/quadrature.hpp"

using namespace heisenberg;

TEST(CoefficientAm, Examples) {
  // a_0(0, 1) = sqrt(2 pi) pi^{-1/4}
  EXPECT_NEAR(coefficient_a_m(0, 0.0, 1.0).real(), std::sqrt(2 * std::numbers::pi) * kPiQuarterInv, 1e-14);
  EXPECT_EQ(coefficient_a_m(0, 0.0, 1.0).imag(), 0.0);
  // odd psi vanish at the origin
  EXPECT_EQ(std::abs(coefficient_a_m(1, 0.0, 2.0)), 0.0);
  // a_1 is purely imaginary with (-i) phase
  const complex a1 = coefficient_a_m(1, 0.5, 1.0);
  EXPECT_EQ(a1.real(), 0.0);
  EXPECT_NEAR(a1.imag(), -std::sqrt(2 * std::numbers::pi) * eval_hermite(1, 0.5), 1e-15);
  EXPECT_THROW(coefficient_a_m(0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(coefficient_a_m(0, 0.0, -1.0), std::invalid_argument);
  EXPECT_THROW(coefficient_a_m(-1, 0.0, 1.0), std::invalid_argument);
}

TEST(CoefficientAm, MatchesDirectIntegral) {
  for (int m : {0, 1, 4, 9, 15}) {
    for (double alpha : {-1.2, 0.0, 0.8}) {
      for (double tau : {0.5, 2.0}) {
        EXPECT_LT(std::abs(verify::a_m_by_quadrature(m, alpha, tau) - coefficient_a_m(m, alpha, tau)), 1e-10)
            << m << " " << alpha << " " << tau;
      }
    }
  }
}

TEST(USeries, MatchesClosedForm) {
  for (double s : {0.5, 1.0, 2.0}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      for (const complex g : {complex(0, 0), complex(1, 0), complex(0, 1)}) {
        for (double a : {-3.0, 0.0, 1.0}) {
          for (double b : {-1.0, 0.0, 3.0}) {
            const double av[1] = {a}, bv[1] = {b};
            const complex closed = rho_hat({s, tau, g, 1}, av, bv);
            const complex series = rho_hat_series({}, s, a, b, tau, g);
            EXPECT_LT(std::abs(series - closed) / std::abs(closed), 1e-10);
          }
        }
      }
    }
  }
}

TEST(USeries, ReportsTermsAndTail) {
  const auto u = u_series({}, 1.0, 0.3, -0.4, 1.0, {0, 0});
  const double S = std::exp(-0.5);
  EXPECT_GT(u.terms, 1);
  EXPECT_LE(u.tail_bound, 1e-17);
  EXPECT_NEAR(u.tail_bound, std::pow(S, u.terms) / (1 - S), 1e-30);
  // one fewer term would not have met the tolerance
  EXPECT_GT(std::pow(S, u.terms - 1) / (1 - S), 1e-17);
}

TEST(USeries, TailBoundControlsTruncation) {
  // M terms versus 2M terms: the difference is within the stated bound
  for (double s : {0.2, 1.0}) {
    SeriesConfig loose{4000, 1e-6};
    SeriesConfig tight{4000, 1e-18};
    const auto a = u_series(loose, s, 0.7, -0.2, 1.5, {0.5, 0});
    const auto b = u_series(tight, s, 0.7, -0.2, 1.5, {0.5, 0});
    const double lead = std::abs(std::sqrt(2 * std::numbers::pi) * std::exp(-(1.5) * s * 1.5 / 4));
    // |psi_a psi_b| <= pi^{-1/2}
    EXPECT_LE(std::abs(a.value - b.value), lead * a.tail_bound / std::sqrt(std::numbers::pi) * (1 + 1e-9));
  }
}

TEST(USeries, ZeroTimeIsDistributional) {
  EXPECT_THROW(u_series({}, 0.0, 0.1, 0.2, 1.0, {0, 0}), ConvergenceError);
  EXPECT_THROW(rho_hat_series({}, 0.0, 0.1, 0.2, 1.0, {0, 0}), std::invalid_argument);
  EXPECT_THROW(u_series({}, 1.0, 0.1, 0.2, -1.0, {0, 0}), std::invalid_argument);
  EXPECT_THROW(u_series({0, 1e-17}, 1.0, 0.1, 0.2, 1.0, {0, 0}), std::invalid_argument);
}

TEST(USeries, WeakInitialCondition) {
  for (double alpha : {-1.0, 0.0, 2.0}) {
    for (double tau : {0.5, 3.0}) {
      EXPECT_LT(u_initial_weak_error(alpha, tau, 120), 1e-6);
    }
  }
  // more terms do better
  EXPECT_LT(u_initial_weak_error(1.0, 1.0, 120), u_initial_weak_error(1.0, 1.0, 10));
  EXPECT_THROW(u_initial_weak_error(0.0, 1.0, 0), std::invalid_argument);
}

TEST(Mehler, OriginValue) {
  EXPECT_NEAR(mehler_closed_form(0.5, 0.0, 0.0).real(), 0.50462650440403200965, 1e-15);
  const auto r = mehler_sum(0.5, 0.0, 0.0);
  EXPECT_NEAR(r.series.real(), 0.50462650440403200965, 1e-14);
}

TEST(Mehler, GridAgreement) {
  for (double S : {0.1, 0.5, 0.9}) {
    for (double x = -3.0; x <= 3.0; x += 0.75) {
      for (double y = -3.0; y <= 3.0; y += 0.75) {
        EXPECT_LT(mehler_truncated(S, x, y).abs_diff, kMehlerTolerance) << S << " " << x << " " << y;
      }
    }
  }
}

TEST(Mehler, ThrowsOnTruncationFailure) {
  SeriesConfig short_cfg{5, 1e-17};
  EXPECT_THROW(mehler_sum(0.9, 1.0, 1.0, short_cfg), IdentityViolation);
  EXPECT_NO_THROW(mehler_truncated(0.9, 1.0, 1.0, short_cfg));
  EXPECT_THROW(mehler_sum(1.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(mehler_sum(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add({1e16, 0});
  s.add({1.0, 1.0});
  s.add({-1e16, 0});
  EXPECT_EQ(s.value(), complex(1.0, 1.0));
}
