#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "heisenberg/hermite.hpp"
#include "heisenberg/verify/panels.hpp"
#include "heisenberg/verify/quadrature.hpp"
#include "heisenberg/verify/residuals.hpp"

using namespace heisenberg;

namespace {

// Independent oracle: psi_m from the explicit sum
// H_m(x) = m! sum_k (-1)^k (2x)^{m-2k} / (k! (m-2k)!) in long double.
long double psi_explicit(int m, long double x) {
  long double h = 0.0L;
  for (int k = 0; 2 * k <= m; ++k) {
    const long double term = std::pow(2.0L * x, m - 2 * k) / (std::tgamma(k + 1.0L) * std::tgamma(m - 2 * k + 1.0L));
    h += (k % 2 ? -term : term);
  }
  h *= std::tgamma(m + 1.0L);
  const long double norm = std::sqrt(std::pow(2.0L, m) * std::tgamma(m + 1.0L) * std::sqrt(std::numbers::pi_v<long double>));
  return h * std::exp(-x * x / 2.0L) / norm;
}

}  // namespace

TEST(Hermite, ValuesAtOrigin) {
  const auto e = eval_hermite_batch(0.0, 1);
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_NEAR(e.values[0], 0.7511255444649425, 1e-15);
  EXPECT_EQ(e.values[1], 0.0);
}

TEST(Hermite, FrozenRodriguesValues) {
  // 40-digit Rodrigues evaluations, tests/oracles/frozen_values.py
  EXPECT_NEAR(eval_hermite(2, 1.0), 0.32214418255673759076, 1e-15);
  EXPECT_NEAR(eval_hermite(5, 0.3), 0.36800483977807167325, 1e-15);
  EXPECT_NEAR(eval_hermite(12, -1.7), -0.17092331357521837252, 1e-15);
  EXPECT_NEAR(eval_hermite(7, 2.5), -0.19825280491742293107, 1e-15);
}

TEST(Hermite, RecurrenceMatchesExplicitSum) {
  for (int m = 0; m <= 12; ++m) {
    for (double x = -4.0; x <= 4.0; x += 0.37) {
      const double ref = static_cast<double>(psi_explicit(m, x));
      const double got = eval_hermite(m, x);
      // relative, measured against the larger of |ref| and 1e-3 to avoid the zeros
      EXPECT_LE(std::abs(got - ref), 1e-12 * std::max(std::abs(ref), 1e-3)) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Hermite, BatchLengthAndUniformBound) {
  for (double x : {-30.0, -7.5, -1.0, 0.0, 0.2, 3.3, 12.0, 45.0}) {
    const auto e = eval_hermite_batch(x, 200);
    ASSERT_EQ(e.values.size(), 201u);
    for (double v : e.values) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_LE(std::abs(v), kPiQuarterInv * (1.0 + 1e-12));
    }
  }
}

TEST(Hermite, LargeArgumentsUnderflowToZero) {
  const auto e = eval_hermite_batch(60.0, 10);
  for (double v : e.values) EXPECT_EQ(v, 0.0);
  // but the rescaled recurrence keeps modest-degree tails representable
  EXPECT_GT(std::abs(eval_hermite(150, 25.0)), 0.0);
}

TEST(Hermite, RejectsNegativeDegree) {
  EXPECT_THROW(eval_hermite_batch(0.0, -1), std::invalid_argument);
}

TEST(ScaledHermite, Examples) {
  EXPECT_NEAR(eval_scaled_hermite({1.0, 0}, 0.0), kPiQuarterInv, 1e-15);
  EXPECT_NEAR(eval_scaled_hermite({4.0, 0}, 0.0), 0.53112596601359845724, 1e-15);
  EXPECT_EQ(eval_scaled_hermite({-1.0, 1}, 0.0), 0.0);
  EXPECT_THROW(eval_scaled_hermite({0.0, 2}, 1.0), std::invalid_argument);
}

TEST(ScaledHermite, UsesAbsoluteTau) {
  for (double beta : {-1.3, 0.4, 2.2}) {
    EXPECT_EQ(eval_scaled_hermite({-2.5, 3}, beta), eval_scaled_hermite({2.5, 3}, beta));
  }
}

TEST(GaussHermite, OneAndTwoPointRules) {
  const auto one = gauss_hermite_nodes(1);
  ASSERT_EQ(one.nodes.size(), 1u);
  EXPECT_NEAR(one.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(one.weights[0], std::sqrt(std::numbers::pi), 1e-14);

  const auto two = gauss_hermite_nodes(2);
  EXPECT_NEAR(two.nodes[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(two.nodes[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(two.weights[0], std::sqrt(std::numbers::pi) / 2.0, 1e-15);
  EXPECT_NEAR(two.weights[1], std::sqrt(std::numbers::pi) / 2.0, 1e-15);

  double second_moment = 0.0;
  for (std::size_t i = 0; i < 2; ++i) second_moment += two.weights[i] * two.nodes[i] * two.nodes[i];
  EXPECT_NEAR(second_moment, std::sqrt(std::numbers::pi) / 2.0, 1e-15);
}

TEST(GaussHermite, ExactOnPolynomialsUpToDegree2nMinus1) {
  // int x^{2k} e^{-x^2} = Gamma(k + 1/2)
  for (int order : {5, 20, 64, 200}) {
    const auto rule = gauss_hermite_nodes(order);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
    EXPECT_TRUE(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
    const int max_k = std::min(order - 1, 12);
    for (int k = 0; k <= max_k; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
      EXPECT_NEAR(acc / std::tgamma(k + 0.5), 1.0, 1e-12) << "order=" << order << " k=" << k;
    }
  }
}

TEST(GaussHermite, EveryOrderHasDistinctNodesAndCorrectMass) {
  for (int order = 1; order <= kMaxGaussHermiteOrder; ++order) {
    const auto rule = gauss_hermite_nodes(order);
    double mass = 0.0, second = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      if (i > 0) {
        ASSERT_LT(rule.nodes[i - 1], rule.nodes[i]) << "order=" << order;
      }
      ASSERT_EQ(rule.nodes[i], -rule.nodes[order - 1 - i]);
      mass += rule.weights[i];
      second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    EXPECT_NEAR(mass / std::sqrt(std::numbers::pi), 1.0, 1e-13) << "order=" << order;
    if (order > 1) {
      EXPECT_NEAR(second / (std::sqrt(std::numbers::pi) / 2), 1.0, 1e-13) << "order=" << order;
    }
  }
}

TEST(GaussHermite, OrderLimits) {
  EXPECT_THROW(gauss_hermite_nodes(0), std::invalid_argument);
  EXPECT_THROW(gauss_hermite_nodes(201), std::domain_error);
}

TEST(Hermite, Orthonormality) {
  EXPECT_LT(verify::orthonormality_suite(0), 1e-14);
  EXPECT_LT(verify::orthonormality_suite(20), 1e-12);
  EXPECT_LT(verify::orthonormality_suite(60), 1e-10);
  EXPECT_THROW(verify::orthonormality_suite(61), std::invalid_argument);
}

TEST(Hermite, SecondDerivativeIdentityConvergesAtSecondOrder) {
  const auto rep = verify::residual_hermite_ode(verify::default_hermite_ode_probes());
  EXPECT_GE(rep.convergence_order, 1.8);
  EXPECT_LE(rep.convergence_order, 2.2);
  EXPECT_LT(rep.residual_norms.back(), rep.residual_norms.front());
}

TEST(Hermite, EigenfunctionIdentityConvergesAtSecondOrder) {
  const auto rep = verify::residual_eigenfunction(verify::default_eigenfunction_probes());
  EXPECT_GE(rep.convergence_order, 1.8);
  EXPECT_LE(rep.convergence_order, 2.2);
}

TEST(Hermite, EigenvalueUsesAbsoluteTauOnlyInOscillatorPart) {
  const complex g(0.5, -1.0);
  EXPECT_EQ(verify::eigenvalue(3, 2.0, g), -(7.0 + g) * 2.0);
  EXPECT_EQ(verify::eigenvalue(3, -2.0, g), -(7.0 * 2.0 - 2.0 * g));
}
