#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "heisenberg/kernels.hpp"
#include "heisenberg/verify/quadrature.hpp"

using namespace heisenberg;

namespace {

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> draw(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST(CoefficientsAB, Examples) {
  const auto zero_tau = coefficients_ab(1.0, 0.0);
  EXPECT_DOUBLE_EQ(zero_tau.a_coef, 0.5);
  EXPECT_EQ(zero_tau.b_coef, 0.0);

  // 40-digit references, tests/oracles/frozen_values.py
  const auto one = coefficients_ab(1.0, 1.0);
  EXPECT_NEAR(one.a_coef, 0.4621171572600097585, 1e-15);
  EXPECT_NEAR(one.b_coef, 0.11318111602992609134, 1e-15);

  const auto zero_s = coefficients_ab(0.0, 3.0);
  EXPECT_EQ(zero_s.a_coef, 0.0);
  EXPECT_EQ(zero_s.b_coef, 0.0);

  EXPECT_THROW(coefficients_ab(-1.0, 1.0), std::invalid_argument);
}

TEST(CoefficientsAB, SignsAndSumOfSquares) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> s_dist(1e-3, 10.0), t_dist(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double s = s_dist(rng), tau = t_dist(rng);
    const auto [a, b] = coefficients_ab(s, tau);
    EXPECT_GT(a, 0.0);
    EXPECT_EQ(std::signbit(b), std::signbit(tau));
    const double sum_sq = 4.0 * std::pow(std::sinh(s * tau / 4), 2) / (tau * tau * std::cosh(s * tau / 2));
    EXPECT_NEAR((a * a + b * b) / sum_sq, 1.0, 1e-12);
    EXPECT_NEAR(a2_plus_b2(s, tau) / sum_sq, 1.0, 1e-12);
  }
}

TEST(CoefficientsAB, SeriesBranchContinuity) {
  for (double s : {0.5, 1.0, 3.0}) {
    for (double sign : {-1.0, 1.0}) {
      const double tau = sign * kSeriesSwitch / s;
      const auto series = detail::coefficients_ab_series(s, tau);
      const auto direct = detail::coefficients_ab_direct(s, tau);
      EXPECT_NEAR(series.a_coef / direct.a_coef, 1.0, 1e-10);
      EXPECT_NEAR(series.b_coef / direct.b_coef, 1.0, 1e-10);
      // just either side of the switch
      const auto below = coefficients_ab(s, tau * (1 - 1e-9));
      const auto above = coefficients_ab(s, tau * (1 + 1e-9));
      EXPECT_NEAR(below.a_coef / above.a_coef, 1.0, 1e-10);
      EXPECT_NEAR(below.b_coef / above.b_coef, 1.0, 1e-8);
    }
  }
}

TEST(CoefficientsAB, LimitAtTauZero) {
  for (double s : {0.1, 1.0, 7.0}) {
    const auto ab = coefficients_ab(s, 1e-12);
    EXPECT_NEAR(ab.a_coef, s / 2, 1e-15 * s);
    EXPECT_NEAR(ab.b_coef, s * s * 1e-12 / 8, 1e-25);
  }
}

TEST(CoefficientsAB, LargeArgumentsStayFinite) {
  const auto ab = coefficients_ab(10.0, 300.0);
  EXPECT_NEAR(ab.a_coef, 1.0 / 300.0, 1e-15);
  EXPECT_NEAR(ab.b_coef, 1.0 / 300.0, 1e-15);
  EXPECT_TRUE(std::isfinite(a2_plus_b2(10.0, 300.0)));
}

TEST(RhoHat, InitialValueIsOne) {
  const double a[2] = {0.3, -2.0}, b[2] = {1.0, 4.0};
  EXPECT_EQ(rho_hat({0.0, 1.7, {0.3, 2.0}, 2}, a, b), complex(1.0, 0.0));
}

TEST(RhoHat, TauZeroIsGaussian) {
  for (double s : {0.25, 1.0, 4.0}) {
    for (const complex g : {complex(0, 0), complex(3, -1)}) {
      const double a[1] = {0.8}, b[1] = {-1.4};
      const complex got = rho_hat({s, 0.0, g, 1}, a, b);
      EXPECT_NEAR(std::abs(got - std::exp(-s * (0.64 + 1.96) / 4)), 0.0, 1e-15);
    }
  }
}

TEST(RhoHat, OriginValue) {
  const double z[1] = {0.0};
  EXPECT_NEAR(rho_hat({1.0, 1.0, {0, 0}, 1}, z, z).real(), 0.94171061583167570696, 1e-15);
}

TEST(RhoHat, ModulusAndPhaseSplit) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 3;
    const double s = draw(rng, 1, 0.1, 5.0)[0], tau = draw(rng, 1, -4.0, 4.0)[0];
    const complex g(draw(rng, 1, -2, 2)[0], draw(rng, 1, -2, 2)[0]);
    const auto a = draw(rng, n, -2, 2), b = draw(rng, n, -2, 2);
    const auto [A, B] = coefficients_ab(s, tau);
    double norm2 = 0, dot = 0;
    for (int j = 0; j < n; ++j) {
      norm2 += a[j] * a[j] + b[j] * b[j];
      dot += a[j] * b[j];
    }
    const complex v = rho_hat({s, tau, g, n}, a, b);
    const double modulus = std::exp(-g.real() * s * tau / 4) * std::pow(std::cosh(s * tau / 2), -n / 2.0) *
                           std::exp(-A * norm2 / 2);
    EXPECT_NEAR(std::abs(v) / modulus, 1.0, 1e-13);
    const complex phase = std::polar(1.0, -g.imag() * s * tau / 4 + B * dot);
    EXPECT_LT(std::abs(v / std::abs(v) - phase), 1e-12);
  }
}

TEST(RhoHat, ConjugationParityInTau) {
  // A is even in tau, B odd: rho_hat(-tau; -conj gamma) = conj rho_hat(tau; gamma).
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const double s = draw(rng, 1, 0.1, 5.0)[0], tau = draw(rng, 1, -4.0, 4.0)[0];
    const complex g(draw(rng, 1, -2, 2)[0], draw(rng, 1, -2, 2)[0]);
    const auto a = draw(rng, 1, -3, 3), b = draw(rng, 1, -3, 3);
    const complex lhs = rho_hat({s, -tau, -std::conj(g), 1}, a, b);
    const complex rhs = std::conj(rho_hat({s, tau, g, 1}, a, b));
    EXPECT_LT(rel(lhs, rhs), 1e-14);
  }
  // purely imaginary gamma: -conj(gamma) = gamma
  const double a[1] = {1.2}, b[1] = {-0.7};
  EXPECT_LT(rel(rho_hat({1.5, -2.0, {0, 1}, 1}, a, b), std::conj(rho_hat({1.5, 2.0, {0, 1}, 1}, a, b))), 1e-15);
}

TEST(RhoHatProduct, MatchesDirectForm) {
  const double a1[1] = {0.4}, b1[1] = {-1.0};
  const KernelParams one{1.3, 0.7, {0.2, 0.1}, 1};
  EXPECT_EQ(rho_hat_product(one, a1, b1), rho_hat(one, a1, b1));

  const double a[2] = {1.0, 0.0}, b[2] = {0.0, 1.0};
  const KernelParams two{1.0, 1.0, {0, 0}, 2};
  EXPECT_LT(rel(rho_hat_product(two, a, b), rho_hat(two, a, b)), 1e-13);

  EXPECT_EQ(rho_hat_product({0.0, 1.0, {1, 0}, 2}, a, b), complex(1.0, 0.0));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + i % 4;
    const KernelParams p{draw(rng, 1, 0.05, 6)[0], draw(rng, 1, -5, 5)[0],
                         {draw(rng, 1, -3, 3)[0], draw(rng, 1, -3, 3)[0]}, n};
    const auto al = draw(rng, n, -2, 2), be = draw(rng, n, -2, 2);
    EXPECT_LT(rel(rho_hat_product(p, al, be), rho_hat(p, al, be)), 1e-13);
  }
}

TEST(RhoHat, RejectsBadInput) {
  const double a[2] = {0, 0}, b[1] = {0};
  EXPECT_THROW(rho_hat({1.0, 1.0, {0, 0}, 2}, a, b), std::invalid_argument);
  EXPECT_THROW(rho_hat({-1.0, 1.0, {0, 0}, 1}, b, b), std::invalid_argument);
  EXPECT_THROW(rho_hat({1.0, 1.0, {0, 0}, 0}, {}, {}), std::invalid_argument);
}

TEST(RhoTilde, Examples) {
  const double z[1] = {0.0};
  EXPECT_NEAR(rho_tilde({1.0, 0.0, {0, 0}, 1}, z, z).real(), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(rho_tilde({1.0, 1.0, {0, 0}, 1}, z, z).real(), 0.31501817706845283332, 1e-15);
  EXPECT_THROW(rho_tilde({0.0, 1.0, {0, 0}, 1}, z, z), std::invalid_argument);
}

TEST(RhoTilde, TauZeroGaussianLimit) {
  for (double s : {0.3, 2.0}) {
    const double x[2] = {0.4, -0.2}, y[2] = {1.1, 0.3};
    const double r2 = 0.16 + 0.04 + 1.21 + 0.09;
    const complex got = rho_tilde({s, 0.0, {0, 0}, 2}, x, y);
    EXPECT_NEAR(got.real() / (std::pow(std::numbers::pi * s, -2) * std::exp(-r2 / s)), 1.0, 1e-13);
    EXPECT_EQ(got.imag(), 0.0);
  }
}

TEST(RhoTilde, MassEqualsZeroFrequencyTransform) {
  for (const KernelParams p : {KernelParams{1.0, 1.0, {0, 0}, 1}, KernelParams{0.5, -2.0, {1, 0}, 1},
                               KernelParams{2.0, 0.5, {0, 1}, 1}}) {
    const auto [A, B] = coefficients_ab(p.s, p.tau);
    const double width = std::sqrt(2.0 * a2_plus_b2(p.s, p.tau) / A);
    const auto rule = verify::composite_gauss_legendre(-12 * width, 12 * width, 24);
    complex mass{0, 0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double x[1] = {rule.nodes[i]}, y[1] = {rule.nodes[j]};
        mass += rule.weights[i] * rule.weights[j] * rho_tilde(p, x, y);
      }
    }
    const double z[1] = {0.0};
    EXPECT_LT(rel(mass, rho_hat(p, z, z)), 1e-12) << p.tau;
  }
}

TEST(HeatKernel, DiagonalValue) {
  for (double tau : {-1.5, 0.7, 3.0}) {
    const KernelParams p{0.8, tau, {0.5, 0.2}, 2};
    const double x[2] = {0.3, -1.0}, y[2] = {2.0, 0.4};
    const complex expect = std::pow(tau, 2) * std::exp(-p.gamma * p.s * tau / 4.0) /
                           (std::pow(4 * std::numbers::pi, 2) * std::pow(std::sinh(p.s * tau / 4), 2));
    EXPECT_LT(rel(heat_kernel_h(p, x, y, x, y), expect), 1e-13);
  }
}

TEST(HeatKernel, ConjugateSymmetric) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + i % 3;
    const KernelParams p{draw(rng, 1, 0.05, 5)[0], draw(rng, 1, -5, 5)[0], {draw(rng, 1, -3, 3)[0], 0.0}, n};
    const auto x = draw(rng, n, -2, 2), y = draw(rng, n, -2, 2), xp = draw(rng, n, -2, 2), yp = draw(rng, n, -2, 2);
    const complex h1 = heat_kernel_h(p, xp, yp, x, y);
    const complex h2 = heat_kernel_h(p, x, y, xp, yp);
    EXPECT_LE(std::abs(h1 - std::conj(h2)), 4 * std::numeric_limits<double>::epsilon() * std::abs(h1));
  }
}

TEST(HeatKernel, TwistFactorization) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 3;
    const KernelParams p{draw(rng, 1, 0.05, 5)[0], draw(rng, 1, -5, 5)[0],
                         {draw(rng, 1, -3, 3)[0], draw(rng, 1, -3, 3)[0]}, n};
    const auto x = draw(rng, n, -2, 2), y = draw(rng, n, -2, 2), xp = draw(rng, n, -2, 2), yp = draw(rng, n, -2, 2);
    std::vector<double> dx(n), dy(n);
    double twist = 0;
    for (int j = 0; j < n; ++j) {
      dx[j] = x[j] - xp[j];
      dy[j] = y[j] - yp[j];
      twist += dx[j] * yp[j];
    }
    const complex factored = rho_tilde(p, dx, dy) * std::polar(1.0, -p.tau * twist);
    EXPECT_LT(rel(heat_kernel_h(p, xp, yp, x, y), factored), 1e-12);
  }
}

TEST(HeatKernel, TauZeroLimit) {
  const double x[1] = {0.5}, y[1] = {-0.3}, xp[1] = {-0.1}, yp[1] = {0.2};
  const double s = 0.7;
  const double expect = std::exp(-(0.36 + 0.25) / s) / (std::numbers::pi * s);
  EXPECT_NEAR(heat_kernel_h({s, 0.0, {0, 0}, 1}, xp, yp, x, y).real() / expect, 1.0, 1e-14);
  // near zero tau the two sides of the series switch agree
  const complex a = heat_kernel_h({s, 0.99 * kSeriesSwitch * 4 / s, {0, 0}, 1}, xp, yp, x, y);
  const complex b = heat_kernel_h({s, 1.01 * kSeriesSwitch * 4 / s, {0, 0}, 1}, xp, yp, x, y);
  EXPECT_LT(rel(a, b), 1e-5);
}

TEST(HeatKernel, RejectsNonPositiveTime) {
  const double z[1] = {0};
  EXPECT_THROW(heat_kernel_h({0.0, 1.0, {0, 0}, 1}, z, z, z, z), std::invalid_argument);
}

TEST(Simplification, Examples) {
  const auto r12 = simplification_identities(1.0, 2.0);
  EXPECT_NEAR(r12.ratio_b, 1.0, 1e-15);
  EXPECT_NEAR(r12.ratio_ab, 2.1639534137386528488, 1e-14);
  const auto r21 = simplification_identities(2.0, 1.0);
  EXPECT_NEAR(r21.ratio_b, 0.5, 1e-15);
  EXPECT_NEAR(r21.ratio_ab, 2.1639534137386528488, 1e-14);
  EXPECT_EQ(simplification_identities(1.3, -0.8).ratio_b, -simplification_identities(1.3, 0.8).ratio_b);
  EXPECT_THROW(simplification_identities(1.0, 0.0), std::invalid_argument);
}

TEST(Simplification, HoldsAcrossDomain) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> s_dist(1e-3, 10.0), t_dist(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = s_dist(rng), tau = t_dist(rng);
    const auto r = simplification_identities(s, tau);
    EXPECT_NEAR(r.ratio_b / (tau / 2), 1.0, 1e-12);
    EXPECT_NEAR(r.ratio_ab * std::tanh(s * tau / 4), 1.0, 1e-12);
  }
}

TEST(KernelParams, BoxbConvenience) {
  const auto p = KernelParams::boxb(1.0, 2.0, 3, 1);
  EXPECT_EQ(p.gamma, complex(1.0, 0.0));
  EXPECT_THROW(KernelParams::boxb(1.0, 2.0, 3, 4), std::invalid_argument);
}
