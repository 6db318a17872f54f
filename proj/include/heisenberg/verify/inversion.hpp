/**
 * @file inversion.hpp
 * @brief Gaussian-inversion oracle: rho_tilde recovered from rho_hat by a 2-D DFT.
 *
 * With d_alpha = extent / N and alpha_j = (j - N/2) d_alpha, the spatial grid
 * is x_k = (k - N/2) 2 pi / extent and
 *   rho_tilde(x_k, y_l) ~ (d_alpha / 2 pi)^2 sum_{j,m} rho_hat(alpha_j, beta_m) e^{i(alpha_j x_k + beta_m y_l)}.
 * The (j - N/2)(k - N/2) cross terms reduce to checkerboard signs for even N.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "heisenberg/kernels.hpp"
#include "heisenberg/series.hpp"

namespace heisenberg::verify {

inline constexpr double kDecayThreshold = 1e-12;

struct InversionResult {
  double max_rel_error = 0.0;  // max |dft - rho_tilde| / max |rho_tilde| on the central quarter
  complex dft_origin;
  complex closed_origin;
  double boundary_ratio = 0.0;  // max |rho_hat| on the frequency border / |rho_hat(0,0)|
};

namespace detail {

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

}  // namespace detail

inline InversionResult dft_inversion_check(const KernelParams& params, double grid_extent,
                                           int grid_count) {
  if (params.n != 1) throw std::invalid_argument("dft_inversion_check: n = 1 only");
  if (!(params.s > 0.0)) throw std::invalid_argument("dft_inversion_check: s must be > 0");
  if (grid_count < 8 || grid_count % 4 != 0) {
    throw std::invalid_argument("dft_inversion_check: grid_count must be a multiple of 4");
  }
  if (!(grid_extent > 0.0)) throw std::invalid_argument("dft_inversion_check: extent must be > 0");

  const int n = grid_count;
  const auto total = static_cast<std::size_t>(n) * n;
  std::unique_ptr<fftw_complex, detail::FftwDeleter> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total)));
  if (!buf) throw std::bad_alloc();

  const double d_alpha = grid_extent / n;
  const double zero[1] = {0.0};
  const double peak = std::abs(rho_hat(params, zero, zero));
  double border = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const double a[1] = {(j - n / 2) * d_alpha};
      const double b[1] = {(m - n / 2) * d_alpha};
      complex v = rho_hat(params, a, b);
      if (j == 0 || m == 0 || j == n - 1 || m == n - 1) border = std::max(border, std::abs(v));
      if ((j + m) % 2 != 0) v = -v;
      buf.get()[static_cast<std::size_t>(j) * n + m][0] = v.real();
      buf.get()[static_cast<std::size_t>(j) * n + m][1] = v.imag();
    }
  }
  const double boundary_ratio = border / peak;
  if (boundary_ratio > kDecayThreshold) {
    throw ConvergenceError("dft_inversion_check: rho_hat has not decayed at the frequency border (" +
                           std::to_string(boundary_ratio) + ")");
  }

  {
    std::unique_ptr<fftw_plan_s, detail::FftwPlanDeleter> plan(
        fftw_plan_dft_2d(n, n, buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
    fftw_execute(plan.get());
  }

  const double scale = std::pow(d_alpha / (2.0 * std::numbers::pi), 2);
  const double dx = 2.0 * std::numbers::pi / grid_extent;
  double max_diff = 0.0;
  double max_ref = 0.0;
  InversionResult out;
  for (int k = n / 4; k < 3 * n / 4; ++k) {
    for (int l = n / 4; l < 3 * n / 4; ++l) {
      const auto& c = buf.get()[static_cast<std::size_t>(k) * n + l];
      complex dft(c[0], c[1]);
      dft *= ((k + l) % 2 != 0 ? -scale : scale);
      const double x[1] = {(k - n / 2) * dx};
      const double y[1] = {(l - n / 2) * dx};
      const complex ref = rho_tilde(params, x, y);
      max_diff = std::max(max_diff, std::abs(dft - ref));
      max_ref = std::max(max_ref, std::abs(ref));
      if (k == n / 2 && l == n / 2) {
        out.dft_origin = dft;
        out.closed_origin = ref;
      }
    }
  }
  out.max_rel_error = max_diff / max_ref;
  out.boundary_ratio = boundary_ratio;
  return out;
}

}  // namespace heisenberg::verify
