/**
 * @file apply.hpp
 * @brief H[f](s, x, y) for f sampled on a uniform (x, y) grid.
 *
 * The source integral is the tensor trapezoid rule on the input grid; the
 * result is evaluated at every node of the output grid.
 */
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisenberg/grid.hpp"
#include "heisenberg/kernels.hpp"

namespace heisenberg {

namespace detail {

// Maps each axis of `grid` onto (x_j | y_j). Returns, per axis, the slot
// index into a 2n-vector laid out as {x_1..x_n, y_1..y_n}.
inline std::vector<std::size_t> spatial_slots(const GridSpec& grid, int n, bool require_all) {
  const std::vector<std::string> families{"x", "y"};
  std::vector<std::size_t> slots;
  std::vector<bool> used(2 * static_cast<std::size_t>(n), false);
  for (const auto& a : grid.axes) {
    const auto t = resolve_axis(a.name, families, n);
    if (t.kind != AxisTarget::Kind::Coordinate) {
      throw std::invalid_argument("apply: axis '" + a.name + "' is not a spatial axis");
    }
    const std::size_t slot = t.family * n + t.index;
    if (used[slot]) throw std::invalid_argument("apply: axis '" + a.name + "' declared twice");
    used[slot] = true;
    slots.push_back(slot);
  }
  if (require_all) {
    for (bool u : used) {
      if (!u) throw std::invalid_argument("apply: input grid must span every x_j and y_j axis");
    }
  }
  return slots;
}

}  // namespace detail

/// Applies H at params.s to the sampled function `input` and samples the
/// result on `output`. Throws std::invalid_argument on grid mismatch.
inline FieldSample apply_heat_kernel_sampled(const KernelParams& params, const FieldSample& input,
                                             const GridSpec& output) {
  detail::check_params(params, "apply");
  if (!(params.s > 0.0)) throw std::invalid_argument("apply: s must be > 0");
  input.grid.validate();
  output.validate();
  if (input.values.size() != input.grid.size()) {
    throw std::invalid_argument("apply: input value count does not match its grid");
  }
  const int n = params.n;
  const auto in_slots = detail::spatial_slots(input.grid, n, true);
  const auto out_slots = detail::spatial_slots(output, n, false);
  for (const auto& a : input.grid.axes) {
    if (a.count < 2) throw std::invalid_argument("apply: input axis '" + a.name + "' needs count >= 2");
  }

  // Source nodes and trapezoid weights.
  const std::size_t n_in = input.grid.size();
  std::vector<std::vector<double>> src(n_in, std::vector<double>(2 * n, 0.0));
  std::vector<double> weight(n_in, 1.0);
  for (std::size_t flat = 0; flat < n_in; ++flat) {
    const auto idx = input.grid.unravel(flat);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& axis = input.grid.axes[k];
      src[flat][in_slots[k]] = axis.node(idx[k]);
      const bool end = idx[k] == 0 || idx[k] == axis.count - 1;
      weight[flat] *= axis.step() * (end ? 0.5 : 1.0);
    }
  }

  FieldSample out{output, {}, params, "apply:heat-kernel"};
  out.values.reserve(output.size());
  std::vector<double> dst(2 * n, 0.0);
  const std::span<const double> dst_x(dst.data(), n), dst_y(dst.data() + n, n);
  for (std::size_t flat = 0; flat < output.size(); ++flat) {
    const auto idx = output.unravel(flat);
    for (std::size_t k = 0; k < idx.size(); ++k) dst[out_slots[k]] = output.axes[k].node(idx[k]);
    complex acc{0.0, 0.0};
    for (std::size_t q = 0; q < n_in; ++q) {
      if (input.values[q] == complex{0.0, 0.0}) continue;
      const std::span<const double> sx(src[q].data(), n), sy(src[q].data() + n, n);
      acc += weight[q] * heat_kernel_h(params, sx, sy, dst_x, dst_y) * input.values[q];
    }
    out.values.push_back(acc);
  }
  return out;
}

}  // namespace heisenberg
