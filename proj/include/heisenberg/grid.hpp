/**
 * @file grid.hpp
 * @brief Rectangular evaluation grids and the FieldSample container.
 *
 * Axis names are alpha, beta, x, y, xp, yp (with a 1-based coordinate suffix
 * when n > 1, e.g. alpha2; the suffix is optional when n = 1) and the
 * parameter axes s and tau. Coordinates without an axis are held at 0.
 * Values are stored row-major: the first declared axis varies slowest.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heisenberg/kernels.hpp"

namespace heisenberg {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  /// Uniform node i; a single-node axis sits at min.
  double node(int i) const {
    if (count == 1) return min;
    return min + (max - min) * static_cast<double>(i) / (count - 1);
  }
  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
};

struct GridSpec {
  std::vector<Axis> axes;

  std::size_t size() const {
    std::size_t total = 1;
    for (const auto& a : axes) total *= static_cast<std::size_t>(a.count);
    return total;
  }

  void validate() const {
    for (const auto& a : axes) {
      if (a.count < 1) throw std::invalid_argument("axis '" + a.name + "': count must be >= 1");
      if (!(a.min <= a.max)) throw std::invalid_argument("axis '" + a.name + "': min > max");
    }
  }

  /// Per-axis indices of flat index `flat`.
  std::vector<int> unravel(std::size_t flat) const {
    std::vector<int> idx(axes.size(), 0);
    for (std::size_t k = axes.size(); k-- > 0;) {
      const auto c = static_cast<std::size_t>(axes[k].count);
      idx[k] = static_cast<int>(flat % c);
      flat /= c;
    }
    return idx;
  }
};

enum class KernelKind { RhoHat, RhoHatProduct, RhoTilde, HeatKernel };

inline std::string_view kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::RhoHat: return "rho-hat";
    case KernelKind::RhoHatProduct: return "rho-hat-product";
    case KernelKind::RhoTilde: return "rho-tilde";
    case KernelKind::HeatKernel: return "heat-kernel";
  }
  return "";
}

inline KernelKind parse_kernel(std::string_view name) {
  if (name == "rho-hat") return KernelKind::RhoHat;
  if (name == "rho-hat-product") return KernelKind::RhoHatProduct;
  if (name == "rho-tilde") return KernelKind::RhoTilde;
  if (name == "heat-kernel" || name == "h") return KernelKind::HeatKernel;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

struct FieldSample {
  GridSpec grid;
  std::vector<complex> values;
  KernelParams params;
  std::string kernel;
};

namespace detail {

// Coordinate families each kernel reads, in argument order.
inline std::vector<std::string> kernel_families(KernelKind k) {
  switch (k) {
    case KernelKind::RhoHat:
    case KernelKind::RhoHatProduct: return {"alpha", "beta"};
    case KernelKind::RhoTilde: return {"x", "y"};
    case KernelKind::HeatKernel: return {"xp", "yp", "x", "y"};
  }
  return {};
}

struct AxisTarget {
  enum class Kind { Coordinate, S, Tau } kind = Kind::Coordinate;
  std::size_t family = 0;
  std::size_t index = 0;
};

// Resolves an axis name against the kernel's coordinate families.
inline AxisTarget resolve_axis(const std::string& name, const std::vector<std::string>& families,
                               int n) {
  if (name == "s") return {AxisTarget::Kind::S};
  if (name == "tau") return {AxisTarget::Kind::Tau};
  // Longest family prefix first so "xp" is not read as "x" + "p".
  std::optional<std::size_t> best;
  for (std::size_t f = 0; f < families.size(); ++f) {
    if (name.rfind(families[f], 0) == 0 &&
        (!best || families[f].size() > families[*best].size())) {
      best = f;
    }
  }
  if (best) {
    const std::string suffix = name.substr(families[*best].size());
    if (suffix.empty()) {
      if (n == 1) return {AxisTarget::Kind::Coordinate, *best, 0};
    } else if (suffix.find_first_not_of("0123456789") == std::string::npos &&
               suffix.size() < 6) {
      const int j = std::stoi(suffix);
      if (j >= 1 && j <= n) {
        return {AxisTarget::Kind::Coordinate, *best, static_cast<std::size_t>(j - 1)};
      }
    }
  }
  throw std::invalid_argument("axis '" + name + "' does not match the kernel's arguments");
}

}  // namespace detail

/// Pointwise kernel evaluation with explicit coordinate blocks (each of length n).
inline complex evaluate_kernel(KernelKind k, const KernelParams& p,
                               const std::vector<std::vector<double>>& coords) {
  switch (k) {
    case KernelKind::RhoHat: return rho_hat(p, coords[0], coords[1]);
    case KernelKind::RhoHatProduct: return rho_hat_product(p, coords[0], coords[1]);
    case KernelKind::RhoTilde: return rho_tilde(p, coords[0], coords[1]);
    case KernelKind::HeatKernel: return heat_kernel_h(p, coords[0], coords[1], coords[2], coords[3]);
  }
  throw std::logic_error("evaluate_kernel: unhandled kernel");
}

/// Samples `kernel` at every grid node. Throws std::invalid_argument when an
/// axis does not belong to the kernel or is declared twice.
inline FieldSample evaluate_on_grid(KernelKind kernel, const KernelParams& params,
                                    const GridSpec& grid) {
  grid.validate();
  detail::check_params(params, "evaluate_on_grid");
  const auto families = detail::kernel_families(kernel);
  std::vector<detail::AxisTarget> targets;
  for (const auto& axis : grid.axes) {
    const auto t = detail::resolve_axis(axis.name, families, params.n);
    for (const auto& prev : targets) {
      if (prev.kind == t.kind && prev.family == t.family && prev.index == t.index) {
        throw std::invalid_argument("axis '" + axis.name + "' declared twice");
      }
    }
    targets.push_back(t);
  }

  FieldSample out{grid, {}, params, std::string(kernel_name(kernel))};
  out.values.reserve(grid.size());
  std::vector<std::vector<double>> coords(families.size(),
                                          std::vector<double>(params.n, 0.0));
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto idx = grid.unravel(flat);
    KernelParams p = params;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double v = grid.axes[k].node(idx[k]);
      switch (targets[k].kind) {
        case detail::AxisTarget::Kind::S: p.s = v; break;
        case detail::AxisTarget::Kind::Tau: p.tau = v; break;
        case detail::AxisTarget::Kind::Coordinate:
          coords[targets[k].family][targets[k].index] = v;
          break;
      }
    }
    out.values.push_back(evaluate_kernel(kernel, p, coords));
  }
  return out;
}

}  // namespace heisenberg
