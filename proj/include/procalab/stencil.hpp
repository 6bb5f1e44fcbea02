#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "procalab/errors.hpp"
#include "procalab/grid.hpp"

namespace procalab {

/// Centered finite-difference grad, div and curl on a periodic collocated grid.
///
/// Centered stencils are skew-symmetric and mutually commuting on a periodic
/// grid, so div∘curl and curl∘grad vanish up to round-off and the discrete
/// energy functional of the field equations is conserved by the semi-discrete
/// system. The operators are templated on the value type so the same stencils
/// act on real fields and on the complex field E − iB.
class SpatialOps {
 public:
  SpatialOps(const Grid& grid, int order) : grid_(grid), order_(order) {
    if (order != 2 && order != 4) throw PreconditionError("unsupported stencil order " + std::to_string(order));
  }

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }

  /// Effective wavenumber of the stencil: D e^{ikx} = i·symbol(k)·e^{ikx}.
  double symbol(double k, std::size_t axis) const {
    if (!grid_.active(axis)) return 0.0;
    const double h = grid_.spacing[axis];
    const double theta = k * h;
    if (order_ == 2) return std::sin(theta) / h;
    return (8.0 * std::sin(theta) - std::sin(2.0 * theta)) / (6.0 * h);
  }

  Vec3 symbol(const Vec3& k) const { return {symbol(k[0], 0), symbol(k[1], 1), symbol(k[2], 2)}; }

  /// max_θ |symbol|·h, the largest effective wave speed factor of the stencil.
  static double max_symbol_factor(int order) {
    if (order == 2) return 1.0;
    if (order == 4) {
      // extremum of (8 sin θ − sin 2θ)/6 sits at cos θ = 1 − √6/2
      const double c = 1.0 - std::sqrt(6.0) / 2.0;
      const double s = std::sqrt(1.0 - c * c);
      return s * (4.0 - c) / 3.0;
    }
    throw PreconditionError("unsupported stencil order " + std::to_string(order));
  }

  /// ∂f/∂x_axis. Zero along inactive axes.
  template <class V>
  std::vector<V> derivative(const std::vector<V>& f, std::size_t axis) const {
    require_shape(grid_, f, "derivative");
    std::vector<V> out(f.size(), V{});
    if (!grid_.active(axis)) return out;

    const std::size_t n = grid_.extents[axis];
    const std::ptrdiff_t stride = axis == 0 ? 1
                                  : axis == 1 ? static_cast<std::ptrdiff_t>(grid_.extents[0])
                                              : static_cast<std::ptrdiff_t>(grid_.extents[0] * grid_.extents[1]);
    // offset tables: shift[o][c] is the linear-index jump from coordinate c to c + o (mod n)
    auto shift = [&](std::ptrdiff_t o) {
      std::vector<std::ptrdiff_t> t(n);
      for (std::size_t c = 0; c < n; ++c) {
        const auto target = (static_cast<std::ptrdiff_t>(c) + o + static_cast<std::ptrdiff_t>(n)) %
                            static_cast<std::ptrdiff_t>(n);
        t[c] = (target - static_cast<std::ptrdiff_t>(c)) * stride;
      }
      return t;
    };
    const auto p1 = shift(1), m1 = shift(-1);
    const double h = grid_.spacing[axis];

    const auto& ext = grid_.extents;
    if (order_ == 2) {
      const double w = 1.0 / (2.0 * h);
      for (std::size_t k = 0; k < ext[2]; ++k)
        for (std::size_t j = 0; j < ext[1]; ++j)
          for (std::size_t i = 0; i < ext[0]; ++i) {
            const std::size_t idx = grid_.index(i, j, k);
            const std::size_t c = axis == 0 ? i : axis == 1 ? j : k;
            out[idx] = (f[idx + p1[c]] - f[idx + m1[c]]) * w;
          }
    } else {
      const auto p2 = shift(2), m2 = shift(-2);
      const double w = 1.0 / (12.0 * h);
      for (std::size_t k = 0; k < ext[2]; ++k)
        for (std::size_t j = 0; j < ext[1]; ++j)
          for (std::size_t i = 0; i < ext[0]; ++i) {
            const std::size_t idx = grid_.index(i, j, k);
            const std::size_t c = axis == 0 ? i : axis == 1 ? j : k;
            out[idx] = (8.0 * (f[idx + p1[c]] - f[idx + m1[c]]) - (f[idx + p2[c]] - f[idx + m2[c]])) * w;
          }
    }
    return out;
  }

  template <class V>
  GridVector<V> grad(const std::vector<V>& f) const {
    return {derivative(f, 0), derivative(f, 1), derivative(f, 2)};
  }

  template <class V>
  std::vector<V> div(const GridVector<V>& f) const {
    std::vector<V> out = derivative(f[0], 0);
    for (std::size_t a = 1; a < 3; ++a) {
      if (!grid_.active(a)) continue;
      const auto d = derivative(f[a], a);
      for (std::size_t n = 0; n < out.size(); ++n) out[n] += d[n];
    }
    return out;
  }

  template <class V>
  GridVector<V> curl(const GridVector<V>& f) const {
    GridVector<V> out;
    for (std::size_t a = 0; a < 3; ++a) {
      const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
      // (curl f)_a = ∂_b f_c − ∂_c f_b
      auto d1 = derivative(f[c], b);
      const auto d2 = derivative(f[b], c);
      for (std::size_t n = 0; n < d1.size(); ++n) d1[n] -= d2[n];
      out[a] = std::move(d1);
    }
    return out;
  }

 private:
  Grid grid_;
  int order_;
};

/// Largest stable RK4 step for the centered scheme: 0.7·Δx_min / (√d · c_eff).
inline double cfl_limit(const Grid& grid, int order) {
  return 0.7 * grid.min_spacing() /
         (std::sqrt(static_cast<double>(grid.active_dims)) * SpatialOps::max_symbol_factor(order));
}

}  // namespace procalab
