#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "procalab/errors.hpp"

namespace procalab {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<std::complex<double>, 3>;

/// Periodic collocated grid with 1 to 3 active axes. Active axes come first;
/// inactive axes have extent 1 and contribute no derivatives.
struct Grid {
  std::array<std::size_t, 3> extents{1, 1, 1};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  std::size_t active_dims = 1;

  static constexpr std::size_t kMinExtent = 8;

  static Grid make(std::span<const std::size_t> extents, std::span<const double> spacing) {
    if (extents.empty() || extents.size() > 3) throw PreconditionError("grid must have 1 to 3 axes");
    if (spacing.size() != extents.size()) throw PreconditionError("grid spacing must have one entry per axis");
    Grid g;
    g.active_dims = extents.size();
    for (std::size_t a = 0; a < extents.size(); ++a) {
      if (extents[a] < kMinExtent)
        throw PreconditionError("grid extent " + std::to_string(extents[a]) + " below minimum of 8 cells");
      if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) throw PreconditionError("grid spacing must be positive");
      g.extents[a] = extents[a];
      g.spacing[a] = spacing[a];
    }
    return g;
  }

  /// `dims` axes of `cells` cells each spanning [0, length).
  static Grid cubic(std::size_t dims, std::size_t cells, double length) {
    if (dims < 1 || dims > 3) throw PreconditionError("grid must have 1 to 3 axes");
    std::vector<std::size_t> e(dims, cells);
    std::vector<double> s(dims, length / static_cast<double>(cells));
    return make(e, s);
  }

  std::size_t size() const { return extents[0] * extents[1] * extents[2]; }
  bool active(std::size_t axis) const { return axis < active_dims; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + extents[0] * (j + extents[1] * k); }
  double length(std::size_t axis) const { return static_cast<double>(extents[axis]) * spacing[axis]; }

  double cell_volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < active_dims; ++a) v *= spacing[a];
    return v;
  }

  double min_spacing() const { return *std::min_element(spacing.begin(), spacing.begin() + active_dims); }

  Vec3 position(std::size_t i, std::size_t j, std::size_t k) const {
    Vec3 x{0.0, 0.0, 0.0};
    const std::array<std::size_t, 3> idx{i, j, k};
    for (std::size_t a = 0; a < active_dims; ++a) x[a] = static_cast<double>(idx[a]) * spacing[a];
    return x;
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

template <class V>
using GridVector = std::array<std::vector<V>, 3>;

using ScalarField = std::vector<double>;
using VectorField = GridVector<double>;
using ComplexScalarField = std::vector<std::complex<double>>;
using ComplexVectorField = GridVector<std::complex<double>>;

inline VectorField zero_vector_field(const Grid& g) {
  return {ScalarField(g.size(), 0.0), ScalarField(g.size(), 0.0), ScalarField(g.size(), 0.0)};
}

template <class V>
void require_shape(const Grid& g, const std::vector<V>& f, const char* what) {
  if (f.size() != g.size())
    throw ShapeError(std::string(what) + ": field has " + std::to_string(f.size()) + " points, grid has " +
                     std::to_string(g.size()));
}

template <class V>
void require_shape(const Grid& g, const GridVector<V>& f, const char* what) {
  for (const auto& c : f) require_shape(g, c, what);
}

/// Electric and magnetic fields together with the potentials (A, φ).
struct EMFieldState {
  Grid grid;
  VectorField e, b, a;
  ScalarField phi;

  static EMFieldState zeros(const Grid& g) {
    return {g, zero_vector_field(g), zero_vector_field(g), zero_vector_field(g), ScalarField(g.size(), 0.0)};
  }

  void validate() const {
    require_shape(grid, e, "E");
    require_shape(grid, b, "B");
    require_shape(grid, a, "A");
    require_shape(grid, phi, "phi");
  }

  /// The ten component arrays in the fixed order Ex Ey Ez Bx By Bz Ax Ay Az φ.
  std::array<ScalarField*, 10> components() {
    return {&e[0], &e[1], &e[2], &b[0], &b[1], &b[2], &a[0], &a[1], &a[2], &phi};
  }
  std::array<const ScalarField*, 10> components() const {
    return {&e[0], &e[1], &e[2], &b[0], &b[1], &b[2], &a[0], &a[1], &a[2], &phi};
  }

  /// this += alpha * x
  EMFieldState& axpy(double alpha, const EMFieldState& x) {
    auto dst = components();
    auto src = x.components();
    for (std::size_t c = 0; c < dst.size(); ++c) {
      auto& d = *dst[c];
      const auto& s = *src[c];
      for (std::size_t n = 0; n < d.size(); ++n) d[n] += alpha * s[n];
    }
    return *this;
  }

  EMFieldState& operator+=(const EMFieldState& x) { return axpy(1.0, x); }

  bool all_finite() const {
    for (const auto* c : components())
      for (double v : *c)
        if (!std::isfinite(v)) return false;
    return true;
  }
};

inline double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs(const ComplexScalarField& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

template <class V>
double max_abs(const GridVector<V>& f) {
  return std::max({max_abs(f[0]), max_abs(f[1]), max_abs(f[2])});
}

}  // namespace procalab
