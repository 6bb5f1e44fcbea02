#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "procalab/errors.hpp"
#include "procalab/grid.hpp"

namespace procalab {

enum class ModeKind { transverse1, transverse2, longitudinal };

inline std::string_view to_string(ModeKind k) {
  switch (k) {
    case ModeKind::transverse1: return "transverse1";
    case ModeKind::transverse2: return "transverse2";
    case ModeKind::longitudinal: return "longitudinal";
  }
  return "?";
}

inline std::optional<ModeKind> parse_mode_kind(std::string_view s) {
  if (s == "transverse1" || s == "transverse-1") return ModeKind::transverse1;
  if (s == "transverse2" || s == "transverse-2") return ModeKind::transverse2;
  if (s == "longitudinal") return ModeKind::longitudinal;
  return std::nullopt;
}

/// Complex amplitudes of a plane wave ∝ exp(i(k·x − ωt)); physical fields are
/// the real parts. `k` sets the phase. `k_symbol` is the wavevector used in
/// the amplitude relations and in ω: equal to `k` for a continuum mode, the
/// stencil's effective wavenumber for an exact eigenmode of a discrete system.
struct PlaneWaveMode {
  Vec3 k{};
  Vec3 k_symbol{};
  double mu = 0.0;
  double omega = 0.0;
  ModeKind kind = ModeKind::transverse1;
  CVec3 e{}, b{}, a{};
  std::complex<double> phi{};
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

/// ω = sqrt(k·k + μ²).
inline double dispersion(const Vec3& k, double mu) {
  if (!(mu >= 0.0)) throw PreconditionError("mass parameter mu must be non-negative");
  return std::sqrt(dot(k, k) + mu * mu);
}

/// Transverse unit vectors: normalize(k × ẑ) and normalize(k × first), or
/// (x̂, ŷ) when k is along ẑ.
inline std::pair<Vec3, Vec3> polarization_basis(const Vec3& k) {
  const Vec3 kxz = cross(k, {0.0, 0.0, 1.0});
  if (norm(kxz) <= 1e-12 * norm(k)) return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  const Vec3 t1 = normalized(kxz);
  return {t1, normalized(cross(k, t1))};
}

/// Mode whose amplitudes solve the field equations with derivatives replaced
/// by i·k_symbol and ∂/∂t by −iω.
inline PlaneWaveMode make_mode(const Vec3& k, const Vec3& k_symbol, double mu, ModeKind kind,
                               std::complex<double> amplitude) {
  if (!(mu >= 0.0)) throw PreconditionError("mass parameter mu must be non-negative");
  const double kn = norm(k_symbol);
  if (kind == ModeKind::longitudinal && !(mu > 0.0))
    throw PreconditionError("longitudinal mode requires mu > 0: at mu = 0 it violates div(E - iB) = 0");
  if (kind != ModeKind::longitudinal && (norm(k) == 0.0 || kn == 0.0))
    throw PreconditionError("transverse mode requires a nonzero wavevector");

  const std::complex<double> i(0.0, 1.0);
  PlaneWaveMode m;
  m.k = k;
  m.k_symbol = k_symbol;
  m.mu = mu;
  m.kind = kind;
  m.omega = std::sqrt(kn * kn + mu * mu);

  if (kind == ModeKind::longitudinal) {
    // A ∥ k; the Lorenz relation fixes φ = |k|A/ω and E = −∂A/∂t − ∇φ = i(μ²/ω)A.
    const Vec3 dir = kn > 0.0 ? normalized(k_symbol) : Vec3{1.0, 0.0, 0.0};
    const std::complex<double> e_scale = i * (mu * mu / m.omega) * amplitude;
    for (std::size_t c = 0; c < 3; ++c) {
      m.a[c] = amplitude * dir[c];
      m.e[c] = e_scale * dir[c];
      m.b[c] = 0.0;
    }
    m.phi = amplitude * (kn / m.omega);
    return m;
  }

  const auto [t1, t2] = polarization_basis(k_symbol);
  const Vec3& pol = kind == ModeKind::transverse1 ? t1 : t2;
  const Vec3 kxp = cross(k_symbol, pol);
  for (std::size_t c = 0; c < 3; ++c) {
    m.a[c] = amplitude * pol[c];
    m.e[c] = i * m.omega * m.a[c];
    m.b[c] = i * amplitude * kxp[c];
  }
  m.phi = 0.0;
  return m;
}

inline PlaneWaveMode make_mode(const Vec3& k, double mu, ModeKind kind, std::complex<double> amplitude) {
  return make_mode(k, k, mu, kind, amplitude);
}

/// True when every active-axis component of k fits an integer number of
/// wavelengths into the box and inactive components vanish.
inline bool commensurate(const Vec3& k, const Grid& grid) {
  for (std::size_t a = 0; a < 3; ++a) {
    if (!grid.active(a)) {
      if (std::abs(k[a]) > 1e-12) return false;
      continue;
    }
    const double cycles = k[a] * grid.length(a) / (2.0 * std::numbers::pi);
    if (std::abs(cycles - std::round(cycles)) > 1e-8 * std::max(1.0, std::abs(cycles))) return false;
  }
  return true;
}

/// Real part of the mode on the grid points at time t.
inline EMFieldState sample(const PlaneWaveMode& mode, const Grid& grid, double t) {
  if (!commensurate(mode.k, grid))
    throw PreconditionError("wavevector is not commensurate with the periodic grid");
  EMFieldState s = EMFieldState::zeros(grid);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t kk = 0; kk < grid.extents[2]; ++kk)
    for (std::size_t j = 0; j < grid.extents[1]; ++j)
      for (std::size_t ii = 0; ii < grid.extents[0]; ++ii) {
        const std::size_t n = grid.index(ii, j, kk);
        const std::complex<double> ph = std::exp(i * (dot(mode.k, grid.position(ii, j, kk)) - mode.omega * t));
        for (std::size_t c = 0; c < 3; ++c) {
          s.e[c][n] = (mode.e[c] * ph).real();
          s.b[c][n] = (mode.b[c] * ph).real();
          s.a[c][n] = (mode.a[c] * ph).real();
        }
        s.phi[n] = (mode.phi * ph).real();
      }
  return s;
}

}  // namespace procalab
