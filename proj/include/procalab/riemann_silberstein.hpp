#pragma once

#include <complex>
#include <utility>

#include "procalab/errors.hpp"
#include "procalab/grid.hpp"
#include "procalab/stencil.hpp"

namespace procalab {

/// The complex field Ψ = E − iB on a grid.
struct RSField {
  Grid grid;
  ComplexVectorField psi;
};

inline RSField compose(const Grid& grid, const VectorField& e, const VectorField& b) {
  require_shape(grid, e, "compose: E");
  require_shape(grid, b, "compose: B");
  RSField out{grid, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    out.psi[a].resize(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) out.psi[a][n] = {e[a][n], -b[a][n]};
  }
  return out;
}

inline RSField compose(const EMFieldState& s) { return compose(s.grid, s.e, s.b); }

/// E = Re Ψ, B = −Im Ψ.
inline std::pair<VectorField, VectorField> decompose(const RSField& f) {
  require_shape(f.grid, f.psi, "decompose");
  VectorField e = zero_vector_field(f.grid), b = zero_vector_field(f.grid);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t n = 0; n < f.grid.size(); ++n) {
      e[a][n] = f.psi[a][n].real();
      b[a][n] = -f.psi[a][n].imag();
    }
  return {std::move(e), std::move(b)};
}

/// Externally supplied ∂Ψ/∂t and ∂A/∂t.
struct RSTimeDerivatives {
  ComplexVectorField dpsi_dt;
  VectorField da_dt;
};

inline RSTimeDerivatives rs_time_derivatives(const EMFieldState& rate) {
  return {compose(rate).psi, rate.a};
}

struct ProcaRSResiduals {
  ComplexVectorField r19;  // Ψ + ∂A/∂t + i∇×A + ∇φ
  ComplexScalarField r20;  // ∇·Ψ + μ²φ
  ComplexVectorField r21;  // ∂Ψ/∂t − i∇×Ψ − μ²A
};

inline ProcaRSResiduals proca_rs_residuals(const RSField& psi, const VectorField& a, const ScalarField& phi, double mu,
                                           const RSTimeDerivatives& dt, const SpatialOps& ops) {
  const Grid& g = psi.grid;
  if (!(mu >= 0.0)) throw PreconditionError("mass parameter mu must be non-negative");
  if (!(g == ops.grid())) throw ShapeError("proca_rs_residuals: operator grid differs from field grid");
  require_shape(g, psi.psi, "psi");
  require_shape(g, a, "A");
  require_shape(g, phi, "phi");
  require_shape(g, dt.dpsi_dt, "dpsi/dt");
  require_shape(g, dt.da_dt, "dA/dt");

  const double mu2 = mu * mu;
  const std::complex<double> i(0.0, 1.0);
  const auto curl_a = ops.curl(a);
  const auto grad_phi = ops.grad(phi);
  const auto curl_psi = ops.curl(psi.psi);
  const auto div_psi = ops.div(psi.psi);

  ProcaRSResiduals r;
  r.r20.resize(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) r.r20[n] = div_psi[n] + mu2 * phi[n];
  for (std::size_t c = 0; c < 3; ++c) {
    r.r19[c].resize(g.size());
    r.r21[c].resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
      r.r19[c][n] = psi.psi[c][n] + dt.da_dt[c][n] + i * curl_a[c][n] + grad_phi[c][n];
      r.r21[c][n] = dt.dpsi_dt[c][n] - i * curl_psi[c][n] - mu2 * a[c][n];
    }
  }
  return r;
}

struct MaxwellRSResiduals {
  ComplexVectorField r14;  // ∂Ψ/∂t − i∇×Ψ
  ComplexScalarField r15;  // ∇·Ψ
};

inline MaxwellRSResiduals maxwell_rs_residuals(const RSField& psi, const ComplexVectorField& dpsi_dt,
                                               const SpatialOps& ops) {
  const Grid& g = psi.grid;
  if (!(g == ops.grid())) throw ShapeError("maxwell_rs_residuals: operator grid differs from field grid");
  require_shape(g, psi.psi, "psi");
  require_shape(g, dpsi_dt, "dpsi/dt");
  const std::complex<double> i(0.0, 1.0);
  const auto curl_psi = ops.curl(psi.psi);

  MaxwellRSResiduals r;
  r.r15 = ops.div(psi.psi);
  for (std::size_t c = 0; c < 3; ++c) {
    r.r14[c].resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) r.r14[c][n] = dpsi_dt[c][n] - i * curl_psi[c][n];
  }
  return r;
}

/// Residuals of the real field equations. Each complex residual above splits
/// into a pair of these: r19 = potential_e − i·potential_b,
/// r20 = gauss − i·div_b, r21 = ampere − i·faraday.
struct RealProcaResiduals {
  VectorField potential_e;  // E + ∂A/∂t + ∇φ
  VectorField potential_b;  // B − ∇×A
  ScalarField gauss;        // ∇·E + μ²φ
  ScalarField div_b;        // ∇·B
  VectorField ampere;       // ∂E/∂t − ∇×B − μ²A
  VectorField faraday;      // ∂B/∂t + ∇×E
};

inline RealProcaResiduals real_proca_residuals(const EMFieldState& s, const EMFieldState& rate, double mu,
                                               const SpatialOps& ops) {
  if (!(mu >= 0.0)) throw PreconditionError("mass parameter mu must be non-negative");
  s.validate();
  rate.validate();
  if (!(s.grid == rate.grid) || !(s.grid == ops.grid())) throw ShapeError("real_proca_residuals: grid mismatch");
  const std::size_t n_pts = s.grid.size();
  const double mu2 = mu * mu;
  const auto curl_a = ops.curl(s.a);
  const auto curl_b = ops.curl(s.b);
  const auto curl_e = ops.curl(s.e);
  const auto grad_phi = ops.grad(s.phi);

  RealProcaResiduals r;
  r.gauss = ops.div(s.e);
  for (std::size_t n = 0; n < n_pts; ++n) r.gauss[n] += mu2 * s.phi[n];
  r.div_b = ops.div(s.b);
  for (std::size_t c = 0; c < 3; ++c) {
    r.potential_e[c].resize(n_pts);
    r.potential_b[c].resize(n_pts);
    r.ampere[c].resize(n_pts);
    r.faraday[c].resize(n_pts);
    for (std::size_t n = 0; n < n_pts; ++n) {
      r.potential_e[c][n] = s.e[c][n] + rate.a[c][n] + grad_phi[c][n];
      r.potential_b[c][n] = s.b[c][n] - curl_a[c][n];
      r.ampere[c][n] = rate.e[c][n] - curl_b[c][n] - mu2 * s.a[c][n];
      r.faraday[c][n] = rate.b[c][n] + curl_e[c][n];
    }
  }
  return r;
}

}  // namespace procalab
