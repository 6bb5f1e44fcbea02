#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "procalab/errors.hpp"
#include "procalab/grid.hpp"
#include "procalab/planewave.hpp"
#include "procalab/stencil.hpp"

namespace procalab {

struct SolverConfig {
  double mu = 0.0;
  double dt = 0.0;
  int stencil_order = 4;
  std::size_t steps = 0;
  bool cfl_check = true;
  std::size_t output_every = 1;
};

struct Diagnostics {
  double time = 0.0;
  double total_energy = 0.0;
  double max_div_b = 0.0;
  double max_gauss_residual = 0.0;   // max |∇·E + μ²φ|
  double max_lorenz_residual = 0.0;  // max |∇·(∂E/∂t) − μ²∇·A|
};

/// Non-finite values appeared during integration. Carries the diagnostics
/// recorded up to the last good state.
class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(const std::string& what, std::vector<Diagnostics> history = {})
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<Diagnostics>& history() const { return history_; }

 private:
  std::vector<Diagnostics> history_;
};

inline void validate(const SolverConfig& cfg, const Grid& grid) {
  if (!(cfg.mu >= 0.0) || !std::isfinite(cfg.mu)) throw PreconditionError("mu must be finite and non-negative");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw PreconditionError("dt must be positive");
  if (cfg.stencil_order != 2 && cfg.stencil_order != 4) throw PreconditionError("stencil order must be 2 or 4");
  if (cfg.output_every == 0) throw PreconditionError("output interval must be at least 1 step");
  if (cfg.cfl_check && cfg.dt > cfl_limit(grid, cfg.stencil_order))
    throw PreconditionError("dt " + std::to_string(cfg.dt) + " exceeds CFL limit " +
                            std::to_string(cfl_limit(grid, cfg.stencil_order)));
}

/// Time derivative of the first-order massive field system (c = 1):
///   ∂E/∂t = ∇×B + μ²A      ∂B/∂t = −∇×E
///   ∂A/∂t = −E − ∇φ        ∂φ/∂t = −∇·A
/// The last line is not an independent assumption. The divergence of the
/// first line, with ∇·∇× = 0 and ∇·E = −μ²φ, gives μ²(∂φ/∂t + ∇·A) = 0.
inline EMFieldState rhs(const EMFieldState& s, double mu, const SpatialOps& ops) {
  s.validate();
  if (!(s.grid == ops.grid())) throw ShapeError("rhs: state grid differs from operator grid");
  const double mu2 = mu * mu;
  EMFieldState d{s.grid, ops.curl(s.b), ops.curl(s.e), {}, ops.div(s.a)};
  const auto grad_phi = ops.grad(s.phi);
  for (std::size_t c = 0; c < 3; ++c) {
    auto& de = d.e[c];
    auto& db = d.b[c];
    d.a[c].resize(s.grid.size());
    for (std::size_t n = 0; n < de.size(); ++n) {
      de[n] += mu2 * s.a[c][n];
      db[n] = -db[n];
      d.a[c][n] = -s.e[c][n] - grad_phi[c][n];
    }
  }
  for (auto& v : d.phi) v = -v;
  return d;
}

/// One classical fourth-order Runge–Kutta step.
inline EMFieldState step_rk4(const EMFieldState& s, double dt, double mu, const SpatialOps& ops) {
  const EMFieldState k1 = rhs(s, mu, ops);
  EMFieldState tmp = s;
  tmp.axpy(0.5 * dt, k1);
  const EMFieldState k2 = rhs(tmp, mu, ops);
  tmp = s;
  tmp.axpy(0.5 * dt, k2);
  const EMFieldState k3 = rhs(tmp, mu, ops);
  tmp = s;
  tmp.axpy(dt, k3);
  const EMFieldState k4 = rhs(tmp, mu, ops);

  EMFieldState out = s;
  out.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
  if (!out.all_finite()) throw IntegrationDiverged("integration diverged: non-finite field value");
  return out;
}

/// Volume sum of ½(E² + B² + μ²A² + μ²φ²). Its flux is E×B + μ²φA, so it is
/// conserved on a periodic domain.
inline double total_energy(const EMFieldState& s, double mu) {
  s.validate();
  const double mu2 = mu * mu;
  double sum = 0.0;
  for (std::size_t n = 0; n < s.grid.size(); ++n) {
    double u = s.phi[n] * s.phi[n] * mu2;
    for (std::size_t c = 0; c < 3; ++c)
      u += s.e[c][n] * s.e[c][n] + s.b[c][n] * s.b[c][n] + mu2 * s.a[c][n] * s.a[c][n];
    sum += u;
  }
  return 0.5 * sum * s.grid.cell_volume();
}

inline Diagnostics compute_diagnostics(const EMFieldState& s, double mu, const SpatialOps& ops, double time) {
  const double mu2 = mu * mu;
  Diagnostics d;
  d.time = time;
  d.total_energy = total_energy(s, mu);
  d.max_div_b = max_abs(ops.div(s.b));

  const auto div_e = ops.div(s.e);
  const auto div_a = ops.div(s.a);
  for (std::size_t n = 0; n < div_e.size(); ++n)
    d.max_gauss_residual = std::max(d.max_gauss_residual, std::abs(div_e[n] + mu2 * s.phi[n]));

  // Rate form of the Lorenz relation: ∂(∇·E)/∂t must equal μ²∇·A.
  const auto div_de = ops.div(rhs(s, mu, ops).e);
  for (std::size_t n = 0; n < div_e.size(); ++n)
    d.max_lorenz_residual = std::max(d.max_lorenz_residual, std::abs(div_de[n] - mu2 * div_a[n]));
  return d;
}

struct EvolveResult {
  EMFieldState final_state;
  std::vector<Diagnostics> diagnostics;
  std::vector<std::string> warnings;
};

/// Called at every output point with the step index, the state and its diagnostics.
using EvolveObserver = std::function<void(std::size_t, const EMFieldState&, const Diagnostics&)>;

/// Runs `cfg.steps` RK4 steps, recording diagnostics at step 0, every
/// `output_every` steps, and at the final step.
inline EvolveResult evolve(EMFieldState init, const SolverConfig& cfg, const EvolveObserver& observer = {}) {
  init.validate();
  validate(cfg, init.grid);
  const SpatialOps ops(init.grid, cfg.stencil_order);

  EvolveResult result{std::move(init), {}, {}};
  auto emit = [&](std::size_t step) {
    const Diagnostics d = compute_diagnostics(result.final_state, cfg.mu, ops, static_cast<double>(step) * cfg.dt);
    result.diagnostics.push_back(d);
    if (observer) observer(step, result.final_state, d);
  };

  emit(0);
  {
    const Diagnostics& d0 = result.diagnostics.front();
    const double scale = max_abs(ops.div(result.final_state.e)) + max_abs(ops.div(result.final_state.b)) +
                         cfg.mu * cfg.mu * max_abs(result.final_state.phi);
    if (d0.max_gauss_residual > 1e-3 * scale + 1e-12 || d0.max_div_b > 1e-3 * scale + 1e-12)
      result.warnings.push_back("initial state violates the Gauss or div B constraint beyond tolerance");
  }

  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    try {
      result.final_state = step_rk4(result.final_state, cfg.dt, cfg.mu, ops);
    } catch (const IntegrationDiverged& e) {
      throw IntegrationDiverged(std::string(e.what()) + " at step " + std::to_string(step), result.diagnostics);
    }
    if (step % cfg.output_every == 0 || step == cfg.steps) emit(step);
  }
  return result;
}

/// Exact eigenmode of the semi-discrete system: amplitudes built from the
/// stencil's effective wavenumbers, so sampling at time t reproduces the
/// spatially discretized solution with no spatial truncation error.
inline PlaneWaveMode discrete_mode(const SpatialOps& ops, const Vec3& k, double mu, ModeKind kind,
                                   std::complex<double> amplitude) {
  return make_mode(k, ops.symbol(k), mu, kind, amplitude);
}

}  // namespace procalab
