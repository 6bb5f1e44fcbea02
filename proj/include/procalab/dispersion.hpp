#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "procalab/errors.hpp"
#include "procalab/field_solver.hpp"
#include "procalab/planewave.hpp"

namespace procalab {

/// Angular frequency from the mean spacing of sign changes (linear
/// interpolation between samples). Returns 0 when fewer than two crossings.
inline double zero_crossing_frequency(std::span<const double> samples, double dt) {
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());

  std::vector<double> crossings;
  for (std::size_t n = 1; n < samples.size(); ++n) {
    const double a = samples[n - 1] - mean, b = samples[n] - mean;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double frac = a / (a - b);
      crossings.push_back((static_cast<double>(n - 1) + frac) * dt);
    }
  }
  if (crossings.size() < 2) return 0.0;
  const double half_periods = static_cast<double>(crossings.size() - 1);
  return std::numbers::pi * half_periods / (crossings.back() - crossings.front());
}

namespace detail {

/// Least-squares residual of s ≈ a·cos(ωt) + b·sin(ωt) + c for fixed ω.
inline double sinusoid_residual(std::span<const double> s, double dt, double omega) {
  // normal equations over the basis (cos, sin, 1)
  double g[3][3] = {}, r[3] = {};
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double t = static_cast<double>(n) * dt;
    const double basis[3] = {std::cos(omega * t), std::sin(omega * t), 1.0};
    for (int i = 0; i < 3; ++i) {
      r[i] += basis[i] * s[n];
      for (int j = 0; j < 3; ++j) g[i][j] += basis[i] * basis[j];
    }
  }
  // Gaussian elimination with partial pivoting
  double x[3];
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(g[perm[row]][col]) > std::abs(g[perm[piv]][col])) piv = row;
    std::swap(perm[col], perm[piv]);
    const double d = g[perm[col]][col];
    if (std::abs(d) < 1e-300) return std::numeric_limits<double>::infinity();
    for (int row = col + 1; row < 3; ++row) {
      const double f = g[perm[row]][col] / d;
      for (int j = col; j < 3; ++j) g[perm[row]][j] -= f * g[perm[col]][j];
      r[perm[row]] -= f * r[perm[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double acc = r[perm[col]];
    for (int j = col + 1; j < 3; ++j) acc -= g[perm[col]][j] * x[j];
    x[col] = acc / g[perm[col]][col];
  }
  double res = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double t = static_cast<double>(n) * dt;
    const double e = s[n] - (x[0] * std::cos(omega * t) + x[1] * std::sin(omega * t) + x[2]);
    res += e * e;
  }
  return res;
}

}  // namespace detail

/// Frequency of a sampled sinusoid by least-squares fit of a·cos(ωt) + b·sin(ωt) + c.
/// The fit uses an integer number of periods of `omega_guess`; ω is searched
/// within ±30% of the guess by a coarse scan followed by golden-section refinement.
inline double fit_frequency(std::span<const double> samples, double dt, double omega_guess) {
  if (!(omega_guess > 0.0)) throw PreconditionError("frequency fit needs a positive initial estimate");
  const double period_samples = 2.0 * std::numbers::pi / (omega_guess * dt);
  const double whole = std::floor(static_cast<double>(samples.size() - 1) / period_samples);
  std::size_t count = samples.size();
  if (whole >= 1.0) count = static_cast<std::size_t>(std::llround(whole * period_samples)) + 1;
  count = std::min(count, samples.size());
  const auto s = samples.first(count);

  auto cost = [&](double w) { return detail::sinusoid_residual(s, dt, w); };
  const int scan = 240;
  const double lo = 0.7 * omega_guess, hi = 1.3 * omega_guess, step = (hi - lo) / scan;
  int best = 0;
  double best_cost = cost(lo);
  for (int n = 1; n <= scan; ++n) {
    const double c = cost(lo + n * step);
    if (c < best_cost) {
      best_cost = c;
      best = n;
    }
  }
  double a = lo + std::max(0, best - 1) * step, b = lo + std::min(scan, best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * omega_guess; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = cost(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = cost(x2);
    }
  }
  return 0.5 * (a + b);
}

struct DispersionOptions {
  int stencil_order = 4;
  double dt = 0.0;            // 0 selects cfl_fraction · cfl_limit
  double cfl_fraction = 0.5;
  double periods = 6.0;       // evolution length in analytic periods (at least 4)
  ModeKind kind = ModeKind::transverse1;
};

struct DispersionMeasurement {
  Vec3 k{};
  double mu = 0.0;
  double omega_analytic = 0.0;
  double omega_measured = 0.0;
  double omega_zero_crossing = 0.0;
  double rel_err = 0.0;
  bool resolved = true;  // max |k_a|Δx_a ≤ 1
  std::string warning;
};

/// Evolves a single continuum plane wave and fits the oscillation frequency
/// of one potential component at the grid origin. A zero wavevector uses the
/// uniform (rest) oscillation of the longitudinal polarization.
inline DispersionMeasurement measure_dispersion(const Vec3& k, double mu, const Grid& grid,
                                                const DispersionOptions& opt = {}) {
  if (!(mu >= 0.0)) throw PreconditionError("mass parameter mu must be non-negative");
  if (!commensurate(k, grid)) throw PreconditionError("wavevector is not commensurate with the periodic grid");
  if (opt.periods < 4.0) throw PreconditionError("dispersion measurement needs at least 4 periods");

  DispersionMeasurement out;
  out.k = k;
  out.mu = mu;
  out.omega_analytic = dispersion(k, mu);
  if (!(out.omega_analytic > 0.0)) throw PreconditionError("k = 0 and mu = 0 has no oscillation to measure");
  for (std::size_t a = 0; a < grid.active_dims; ++a)
    if (std::abs(k[a]) * grid.spacing[a] > 1.0) out.resolved = false;
  if (!out.resolved) out.warning = "mode under-resolved (k dx > 1): expect large discretization error";

  const ModeKind kind = norm(k) == 0.0 ? ModeKind::longitudinal : opt.kind;
  const PlaneWaveMode mode = make_mode(k, mu, kind, {1.0, 0.0});

  SolverConfig cfg;
  cfg.mu = mu;
  cfg.stencil_order = opt.stencil_order;
  cfg.dt = opt.dt > 0.0 ? opt.dt : opt.cfl_fraction * cfl_limit(grid, opt.stencil_order);
  validate(cfg, grid);
  const SpatialOps ops(grid, opt.stencil_order);

  std::size_t probe = 0;
  for (std::size_t c = 1; c < 3; ++c)
    if (std::abs(mode.a[c]) > std::abs(mode.a[probe])) probe = c;

  const double duration = opt.periods * 2.0 * std::numbers::pi / out.omega_analytic;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / cfg.dt));
  EMFieldState s = sample(mode, grid, 0.0);
  std::vector<double> series;
  series.reserve(steps + 1);
  series.push_back(s.a[probe][0]);
  for (std::size_t n = 0; n < steps; ++n) {
    s = step_rk4(s, cfg.dt, mu, ops);
    series.push_back(s.a[probe][0]);
  }

  out.omega_zero_crossing = zero_crossing_frequency(series, cfg.dt);
  const double guess = out.omega_zero_crossing > 0.0 ? out.omega_zero_crossing : out.omega_analytic;
  out.omega_measured = fit_frequency(series, cfg.dt, guess);
  out.rel_err = std::abs(out.omega_measured - out.omega_analytic) / out.omega_analytic;
  return out;
}

}  // namespace procalab
