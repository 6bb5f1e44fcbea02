#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "procalab/errors.hpp"
#include "procalab/field_solver.hpp"

namespace procalab {

/// Setup for a time-step convergence study: a single exact eigenmode of the
/// semi-discrete system, so the only error left is the integrator's.
struct ConvergenceBase {
  Grid grid = Grid::cubic(1, 64, 2.0 * std::numbers::pi);
  Vec3 k{1.0, 0.0, 0.0};
  double mu = 1.0;
  ModeKind kind = ModeKind::transverse1;
  int stencil_order = 4;
  double periods = 1.0;
};

struct ConvergenceRow {
  double dt = 0.0;
  double phase_error = 0.0;
  bool stable = true;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
  bool slope_valid = false;
};

inline PlaneWaveMode convergence_mode(const ConvergenceBase& base) {
  const SpatialOps ops(base.grid, base.stencil_order);
  return discrete_mode(ops, base.k, base.mu, base.kind, {1.0, 0.0});
}

/// Period of the semi-discrete eigenmode used by the study.
inline double convergence_period(const ConvergenceBase& base) {
  return 2.0 * std::numbers::pi / convergence_mode(base).omega;
}

/// Integrates the eigenmode for `periods` periods (rounded to whole steps)
/// and returns max |numerical − exact| over every field component, relative
/// to the largest initial component. For an oscillatory mode this is the
/// accumulated phase error in radians to leading order.
inline double phase_error(const ConvergenceBase& base, double dt) {
  const PlaneWaveMode mode = convergence_mode(base);
  const SpatialOps ops(base.grid, base.stencil_order);
  const double t_end = base.periods * 2.0 * std::numbers::pi / mode.omega;
  const auto steps = static_cast<std::size_t>(std::max<long long>(1, std::llround(t_end / dt)));

  EMFieldState s = sample(mode, base.grid, 0.0);
  double scale = 0.0;
  for (const auto* c : s.components()) scale = std::max(scale, max_abs(*c));
  for (std::size_t n = 0; n < steps; ++n) s = step_rk4(s, dt, base.mu, ops);

  const EMFieldState exact = sample(mode, base.grid, static_cast<double>(steps) * dt);
  double err = 0.0;
  const auto num = s.components();
  const auto ref = exact.components();
  for (std::size_t c = 0; c < num.size(); ++c)
    for (std::size_t n = 0; n < num[c]->size(); ++n) err = std::max(err, std::abs((*num[c])[n] - (*ref[c])[n]));
  return err / scale;
}

/// Least-squares slope of log(error) against log(dt).
inline double log_log_slope(std::span<const double> dts, std::span<const double> errors) {
  const std::size_t n = dts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(dts[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

/// Phase error at each dt; steps beyond the CFL limit are flagged unstable
/// and left out of the fitted slope.
inline ConvergenceResult convergence_study(const ConvergenceBase& base, std::span<const double> dts) {
  if (dts.size() < 3) throw PreconditionError("convergence study needs at least 3 time steps");
  const double limit = cfl_limit(base.grid, base.stencil_order);
  ConvergenceResult out;
  std::vector<double> fit_dt, fit_err;
  for (double dt : dts) {
    if (!(dt > 0.0)) throw PreconditionError("time steps must be positive");
    ConvergenceRow row{dt, 0.0, dt <= limit};
    if (row.stable) {
      try {
        row.phase_error = phase_error(base, dt);
      } catch (const IntegrationDiverged&) {
        row.stable = false;
      }
    }
    if (row.stable && row.phase_error > 0.0) {
      fit_dt.push_back(dt);
      fit_err.push_back(row.phase_error);
    } else {
      row.phase_error = std::numeric_limits<double>::quiet_NaN();
    }
    out.rows.push_back(row);
  }
  if (fit_dt.size() >= 2) {
    out.slope = log_log_slope(fit_dt, fit_err);
    out.slope_valid = true;
  }
  return out;
}

}  // namespace procalab
