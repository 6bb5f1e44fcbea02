#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "procalab/errors.hpp"

namespace procalab {

struct LondonResult {
  std::vector<double> x;
  std::vector<double> b;
  double lambda_fit = 0.0;
  double lambda_analytic = 0.0;
  double rel_err = 0.0;
};

/// Static screening of a magnetic field entering a massive-photon medium:
/// B'' = μ²B on [0, length], B(0) = 1, B(length) = 0, solved with the
/// second-order three-point stencil on `points` nodes (endpoints included).
/// The decay length is the negative inverse slope of a least-squares line
/// through ln B over the first half of the interval, where the far boundary
/// is at least three decay lengths away.
inline LondonResult london_profile(double mu, double length, std::size_t points) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw PreconditionError("London profile requires mu > 0");
  if (points < 32) throw PreconditionError("London profile requires at least 32 points");
  if (!(mu * length >= 6.0)) throw PreconditionError("London profile requires mu * length >= 6");

  const double h = length / static_cast<double>(points - 1);
  const double diag = 2.0 + mu * mu * h * h;

  // Tridiagonal system for interior nodes: -B[j-1] + diag·B[j] - B[j+1] = 0.
  const std::size_t m = points - 2;
  std::vector<double> c_prime(m), d_prime(m);
  double denom = diag;
  if (std::abs(denom) < 1e-300) throw SingularSystemError("London system is singular");
  c_prime[0] = -1.0 / denom;
  d_prime[0] = 1.0 / denom;  // B(0) = 1 moves to the right-hand side
  for (std::size_t j = 1; j < m; ++j) {
    denom = diag + c_prime[j - 1];
    if (std::abs(denom) < 1e-300) throw SingularSystemError("London system is singular");
    c_prime[j] = -1.0 / denom;
    d_prime[j] = d_prime[j - 1] / denom;
  }

  LondonResult r;
  r.x.resize(points);
  r.b.assign(points, 0.0);
  for (std::size_t j = 0; j < points; ++j) r.x[j] = static_cast<double>(j) * h;
  r.b[0] = 1.0;
  std::vector<double> interior(m);
  interior[m - 1] = d_prime[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) interior[j] = d_prime[j] - c_prime[j] * interior[j + 1];
  for (std::size_t j = 0; j < m; ++j) r.b[j + 1] = interior[j];

  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (std::size_t j = 0; j < points && r.x[j] <= 0.5 * length; ++j) {
    if (!(r.b[j] > 0.0)) break;
    const double y = std::log(r.b[j]);
    sx += r.x[j];
    sy += y;
    sxx += r.x[j] * r.x[j];
    sxy += r.x[j] * y;
    n += 1.0;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (!(slope < 0.0) || !std::isfinite(slope)) throw SingularSystemError("London profile does not decay");
  r.lambda_fit = -1.0 / slope;
  r.lambda_analytic = 1.0 / mu;
  r.rel_err = std::abs(r.lambda_fit - r.lambda_analytic) / r.lambda_analytic;
  return r;
}

}  // namespace procalab
