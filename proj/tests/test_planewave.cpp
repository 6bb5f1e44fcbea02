#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "procalab/planewave.hpp"
#include "procalab/stencil.hpp"

using namespace procalab;
using Catch::Approx;
using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cabs3(const CVec3& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

CVec3 ccross(const Vec3& k, const CVec3& v) {
  return {k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]};
}

cd cdot(const Vec3& k, const CVec3& v) { return k[0] * v[0] + k[1] * v[1] + k[2] * v[2]; }

/// Continuum field equations with ∇ → ik and ∂/∂t → −iω, evaluated on the
/// amplitudes. Returns the largest residual relative to the largest amplitude.
double continuum_residual(const PlaneWaveMode& m) {
  const cd i(0.0, 1.0);
  const cd dt = -i * m.omega;
  const Vec3& k = m.k;
  const double mu2 = m.mu * m.mu;
  double worst = 0.0;
  const CVec3 ka = ccross(k, m.a), ke = ccross(k, m.e), kb = ccross(k, m.b);
  for (std::size_t c = 0; c < 3; ++c) {
    worst = std::max(worst, std::abs(m.e[c] + dt * m.a[c] + i * k[c] * m.phi));  // E = −∂A/∂t − ∇φ
    worst = std::max(worst, std::abs(m.b[c] - i * ka[c]));                      // B = ∇×A
    worst = std::max(worst, std::abs(dt * m.e[c] - i * kb[c] - mu2 * m.a[c]));  // ∂E/∂t − ∇×B = μ²A
    worst = std::max(worst, std::abs(dt * m.b[c] + i * ke[c]));                 // ∂B/∂t + ∇×E = 0
  }
  worst = std::max(worst, std::abs(i * cdot(k, m.e) + mu2 * m.phi));  // ∇·E = −μ²φ
  worst = std::max(worst, std::abs(i * cdot(k, m.b)));                 // ∇·B = 0
  worst = std::max(worst, std::abs(dt * m.phi + i * cdot(k, m.a)));    // ∂φ/∂t = −∇·A
  const double scale = std::max({cabs3(m.e), cabs3(m.b), cabs3(m.a), std::abs(m.phi), 1e-300});
  return worst / scale;
}

}  // namespace

TEST_CASE("dispersion relation values", "[planewave]") {
  CHECK(dispersion({1.0, 0.0, 0.0}, 0.0) == 1.0);
  CHECK(dispersion({3.0, 0.0, 0.0}, 4.0) == 5.0);
  CHECK(dispersion({0.0, 0.0, 0.0}, 2.0) == 2.0);
  CHECK(dispersion({0.0, 3.0, 4.0}, 0.0) == 5.0);
  CHECK_THROWS_AS(dispersion({1.0, 0.0, 0.0}, -1.0), PreconditionError);
}

TEST_CASE("group velocity is subluminal and tends to one", "[planewave]") {
  const double mu = 1.5;
  double previous = 0.0;
  for (double k : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double h = 1e-6 * k;
    const double vg = (dispersion({k + h, 0, 0}, mu) - dispersion({k - h, 0, 0}, mu)) / (2 * h);
    CHECK(vg == Approx(k / dispersion({k, 0, 0}, mu)).epsilon(1e-6));
    CHECK(vg < 1.0);
    CHECK(vg > previous);
    previous = vg;
  }
  CHECK(previous > 0.999);
}

TEST_CASE("polarization basis", "[planewave]") {
  const auto [a, b] = polarization_basis({0.0, 0.0, 2.0});
  CHECK(a == Vec3{1.0, 0.0, 0.0});
  CHECK(b == Vec3{0.0, 1.0, 0.0});

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 0; n < 50; ++n) {
    const Vec3 k{u(rng), u(rng), u(rng)};
    const auto [t1, t2] = polarization_basis(k);
    CHECK(norm(t1) == Approx(1.0));
    CHECK(norm(t2) == Approx(1.0));
    CHECK(std::abs(dot(t1, k)) < 1e-12);
    CHECK(std::abs(dot(t2, k)) < 1e-12);
    CHECK(std::abs(dot(t1, t2)) < 1e-12);
  }
}

TEST_CASE("longitudinal mode has no magnetic field", "[planewave]") {
  const auto m = make_mode({1.0, 0.0, 0.0}, 1.0, ModeKind::longitudinal, {1.0, 0.0});
  for (const auto& b : m.b) CHECK(b == cd(0.0, 0.0));
  const double omega = std::sqrt(2.0);
  CHECK(m.omega == Approx(omega));
  // E = i(μ²/ω)A along k, and ∇·E = ik·E = −μ²φ
  CHECK(m.e[0].imag() == Approx(1.0 / omega));
  CHECK(m.e[0].real() == 0.0);
  CHECK(std::abs(cd(0, 1) * m.e[0] + m.phi) < 1e-15);
  // energy flux E×B vanishes
  CHECK(cabs3(ccross({1, 0, 0}, m.b)) == 0.0);
}

TEST_CASE("vacuum transverse mode", "[planewave]") {
  const auto m = make_mode({1.0, 0.0, 0.0}, 0.0, ModeKind::transverse1, {1.0, 0.0});
  CHECK(std::abs(cdot({1.0, 0.0, 0.0}, m.e)) == 0.0);
  CHECK(cabs3(m.e) == Approx(cabs3(m.b)));
  CHECK(m.phi == cd(0.0, 0.0));

  // massless transverse modes satisfy k·(E − iB) = 0 exactly
  const auto t2 = make_mode({1.0, 2.0, 2.0}, 0.0, ModeKind::transverse2, {0.3, -0.4});
  CVec3 psi;
  for (std::size_t c = 0; c < 3; ++c) psi[c] = t2.e[c] - cd(0, 1) * t2.b[c];
  CHECK(std::abs(cdot({1.0, 2.0, 2.0}, psi)) < 1e-15);
}

TEST_CASE("make_mode preconditions", "[planewave]") {
  CHECK_THROWS_AS(make_mode({1.0, 0.0, 0.0}, 0.0, ModeKind::longitudinal, 1.0), PreconditionError);
  CHECK_THROWS_AS(make_mode({0.0, 0.0, 0.0}, 1.0, ModeKind::transverse1, 1.0), PreconditionError);
  CHECK_THROWS_AS(make_mode({1.0, 0.0, 0.0}, -0.1, ModeKind::transverse2, 1.0), PreconditionError);
  const auto rest = make_mode({0.0, 0.0, 0.0}, 2.0, ModeKind::longitudinal, 1.0);
  CHECK(rest.omega == 2.0);
  CHECK(rest.phi == cd(0.0, 0.0));
}

TEST_CASE("every mode solves the continuum equations", "[planewave][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-4.0, 4.0), m(0.0, 3.0), ph(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 k{u(rng), u(rng), u(rng)};
    const double mu = m(rng) + 1e-3;
    const cd amp(ph(rng), ph(rng));
    for (auto kind : {ModeKind::transverse1, ModeKind::transverse2, ModeKind::longitudinal}) {
      const auto mode = make_mode(k, mu, kind, amp);
      REQUIRE(mode.omega == Approx(std::sqrt(dot(k, k) + mu * mu)).epsilon(1e-15));
      REQUIRE(continuum_residual(mode) < 1e-14);
    }
  }
}

TEST_CASE("sampling", "[planewave]") {
  const auto g = Grid::cubic(2, 16, kTwoPi);
  SECTION("zero amplitude gives zero fields") {
    const auto s = sample(make_mode({1.0, 0.0, 0.0}, 1.0, ModeKind::transverse1, 0.0), g, 0.0);
    for (const auto* c : s.components()) CHECK(max_abs(*c) == 0.0);
  }
  SECTION("incommensurate wavevector is rejected") {
    CHECK_THROWS_AS(sample(make_mode({1.5, 0.0, 0.0}, 1.0, ModeKind::transverse1, 1.0), g, 0.0), PreconditionError);
    CHECK_THROWS_AS(sample(make_mode({1.0, 0.0, 1.0}, 1.0, ModeKind::transverse1, 1.0), g, 0.0), PreconditionError);
    CHECK(commensurate({3.0, -2.0, 0.0}, g));
  }
  SECTION("sampled transverse mode is discretely divergence free") {
    const SpatialOps ops(g, 4);
    const auto s = sample(make_mode({1.0, 1.0, 0.0}, 0.5, ModeKind::transverse2, {1.0, 0.5}), g, 0.2);
    CHECK(max_abs(ops.div(s.b)) < 1e-13);
    CHECK(max_abs(ops.div(s.e)) < 1e-13);
  }
  SECTION("one temporal period later the fields repeat") {
    const auto mode = make_mode({2.0, -1.0, 0.0}, 0.7, ModeKind::longitudinal, {0.4, 0.9});
    const double period = kTwoPi / mode.omega;
    const auto s0 = sample(mode, g, 0.3);
    const auto s1 = sample(mode, g, 0.3 + period);
    const auto c0 = s0.components();
    const auto c1 = s1.components();
    for (std::size_t c = 0; c < c0.size(); ++c)
      for (std::size_t n = 0; n < g.size(); ++n) REQUIRE(std::abs((*c0[c])[n] - (*c1[c])[n]) < 1e-12);
  }
}

TEST_CASE("mode kind names round-trip", "[planewave]") {
  for (auto k : {ModeKind::transverse1, ModeKind::transverse2, ModeKind::longitudinal})
    CHECK(parse_mode_kind(to_string(k)) == k);
  CHECK_FALSE(parse_mode_kind("circular").has_value());
}
