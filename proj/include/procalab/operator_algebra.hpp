#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "procalab/matrix.hpp"

namespace procalab {

template <class T>
using Mat2 = Matrix<T, 2>;
template <class T>
using Mat3 = Matrix<T, 3>;
template <class T>
using Mat4 = Matrix<T, 4>;
template <class T>
using CVector3 = Vector<T, 3>;

/// The spin-1 generators acting on 3-vectors and the Pauli matrices.
template <class T>
struct SpinMatrixSet {
  Mat3<T> sx, sy, sz;
  Mat2<T> pauli_x, pauli_y, pauli_z;
};

/// Energy, momentum and mass in natural units (c = ħ = 1).
template <class T>
struct ScalarTriple {
  T e{};
  std::array<T, 3> p{};
  T m{};
};

template <class T>
SpinMatrixSet<T> spin1_matrices() {
  const Complex<T> i = Complex<T>::unit_i();
  const Complex<T> one(T{1});
  SpinMatrixSet<T> s;
  // (S_k)_{ab} = -i ε_{kab}
  s.sx(1, 2) = -i;
  s.sx(2, 1) = i;
  s.sy(0, 2) = i;
  s.sy(2, 0) = -i;
  s.sz(0, 1) = -i;
  s.sz(1, 0) = i;

  s.pauli_x(0, 1) = one;
  s.pauli_x(1, 0) = one;
  s.pauli_y(0, 1) = -i;
  s.pauli_y(1, 0) = i;
  s.pauli_z(0, 0) = one;
  s.pauli_z(1, 1) = -one;
  return s;
}

/// a_x S_x + a_y S_y + a_z S_z.
template <class T>
Mat3<T> dot_spin(const CVector3<T>& a, const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  return a[0] * s.sx + a[1] * s.sy + a[2] * s.sz;
}

template <class T>
Mat2<T> dot_pauli(const std::array<T, 3>& p, const SpinMatrixSet<T>& s) {
  return Complex<T>(p[0]) * s.pauli_x + Complex<T>(p[1]) * s.pauli_y + Complex<T>(p[2]) * s.pauli_z;
}

namespace detail {

template <class T>
CVector3<T> complexify(const std::array<T, 3>& p) {
  return {Complex<T>(p[0]), Complex<T>(p[1]), Complex<T>(p[2])};
}

template <class T>
T norm_squared(const std::array<T, 3>& p) {
  return T(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

}  // namespace detail

/// (a·S)v − i(a×v). Zero for every a, v; with a = −i∇ this is the curl identity.
template <class T>
CVector3<T> verify_cross_identity(const CVector3<T>& a, const CVector3<T>& v,
                                  const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  return dot_spin(a, s) * v - scale(Complex<T>::unit_i(), cross(a, v));
}

/// [E − p·S][E + p·S]v − p(p·v) − m²v − (E² − p² − m²)v.
/// With m = 0 this is the massless (photon) decomposition.
template <class T>
CVector3<T> verify_proca_decomposition(const ScalarTriple<T>& t, const CVector3<T>& v,
                                       const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  const CVector3<T> p = detail::complexify(t.p);
  const Mat3<T> ps = dot_spin(p, s);
  const Mat3<T> e_id = Complex<T>(t.e) * Mat3<T>::identity();
  const Mat3<T> product = (e_id - ps) * (e_id + ps);

  const Complex<T> m2(T(t.m * t.m));
  const CVector3<T> lhs = product * v - scale(dot(p, v), p) - scale(m2, v);
  const Complex<T> on_shell(T(t.e * t.e - detail::norm_squared(t.p) - t.m * t.m));
  return lhs - scale(on_shell, v);
}

/// Massless case of verify_proca_decomposition; the mass in `t` is ignored.
template <class T>
CVector3<T> verify_photon_decomposition(ScalarTriple<T> t, const CVector3<T>& v,
                                        const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  t.m = T{0};
  return verify_proca_decomposition(t, v, s);
}

/// The 4×4 Hamiltonian block [[m, p·σ], [p·σ, −m]].
template <class T>
Mat4<T> dirac_hamiltonian(const ScalarTriple<T>& t, const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  const Mat2<T> ps = dot_pauli(t.p, s);
  Mat4<T> h;
  for (std::size_t r = 0; r < 2; ++r) {
    h(r, r) = Complex<T>(t.m);
    h(r + 2, r + 2) = Complex<T>(T(-t.m));
    for (std::size_t c = 0; c < 2; ++c) {
      h(r, c + 2) = ps(r, c);
      h(r + 2, c) = ps(r, c);
    }
  }
  return h;
}

/// (E + H)(E − H) − (E² − p² − m²)·I₄.
template <class T>
Mat4<T> verify_dirac_decomposition(const ScalarTriple<T>& t, const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  const Mat4<T> h = dirac_hamiltonian(t, s);
  const Mat4<T> e_id = Complex<T>(t.e) * Mat4<T>::identity();
  const Complex<T> on_shell(T(t.e * t.e - detail::norm_squared(t.p) - t.m * t.m));
  return (e_id + h) * (e_id - h) - on_shell * Mat4<T>::identity();
}

/// (E − p·σ)(E + p·σ) − (E² − p²)·I₂.
template <class T>
Mat2<T> verify_neutrino_decomposition(const T& e, const std::array<T, 3>& p,
                                      const SpinMatrixSet<T>& s = spin1_matrices<T>()) {
  const Mat2<T> ps = dot_pauli(p, s);
  const Mat2<T> e_id = Complex<T>(e) * Mat2<T>::identity();
  const Complex<T> on_shell(T(e * e - detail::norm_squared(p)));
  return (e_id - ps) * (e_id + ps) - on_shell * Mat2<T>::identity();
}

// ---------------------------------------------------------------------------
// Suite runner

struct IdentityCheck {
  std::string identity;
  std::string mode;  // "exact" or "float"
  std::size_t trials = 0;
  double max_residual = 0.0;
  bool passed = false;
};

struct AlgebraReport {
  std::vector<IdentityCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct AlgebraSuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double float_tolerance = 1e-12;
  /// Flip the sign of S_z before checking. Used to prove the suite can fail.
  bool tamper_sz = false;
};

/// Seeded source of random inputs. Exact mode draws integers in [−9, 9];
/// float mode draws uniformly from [−1, 1].
template <class T>
class TrialSampler {
 public:
  explicit TrialSampler(std::uint64_t seed) : rng_(seed) {}

  T scalar() {
    if constexpr (std::is_floating_point_v<T>) {
      return std::uniform_real_distribution<T>(T(-1), T(1))(rng_);
    } else {
      return T(std::uniform_int_distribution<int>(-9, 9)(rng_));
    }
  }

  Complex<T> complex() {
    T re = scalar();
    T im = scalar();
    return Complex<T>(std::move(re), std::move(im));
  }

  CVector3<T> complex_vector() {
    CVector3<T> v;
    for (auto& z : v) z = complex();
    return v;
  }

  std::array<T, 3> real_vector() {
    std::array<T, 3> v;
    for (auto& x : v) x = scalar();
    return v;
  }

  ScalarTriple<T> triple() {
    ScalarTriple<T> t;
    t.e = scalar();
    t.p = real_vector();
    t.m = scalar();
    return t;
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

template <class T>
bool accept(double residual, bool exactly_zero, double tolerance) {
  if constexpr (std::is_floating_point_v<T>) {
    (void)exactly_zero;
    return residual < tolerance;
  } else {
    (void)residual;
    (void)tolerance;
    return exactly_zero;
  }
}

template <class T>
const char* mode_name() {
  return std::is_floating_point_v<T> ? "float" : "exact";
}

template <class T, class Residual>
void record(std::vector<IdentityCheck>& out, std::string name, std::size_t trials, Residual&& residual_of_trial,
            double tolerance) {
  double worst = 0.0;
  bool all_zero = true;
  for (std::size_t n = 0; n < trials; ++n) {
    const auto r = residual_of_trial();
    worst = std::max(worst, max_entry(r));
    all_zero = all_zero && is_zero(r);
  }
  out.push_back({std::move(name), mode_name<T>(), trials, worst, accept<T>(worst, all_zero, tolerance)});
}

}  // namespace detail

/// Every generator identity and decomposition, checked over scalar type T.
template <class T>
std::vector<IdentityCheck> check_spin_algebra(const SpinMatrixSet<T>& s, double tolerance = 1e-12) {
  const Complex<T> i = Complex<T>::unit_i();
  std::vector<IdentityCheck> out;
  auto fixed = [&](std::string name, auto residual) {
    detail::record<T>(out, std::move(name), 1, [&] { return residual; }, tolerance);
  };
  fixed("[S_x,S_y]=iS_z", commutator(s.sx, s.sy) - i * s.sz);
  fixed("[S_y,S_z]=iS_x", commutator(s.sy, s.sz) - i * s.sx);
  fixed("[S_z,S_x]=iS_y", commutator(s.sz, s.sx) - i * s.sy);
  fixed("S^2=2I", s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - Complex<T>(T{2}) * Mat3<T>::identity());
  fixed("sigma_x sigma_y=i sigma_z", s.pauli_x * s.pauli_y - i * s.pauli_z);
  fixed("sigma_y sigma_z=i sigma_x", s.pauli_y * s.pauli_z - i * s.pauli_x);
  fixed("sigma_z sigma_x=i sigma_y", s.pauli_z * s.pauli_x - i * s.pauli_y);

  const bool hermitian = is_hermitian(s.sx) && is_hermitian(s.sy) && is_hermitian(s.sz) &&
                         is_hermitian(s.pauli_x) && is_hermitian(s.pauli_y) && is_hermitian(s.pauli_z);
  out.push_back({"generators Hermitian", detail::mode_name<T>(), 1, hermitian ? 0.0 : 1.0, hermitian});
  return out;
}

template <class T>
std::vector<IdentityCheck> check_random_identities(const SpinMatrixSet<T>& s, std::size_t trials, std::uint64_t seed,
                                                   double tolerance = 1e-12) {
  std::vector<IdentityCheck> out;
  TrialSampler<T> draw(seed);
  detail::record<T>(out, "(a.S)v=i(a x v)", trials,
                    [&] {
                      auto a = draw.complex_vector();
                      auto v = draw.complex_vector();
                      return verify_cross_identity(a, v, s);
                    },
                    tolerance);
  detail::record<T>(out, "photon decomposition", trials,
                    [&] {
                      auto t = draw.triple();
                      auto v = draw.complex_vector();
                      return verify_photon_decomposition(t, v, s);
                    },
                    tolerance);
  detail::record<T>(out, "proca decomposition", trials,
                    [&] {
                      auto t = draw.triple();
                      auto v = draw.complex_vector();
                      return verify_proca_decomposition(t, v, s);
                    },
                    tolerance);
  detail::record<T>(out, "dirac decomposition", trials, [&] { return verify_dirac_decomposition(draw.triple(), s); },
                    tolerance);
  detail::record<T>(out, "neutrino decomposition", trials,
                    [&] {
                      auto e = draw.scalar();
                      auto p = draw.real_vector();
                      return verify_neutrino_decomposition(e, p, s);
                    },
                    tolerance);
  return out;
}

template <class T>
SpinMatrixSet<T> tampered(SpinMatrixSet<T> s) {
  s.sz = -s.sz;
  return s;
}

/// Exact-mode checks of every identity, followed by the same checks in
/// double precision over `trials` random inputs.
inline AlgebraReport run_algebra_suite(const AlgebraSuiteOptions& opt) {
  AlgebraReport report;
  auto append = [&](std::vector<IdentityCheck> more) {
    report.checks.insert(report.checks.end(), std::make_move_iterator(more.begin()),
                         std::make_move_iterator(more.end()));
  };

  auto exact = spin1_matrices<Rational>();
  auto real = spin1_matrices<double>();
  if (opt.tamper_sz) {
    exact = tampered(exact);
    real = tampered(real);
  }
  append(check_spin_algebra(exact));
  append(check_random_identities(exact, opt.trials, opt.seed));
  append(check_spin_algebra(real, opt.float_tolerance));
  append(check_random_identities(real, opt.trials, opt.seed, opt.float_tolerance));
  return report;
}

}  // namespace procalab
