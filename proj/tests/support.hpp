// Shared generators and comparisons for the test suites.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "qmask/ortho.hpp"
#include "qmask/qlinalg.hpp"

namespace qmask::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double phase() { return uniform(0.0, 2.0 * std::numbers::pi); }
  Complex complex_normal() { return {normal(), normal()}; }

  TwoQubitState state() {
    TwoQubitState v{complex_normal(), complex_normal(), complex_normal(), complex_normal()};
    return normalize(v);
  }
  QubitState qubit() { return normalize(QubitState{complex_normal(), complex_normal()}); }

  Mat4 matrix() {
    Mat4 m;
    for (auto& x : m.e) x = complex_normal();
    return m;
  }

  // a0|00> + a1|11>, b0|01> + b1|10> with all four |c|^2 = 1/2.
  OrthoPairParams balanced_ortho_pair() {
    const double s = 1.0 / std::sqrt(2.0);
    return {std::polar(s, phase()), std::polar(s, phase()), std::polar(s, phase()), std::polar(s, phase())};
  }

  Mat2 unitary2() {
    const QubitState c = qubit();
    const Complex ph = std::polar(1.0, phase());
    Mat2 u;
    u(0, 0) = ph * c.alpha0;
    u(1, 0) = ph * c.alpha1;
    u(0, 1) = -ph * std::conj(c.alpha1);
    u(1, 1) = ph * std::conj(c.alpha0);
    return u;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

template <std::size_t N>
double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

inline double max_abs_diff(const TwoQubitState& a, const TwoQubitState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Mat2 half_identity() { return 0.5 * Mat2::identity(); }

inline Mat4 kron(const Mat2& u, const Mat2& v) {
  Mat4 m;
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t j1 = 0; j1 < 2; ++j1)
        for (std::size_t j2 = 0; j2 < 2; ++j2) m(2 * i1 + i2, 2 * j1 + j2) = u(i1, j1) * v(i2, j2);
  return m;
}

struct Triple {
  QubitState b;
  TwoQubitState psi0;
  TwoQubitState psi1;
};

// A masking triple by construction: balanced split-support pair with random
// phases, b chosen so arg(alpha0 conj(alpha1)) solves both cross lines, then
// the whole pair rotated by a random local unitary U (x) V.
inline Triple masking_triple(Gen& g) {
  const OrthoPairParams p = g.balanced_ortho_pair();
  const double zeta = 0.5 * (std::arg(p.b0) + std::arg(p.b1) - std::arg(p.a0) - std::arg(p.a1) + std::numbers::pi) +
                      (g.uniform() < 0.5 ? 0.0 : std::numbers::pi);
  const double t = g.uniform(0.05, std::numbers::pi / 2 - 0.05);
  const double chi = g.phase();
  const QubitState b{std::polar(std::cos(t), chi), std::polar(std::sin(t), chi - zeta)};
  const Mat4 w = kron(g.unitary2(), g.unitary2());
  return {b, apply(w, p.psi0()), apply(w, p.psi1())};
}

// Point on the first-family surface: alpha0 conj(alpha1) has phase pi/4 mod pi.
inline QubitState example1_surface_qubit(Gen& g) {
  const double t = g.uniform(0.0, std::numbers::pi / 2);
  const double phi = g.phase();
  const double sign = g.uniform() < 0.5 ? 1.0 : -1.0;
  return {std::polar(std::cos(t), phi), sign * std::polar(std::sin(t), phi - std::numbers::pi / 4)};
}

}  // namespace qmask::testing
