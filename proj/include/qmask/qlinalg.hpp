// qlinalg.hpp
// Dense complex linear algebra for one- and two-qubit systems.
//
// Basis order is fixed for the whole library: |00>, |01>, |10>, |11>, with
// index = 2*bitA + bitB. The first bit belongs to subsystem A.

#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace qmask {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDefaultTolerance = 1e-9;

// Row-major square complex matrix.
template <std::size_t N>
struct Mat {
  std::array<Complex, N * N> e{};

  Complex& operator()(std::size_t r, std::size_t c) { return e[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return e[r * N + c]; }

  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) e[i] += o.e[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) e[i] -= o.e[i];
    return *this;
  }
  Mat& operator*=(Complex s) {
    for (auto& x : e) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Complex s, Mat a) { return a *= s; }
  friend Mat operator*(Mat a, Complex s) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

  Mat adjoint() const {
    Mat r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

double frobenius_norm(const Mat2& m);
double frobenius_norm(const Mat4& m);

// Single-qubit state alpha0|0> + alpha1|1>.
struct QubitState {
  Complex alpha0{1.0};
  Complex alpha1{0.0};

  double norm() const;
  bool is_normalized(double tol = kNormTolerance) const;
};

// Two-qubit amplitudes c00, c01, c10, c11. May be unnormalized when used as an
// intermediate superposition; callers validate with is_normalized().
struct TwoQubitState {
  std::array<Complex, 4> c{};

  TwoQubitState() = default;
  TwoQubitState(Complex c00, Complex c01, Complex c10, Complex c11) : c{c00, c01, c10, c11} {}

  static TwoQubitState basis(std::size_t index);

  Complex& operator[](std::size_t i) { return c[i]; }
  const Complex& operator[](std::size_t i) const { return c[i]; }

  double norm() const;
  bool is_normalized(double tol = kNormTolerance) const;

  TwoQubitState& operator+=(const TwoQubitState& o);
  friend TwoQubitState operator+(TwoQubitState a, const TwoQubitState& b) { return a += b; }
  friend TwoQubitState operator*(Complex s, TwoQubitState v) {
    for (auto& x : v.c) x *= s;
    return v;
  }
};

// <u|v>, antilinear in the first argument.
Complex inner(const TwoQubitState& u, const TwoQubitState& v);

// Rescale to unit norm. Throws std::invalid_argument on a zero vector.
QubitState normalize(QubitState b);
TwoQubitState normalize(TwoQubitState v);

// |u><v|: entry (i, j) = u_i * conj(v_j).
Mat4 outer(const TwoQubitState& u, const TwoQubitState& v);

// Tr_A(|i1 i2><j1 j2|) = delta(i1, j1) |i2><j2|, extended linearly.
Mat2 ptrace_a(const Mat4& m);
// Tr_B(|i1 i2><j1 j2|) = delta(i2, j2) |i1><j1|, extended linearly.
Mat2 ptrace_b(const Mat4& m);

enum class Subsystem { A, B };

// Partial trace over the named subsystem.
Mat2 ptrace(const Mat4& m, Subsystem traced);

double frob_dist(const Mat2& a, const Mat2& b);

// ||M^dagger M - I||_F <= tol.
bool is_unitary(const Mat4& m, double tol);

// Matrix whose j-th column holds the amplitudes of columns[j].
Mat4 from_columns(const std::array<TwoQubitState, 4>& columns);
TwoQubitState apply(const Mat4& m, const TwoQubitState& v);

// Named states used throughout the tests and the CLI.
TwoQubitState bell_phi_plus();
TwoQubitState bell_psi_plus();

}  // namespace qmask
