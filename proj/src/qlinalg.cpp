#include "qmask/qlinalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qmask {

namespace {

template <std::size_t N>
double frob(const Mat<N>& m) {
  double s = 0.0;
  for (const auto& x : m.e) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

double frobenius_norm(const Mat2& m) { return frob(m); }
double frobenius_norm(const Mat4& m) { return frob(m); }

double QubitState::norm() const { return std::sqrt(std::norm(alpha0) + std::norm(alpha1)); }

bool QubitState::is_normalized(double tol) const {
  return std::abs(std::norm(alpha0) + std::norm(alpha1) - 1.0) <= tol;
}

TwoQubitState TwoQubitState::basis(std::size_t index) {
  if (index > 3) throw std::out_of_range("two-qubit basis index must be 0..3");
  TwoQubitState v;
  v.c[index] = 1.0;
  return v;
}

double TwoQubitState::norm() const {
  double s = 0.0;
  for (const auto& x : c) s += std::norm(x);
  return std::sqrt(s);
}

bool TwoQubitState::is_normalized(double tol) const {
  double s = 0.0;
  for (const auto& x : c) s += std::norm(x);
  return std::abs(s - 1.0) <= tol;
}

TwoQubitState& TwoQubitState::operator+=(const TwoQubitState& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

Complex inner(const TwoQubitState& u, const TwoQubitState& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

QubitState normalize(QubitState b) {
  const double n = b.norm();
  if (n == 0.0 || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero qubit state");
  b.alpha0 /= n;
  b.alpha1 /= n;
  return b;
}

TwoQubitState normalize(TwoQubitState v) {
  const double n = v.norm();
  if (n == 0.0 || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero two-qubit state");
  for (auto& x : v.c) x /= n;
  return v;
}

Mat4 outer(const TwoQubitState& u, const TwoQubitState& v) {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Mat2 ptrace_a(const Mat4& m) {
  Mat2 r;
  for (std::size_t i2 = 0; i2 < 2; ++i2)
    for (std::size_t j2 = 0; j2 < 2; ++j2)
      for (std::size_t k = 0; k < 2; ++k) r(i2, j2) += m(2 * k + i2, 2 * k + j2);
  return r;
}

Mat2 ptrace_b(const Mat4& m) {
  Mat2 r;
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t j1 = 0; j1 < 2; ++j1)
      for (std::size_t k = 0; k < 2; ++k) r(i1, j1) += m(2 * i1 + k, 2 * j1 + k);
  return r;
}

Mat2 ptrace(const Mat4& m, Subsystem traced) {
  return traced == Subsystem::A ? ptrace_a(m) : ptrace_b(m);
}

double frob_dist(const Mat2& a, const Mat2& b) { return frobenius_norm(a - b); }

bool is_unitary(const Mat4& m, double tol) {
  return frobenius_norm(m.adjoint() * m - Mat4::identity()) <= tol;
}

Mat4 from_columns(const std::array<TwoQubitState, 4>& columns) {
  Mat4 m;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) m(i, j) = columns[j][i];
  return m;
}

TwoQubitState apply(const Mat4& m, const TwoQubitState& v) {
  TwoQubitState r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

TwoQubitState bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, 0.0, 0.0, s};
}

TwoQubitState bell_psi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return {0.0, s, s, 0.0};
}

}  // namespace qmask
