#include "qmask/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qmask/conditions.hpp"

namespace qmask {

namespace {

constexpr double kHalf = 0.5;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_grid(int n) {
  if (n < 2) throw std::invalid_argument("grid must have at least 2 points per axis");
}

}  // namespace

bool OrthoPairParams::is_normalized(double tol) const {
  return std::abs(std::norm(a0) + std::norm(a1) - 1.0) <= tol && std::abs(std::norm(b0) + std::norm(b1) - 1.0) <= tol;
}

std::array<double, 3> eq9_residuals(const OrthoPairParams& p, const QubitState& b) {
  const double line1 = std::max({std::abs(std::norm(p.a0) - kHalf), std::abs(std::norm(p.a1) - kHalf),
                                 std::abs(std::norm(p.b0) - kHalf), std::abs(std::norm(p.b1) - kHalf)});
  const Complex z = b.alpha0 * std::conj(b.alpha1);
  const Complex zc = std::conj(z);
  return {
      line1,
      std::abs(z * p.a0 * std::conj(p.b0) + zc * std::conj(p.a1) * p.b1),
      std::abs(z * p.a0 * std::conj(p.b1) + zc * std::conj(p.a1) * p.b0),
  };
}

std::string_view to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Branch parse_branch(std::string_view s) {
  if (s == "plus" || s == "+") return Branch::Plus;
  if (s == "minus" || s == "-") return Branch::Minus;
  throw std::invalid_argument("branch must be plus or minus");
}

OrthoPairParams example1_pair() {
  return {Complex(kInvSqrt2, 0.0), Complex(0.0, kInvSqrt2), Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0)};
}

double Example1Point::y1() const {
  const double r2 = x0 * x0 + y0 * y0 + x1 * x1;
  if (r2 > 1.0) throw std::domain_error("x0^2 + y0^2 + x1^2 exceeds 1");
  const double y = std::sqrt(1.0 - r2);
  return branch == Branch::Plus ? y : -y;
}

QubitState Example1Point::qubit() const { return {Complex(x0, y0), Complex(x1, y1())}; }

double example1_residual(const Example1Point& pt) {
  const double y1 = pt.y1();
  return std::abs(pt.x0 * pt.x1 + pt.y0 * y1 + pt.x0 * y1 - pt.x1 * pt.y0);
}

double lattice_coordinate(int i, int n) {
  return static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
}

std::vector<SurfacePoint> sample_example1(int grid_n, Branch branch, double tol) {
  require_grid(grid_n);
  std::vector<SurfacePoint> kept;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      for (int k = 0; k < grid_n; ++k) {
        const Example1Point pt{lattice_coordinate(i, grid_n), lattice_coordinate(j, grid_n),
                               lattice_coordinate(k, grid_n), branch};
        if (!pt.in_domain()) continue;
        const double r = example1_residual(pt);
        if (r <= tol) kept.push_back({{pt.x0, pt.y0, pt.x1}, r, to_string(branch)});
      }
  return kept;
}

QubitState example2_qubit(double lambda) {
  const double s = 1.0 / std::sqrt(1.0 + lambda * lambda);
  return {Complex(s, 0.0), Complex(0.0, lambda * s)};
}

std::array<double, 5> eq13_residuals(const Example2Params& p) {
  const auto& x = p.x;
  const auto& y = p.y;
  double line1 = 0.0;
  for (int i = 0; i < 4; ++i) line1 = std::max(line1, std::abs(x[i] * x[i] + y[i] * y[i] - kHalf));
  return {
      line1,
      std::abs(-x[0] * x[2] + x[3] * x[1] - y[0] * y[2] + y[3] * y[1]),
      std::abs(-x[0] * x[3] + x[2] * x[1] - y[0] * y[3] + y[2] * y[1]),
      std::abs(-x[0] * y[2] + x[2] * y[0] + x[3] * y[1] - x[1] * y[3]),
      std::abs(x[3] * y[0] - x[0] * y[3] + x[2] * y[1] - x[1] * y[2]),
  };
}

std::pair<TwoQubitState, TwoQubitState> build_example2_states(double x0, double y0, Branch sign) {
  if (std::abs(x0 * x0 + y0 * y0 - kHalf) > 1e-9)
    throw std::invalid_argument("x0^2 + y0^2 must equal 1/2");
  const Complex a(x0, y0);
  const double t = sign == Branch::Plus ? kInvSqrt2 : -kInvSqrt2;
  return {normalize(TwoQubitState{a, 0.0, 0.0, t}), normalize(TwoQubitState{0.0, a, t, 0.0})};
}

double example2_residual(double lambda, double x0, double y0) {
  return std::abs((kHalf - x0 * x0 - y0 * y0) * lambda / (1.0 + lambda * lambda));
}

std::vector<SurfacePoint> sample_example2(int grid_n, double tol) {
  require_grid(grid_n);
  std::vector<SurfacePoint> kept;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      for (int k = 0; k < grid_n; ++k) {
        const double l = lattice_coordinate(i, grid_n);
        const double x0 = lattice_coordinate(j, grid_n);
        const double y0 = lattice_coordinate(k, grid_n);
        const double r = example2_residual(l, x0, y0);
        if (r <= tol) kept.push_back({{l, x0, y0}, r, "both"});
      }
  return kept;
}

void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points) {
  out << "coord1,coord2,coord3,residual,branch\n";
  const auto old_flags = out.flags();
  const auto old_prec = out.precision(17);
  for (const auto& p : points)
    out << p.coords[0] << ',' << p.coords[1] << ',' << p.coords[2] << ',' << p.residual << ',' << p.branch << '\n';
  out.flags(old_flags);
  out.precision(old_prec);
}

Mat4 complete_masker_unitary(const TwoQubitState& psi0, const TwoQubitState& psi1) {
  constexpr double tol = 1e-9;
  if (!psi0.is_normalized(tol) || !psi1.is_normalized(tol))
    throw std::invalid_argument("masker completion needs normalized states");
  if (std::abs(inner(psi0, psi1)) > tol) throw std::invalid_argument("masker completion needs orthogonal states");

  std::vector<TwoQubitState> basis{psi0, psi1};
  for (std::size_t e = 0; e < 4 && basis.size() < 4; ++e) {
    TwoQubitState v = TwoQubitState::basis(e);
    // Two passes of modified Gram-Schmidt keep the completion orthogonal to
    // machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v += (-inner(q, v)) * q;
    if (v.norm() < 1e-8) continue;
    basis.push_back(normalize(v));
  }
  if (basis.size() != 4) throw std::logic_error("orthonormal completion did not reach dimension 4");

  // Column order: |00> -> Psi0, |10> -> Psi1, completions fill |01> then |11>.
  return from_columns({basis[0], basis[2], basis[1], basis[3]});
}

}  // namespace qmask
