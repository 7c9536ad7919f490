// ortho.hpp
// Orthogonal split-support pairs
//   Psi0 = a0|00> + a1|11>,  Psi1 = b0|01> + b1|10>
// together with the two worked families built on them and unitary masker
// completion.

#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "qmask/qlinalg.hpp"

namespace qmask {

struct OrthoPairParams {
  Complex a0, a1, b0, b1;

  TwoQubitState psi0() const { return {a0, 0.0, 0.0, a1}; }
  TwoQubitState psi1() const { return {0.0, b0, b1, 0.0}; }
  bool is_normalized(double tol = kNormTolerance) const;
};

// Residuals of the three reduced lines: max | |c|^2 - 1/2 | over a0,a1,b0,b1;
// |z a0 b0* + z* a1* b1|; |z a0 b1* + z* a1* b0|, with z = alpha0 conj(alpha1).
std::array<double, 3> eq9_residuals(const OrthoPairParams& p, const QubitState& b);

enum class Branch { Plus, Minus };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view s);

// ---- first family: fixed pair, free qubit -------------------------------
//
// Psi0 = (|00> + i|11>)/sqrt2, Psi1 = (|01> + |10>)/sqrt2, and
// alpha0 = x0 + i y0, alpha1 = x1 + i y1 with y1 = +-sqrt(1 - x0^2 - y0^2 - x1^2).

OrthoPairParams example1_pair();

struct Example1Point {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0;
  Branch branch = Branch::Plus;

  bool in_domain() const { return x0 * x0 + y0 * y0 + x1 * x1 <= 1.0; }
  // Throws std::domain_error outside the unit ball.
  double y1() const;
  QubitState qubit() const;
};

// |x0 x1 + s (y0 + x0) y - x1 y0| with y = sqrt(1 - x0^2 - y0^2 - x1^2) and
// s = +1 or -1 by branch. Throws std::domain_error outside the unit ball.
double example1_residual(const Example1Point& pt);

struct SurfacePoint {
  std::array<double, 3> coords{};
  double residual = 0.0;
  std::string_view branch;
};

// Lattice value i of an n-point grid on [-1, 1].
double lattice_coordinate(int i, int n);

// (x0, y0, x1) over an n^3 lattice; points outside the unit ball are skipped.
std::vector<SurfacePoint> sample_example1(int grid_n, Branch branch, double tol);

// ---- second family: fixed qubit, free pair ------------------------------
//
// alpha0 = 1/sqrt(1+l^2), alpha1 = i l/sqrt(1+l^2); a0 = x0+iy0, a1 = x1+iy1,
// b0 = x2+iy2, b1 = x3+iy3.

struct Example2Params {
  double lambda = 0.0;
  std::array<double, 4> x{};
  std::array<double, 4> y{};
};

QubitState example2_qubit(double lambda);

// The five reduced lines: max_i |x_i^2 + y_i^2 - 1/2|, then the four bilinear
// lines in their printed order, as absolute values.
std::array<double, 5> eq13_residuals(const Example2Params& p);

// Psi0 = (x0+iy0)|00> +- (sqrt2/2)|11>, Psi1 = (x0+iy0)|01> +- (sqrt2/2)|10>.
// Requires |x0^2 + y0^2 - 1/2| <= 1e-9 (std::invalid_argument otherwise);
// the returned states are rescaled to unit norm.
std::pair<TwoQubitState, TwoQubitState> build_example2_states(double x0, double y0, Branch sign);

// |(1/2 - x0^2 - y0^2) * lambda / (1 + lambda^2)|.
double example2_residual(double lambda, double x0, double y0);

// (lambda, x0, y0) over an n^3 lattice on [-1, 1]^3.
std::vector<SurfacePoint> sample_example2(int grid_n, double tol);

// CSV with header coord1,coord2,coord3,residual,branch.
void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points);

// ---- masker ---------------------------------------------------------------

// Unitary F with F|00> = Psi0 and F|10> = Psi1. The two free columns come
// from Gram-Schmidt over e0, e1, e2, e3 in that order, skipping candidates
// whose orthogonal remainder is below 1e-8. Throws std::invalid_argument for
// unnormalized or non-orthogonal input (tolerance 1e-9).
Mat4 complete_masker_unitary(const TwoQubitState& psi0, const TwoQubitState& psi1);

}  // namespace qmask
