// conditions.hpp
// Masking conditions for a qubit b = alpha0|0> + alpha1|1> encoded as
// Psi = alpha0 Psi0 + alpha1 Psi1, evaluated as numerical residuals.
//
// Verdicts are always computed from partial-trace matrices. The scalar
// shorthands in CrossTermScalars are views for inspection only.

#pragma once

#include <array>

#include "qmask/qlinalg.hpp"

namespace qmask {

// Entries of Tr_A(|Psi0><Psi1|) (unprimed) and Tr_B(|Psi0><Psi1|) (primed).
//
// d is the printed shorthand conj(a1) b1 + conj(a3) b3, which is the
// conjugate of the (1,1) entry of Tr_A(|Psi0><Psi1|). d_entry holds that
// entry itself and is what the Eq. (7)-style residuals consume.
struct CrossTermScalars {
  Complex a, b, c, d;
  Complex d_entry;
  Complex ap, bp, cp, dp;
};

struct PairResidual {
  double a = 0.0;  // ||Tr_A(Psi0 Psi0^dag) - Tr_A(Psi1 Psi1^dag)||_F
  double b = 0.0;  // same for Tr_B
};

struct MaskingReport {
  std::array<double, 6> eq4_residuals{};
  PairResidual pair;
  double cross_a_norm = 0.0;
  double cross_b_norm = 0.0;
  // Marginals of the renormalized superposition against those of Psi0,
  // traced over A then B.
  std::array<double, 2> superposition_residuals{};
  double superposition_norm = 0.0;
  bool degenerate = false;  // ||Psi|| < kDegenerateNorm
  bool verdict = false;
  double tol = kDefaultTolerance;
};

inline constexpr double kDegenerateNorm = 1e-6;

// Absolute values of the six marginal-equality lines, in order: the four
// diagonal balances (|a0|^2+|a1|^2-..., |a0|^2+|a2|^2-..., |a1|^2+|a3|^2-...,
// |a2|^2+|a3|^2-...) then the two off-diagonal lines.
std::array<double, 6> eq4_residuals(const TwoQubitState& psi0, const TwoQubitState& psi1);

// Throws std::invalid_argument unless both states are normalized.
PairResidual reduced_pair_residual(const TwoQubitState& psi0, const TwoQubitState& psi1);

// alpha0 conj(alpha1) Tr_x(Psi0 Psi1^dag) + conj(alpha0) alpha1 Tr_x(Psi1 Psi0^dag),
// where x is the traced subsystem.
Mat2 cross_term_matrix(const TwoQubitState& psi0, const TwoQubitState& psi1, const QubitState& b,
                       Subsystem traced);

CrossTermScalars cross_scalars(const TwoQubitState& psi0, const TwoQubitState& psi1);

MaskingReport masks_state(const QubitState& b, const TwoQubitState& psi0, const TwoQubitState& psi1,
                          double tol = kDefaultTolerance);

// True iff the pair masks every b: equal marginals and vanishing
// Tr_A(Psi0 Psi1^dag), Tr_B(Psi0 Psi1^dag).
bool masks_all_superpositions(const TwoQubitState& psi0, const TwoQubitState& psi1,
                              double tol = kDefaultTolerance);

// |Re(z A)|, |Re(z D_entry)|, |z B + conj(z) conj(C)| followed by the primed
// triple, with z = alpha0 conj(alpha1).
std::array<double, 6> eq7_eq8_residuals(const TwoQubitState& psi0, const TwoQubitState& psi1,
                                        const QubitState& b);

}  // namespace qmask
