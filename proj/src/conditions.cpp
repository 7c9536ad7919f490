#include "qmask/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmask {

namespace {

void require_normalized(const TwoQubitState& psi, const char* name) {
  if (!psi.is_normalized()) throw std::invalid_argument(std::string(name) + " is not normalized");
}

Mat2 marginal(const TwoQubitState& psi, Subsystem traced) { return ptrace(outer(psi, psi), traced); }

}  // namespace

std::array<double, 6> eq4_residuals(const TwoQubitState& psi0, const TwoQubitState& psi1) {
  const auto& a = psi0.c;
  const auto& b = psi1.c;
  auto n = [](Complex x) { return std::norm(x); };
  return {
      std::abs(n(a[0]) + n(a[1]) - n(b[0]) - n(b[1])),
      std::abs(n(a[0]) + n(a[2]) - n(b[0]) - n(b[2])),
      std::abs(n(a[1]) + n(a[3]) - n(b[1]) - n(b[3])),
      std::abs(n(a[2]) + n(a[3]) - n(b[2]) - n(b[3])),
      std::abs(a[0] * std::conj(a[1]) + a[2] * std::conj(a[3]) - b[0] * std::conj(b[1]) -
               b[2] * std::conj(b[3])),
      std::abs(a[0] * std::conj(a[2]) + a[1] * std::conj(a[3]) - b[0] * std::conj(b[2]) -
               b[1] * std::conj(b[3])),
  };
}

PairResidual reduced_pair_residual(const TwoQubitState& psi0, const TwoQubitState& psi1) {
  require_normalized(psi0, "psi0");
  require_normalized(psi1, "psi1");
  return {frob_dist(marginal(psi0, Subsystem::A), marginal(psi1, Subsystem::A)),
          frob_dist(marginal(psi0, Subsystem::B), marginal(psi1, Subsystem::B))};
}

Mat2 cross_term_matrix(const TwoQubitState& psi0, const TwoQubitState& psi1, const QubitState& b,
                       Subsystem traced) {
  require_normalized(psi0, "psi0");
  require_normalized(psi1, "psi1");
  const Complex z = b.alpha0 * std::conj(b.alpha1);
  return z * ptrace(outer(psi0, psi1), traced) + std::conj(z) * ptrace(outer(psi1, psi0), traced);
}

CrossTermScalars cross_scalars(const TwoQubitState& psi0, const TwoQubitState& psi1) {
  const auto& a = psi0.c;
  const auto& b = psi1.c;
  auto cj = [](Complex x) { return std::conj(x); };
  CrossTermScalars s;
  s.a = a[0] * cj(b[0]) + a[2] * cj(b[2]);
  s.b = a[0] * cj(b[1]) + a[2] * cj(b[3]);
  s.c = a[1] * cj(b[0]) + a[3] * cj(b[2]);
  s.d = cj(a[1]) * b[1] + cj(a[3]) * b[3];
  s.d_entry = a[1] * cj(b[1]) + a[3] * cj(b[3]);
  s.ap = a[0] * cj(b[0]) + a[1] * cj(b[1]);
  s.bp = a[0] * cj(b[2]) + a[1] * cj(b[3]);
  s.cp = a[2] * cj(b[0]) + a[3] * cj(b[1]);
  s.dp = a[2] * cj(b[2]) + a[3] * cj(b[3]);
  return s;
}

MaskingReport masks_state(const QubitState& b, const TwoQubitState& psi0, const TwoQubitState& psi1,
                          double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  MaskingReport r;
  r.tol = tol;
  r.eq4_residuals = eq4_residuals(psi0, psi1);
  r.pair = reduced_pair_residual(psi0, psi1);
  r.cross_a_norm = frobenius_norm(cross_term_matrix(psi0, psi1, b, Subsystem::A));
  r.cross_b_norm = frobenius_norm(cross_term_matrix(psi0, psi1, b, Subsystem::B));

  const TwoQubitState psi = b.alpha0 * psi0 + b.alpha1 * psi1;
  r.superposition_norm = psi.norm();
  r.degenerate = r.superposition_norm < kDegenerateNorm;
  if (!r.degenerate) {
    const TwoQubitState unit = normalize(psi);
    r.superposition_residuals = {
        frob_dist(marginal(unit, Subsystem::A), marginal(psi0, Subsystem::A)),
        frob_dist(marginal(unit, Subsystem::B), marginal(psi0, Subsystem::B)),
    };
  }

  const auto within = [tol](double x) { return x <= tol; };
  r.verdict = !r.degenerate && std::all_of(r.eq4_residuals.begin(), r.eq4_residuals.end(), within) &&
              within(r.pair.a) && within(r.pair.b) && within(r.cross_a_norm) && within(r.cross_b_norm) &&
              std::all_of(r.superposition_residuals.begin(), r.superposition_residuals.end(), within);
  return r;
}

bool masks_all_superpositions(const TwoQubitState& psi0, const TwoQubitState& psi1, double tol) {
  const PairResidual p = reduced_pair_residual(psi0, psi1);
  if (p.a > tol || p.b > tol) return false;
  const Mat4 cross = outer(psi0, psi1);
  return frobenius_norm(ptrace_a(cross)) <= tol && frobenius_norm(ptrace_b(cross)) <= tol;
}

std::array<double, 6> eq7_eq8_residuals(const TwoQubitState& psi0, const TwoQubitState& psi1,
                                        const QubitState& b) {
  const CrossTermScalars s = cross_scalars(psi0, psi1);
  const Complex z = b.alpha0 * std::conj(b.alpha1);
  const Complex zc = std::conj(z);
  return {
      std::abs((z * s.a).real()),
      std::abs((z * s.d_entry).real()),
      std::abs(z * s.b + zc * std::conj(s.c)),
      std::abs((z * s.ap).real()),
      std::abs((z * s.dp).real()),
      std::abs(z * s.bp + zc * std::conj(s.cp)),
  };
}

}  // namespace qmask
