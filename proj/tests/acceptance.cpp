// Acceptance suite: one PASS/FAIL line per criterion, evidence lines above it.
//
// usage: qmask_acceptance [criterion ...]   (default: all of 1-8)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "qmask/conditions.hpp"
#include "qmask/ortho.hpp"
#include "qmask/patterns.hpp"
#include "support.hpp"

using namespace qmask;
using namespace qmask::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string coeffs(const std::vector<Complex>& c) {
  std::ostringstream s;
  s.precision(6);
  s << "[";
  for (std::size_t i = 0; i < c.size(); ++i) s << (i ? ", " : "") << c[i].real() << (c[i].imag() < 0 ? "" : "+") << c[i].imag() << "i";
  return s.str() + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const double kS = 1.0 / std::sqrt(2.0);

// 1. Fixed point of the first family.
Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const OrthoPairParams pair = example1_pair();
  const TwoQubitState psi0 = pair.psi0();
  const TwoQubitState psi1 = pair.psi1();
  const QubitState b{Complex(0.2, -0.2), Complex(std::sqrt(23.0) / 5.0, 0.0)};
  const TwoQubitState psi = normalize(b.alpha0 * psi0 + b.alpha1 * psi1);
  const MaskingReport rep = masks_state(b, psi0, psi1, 1e-12);
  const double elapsed = seconds_since(t0);

  const std::vector<std::pair<std::string, const TwoQubitState*>> states{{"psi0", &psi0}, {"psi1", &psi1}, {"psi", &psi}};
  double worst = 0.0;
  std::string worst_name;
  for (const auto& [name, st] : states)
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const Mat2 rho = ptrace(outer(*st, *st), s);
      const double d = frob_dist(rho, half_identity());
      std::cout << "    Tr_" << (s == Subsystem::A ? "A" : "B") << "(" << name << ") - I/2: " << sci(d);
      if (d > 1e-12) std::cout << "  off-diagonal " << rho(0, 1).real() << (rho(0, 1).imag() < 0 ? "" : "+") << rho(0, 1).imag() << "i";
      std::cout << "\n";
      if (d > worst) {
        worst = d;
        worst_name = name;
      }
    }
  std::cout << "    verdict " << (rep.verdict ? "true" : "false") << ", cross_a " << sci(rep.cross_a_norm)
            << ", cross_b " << sci(rep.cross_b_norm) << "\n";
  const bool pass = worst <= 1e-12 && rep.verdict && elapsed < 1e-3;
  return {pass, "max Frobenius distance " + sci(worst) + " (" + worst_name + "), verdict " +
                    (rep.verdict ? "true" : "false") + ", " + sci(elapsed) + " s"};
}

// 2. Tables 1-4 under the default search.
Verdict criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fixture = load_fixture(default_fixture_path());
  const FeasibilityConfig cfg;
  const int printed_masks[5] = {0, 4, 6, 4, 1};
  bool pass = true;
  int rows = 0, mismatches = 0;
  for (int t = 1; t <= 4; ++t) {
    int confirmed = 0, expected = 0, n = 0;
    for (const auto& r : reproduce_table(t, fixture, cfg)) {
      ++n;
      expected += r.row.expected_mask;
      const auto& o = r.outcome;
      if (o.status == FeasibilityStatus::Feasible) {
        const Witness& w = *o.witness;
        const PairResidual pr = reduced_pair_residual(assemble(r.row.psi0, w.coeffs0), assemble(r.row.psi1, w.coeffs1));
        const bool ok = std::max(pr.a, pr.b) <= 1e-8 && verify_eq4_witness(r.row.psi0, r.row.psi1, w, cfg);
        if (!ok) {
          pass = false;
          std::cout << "    table " << t << " " << r.row.psi0.to_string() << " / " << r.row.psi1.to_string()
                    << ": witness failed re-verification\n";
        }
      } else if (o.status == FeasibilityStatus::Infeasible) {
        if (o.best_residual < 1e-6 || o.restarts_used < 200) pass = false;
      }
      if (r.agrees) {
        confirmed += r.row.expected_mask;
        continue;
      }
      ++mismatches;
      pass = false;
      std::cout << "    MISMATCH table " << t << " " << r.row.psi0.to_string() << " / " << r.row.psi1.to_string()
                << ": printed " << (r.row.expected_mask ? "mask" : "no") << ", oracle " << to_string(o.status);
      if (o.witness)
        std::cout << ", witness residual " << sci(o.witness->residual) << ", psi0 slots " << coeffs(o.witness->coeffs0)
                  << ", psi1 slots " << coeffs(o.witness->coeffs1);
      else
        std::cout << ", best residual " << sci(o.best_residual) << " over " << o.restarts_used << " restarts";
      std::cout << "\n";
    }
    rows += n;
    std::cout << "    table " << t << ": " << n << " rows, " << confirmed << "/" << expected << " printed masks confirmed\n";
    if (expected != printed_masks[t]) pass = false;
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 600.0) pass = false;
  return {pass, std::to_string(rows) + " rows, " + std::to_string(mismatches) + " contradict the printed verdicts, " +
                    sci(elapsed) + " s"};
}

// 3. Non-orthogonal support scan.
Verdict criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const FeasibilityConfig cfg;
  const ScanReport scan = support_theorem_scan(cfg);
  int feasible = 0, inconclusive = 0, unverified = 0;
  for (const auto& r : scan.records) {
    if (r.outcome.status == FeasibilityStatus::Inconclusive) ++inconclusive;
    if (r.outcome.status != FeasibilityStatus::Feasible) continue;
    ++feasible;
    if (!verify_full_witness(r.psi0, r.psi1, *r.outcome.witness, cfg)) ++unverified;
  }
  const auto violations = scan.violations();
  for (const auto& v : violations) {
    const Witness& w = *v.outcome.witness;
    std::cout << "    VIOLATION " << v.psi0.to_string() << " / " << v.psi1.to_string() << ": residual "
              << sci(w.residual) << ", |<psi0|psi1>| " << std::abs(inner(w.psi0, w.psi1)) << ", b "
              << coeffs({w.b->alpha0, w.b->alpha1}) << ", psi0 slots " << coeffs(w.coeffs0) << ", psi1 slots "
              << coeffs(w.coeffs1) << "\n";
  }
  const double elapsed = seconds_since(t0);
  const bool pass = violations.empty() && unverified == 0 && elapsed < 900.0;
  return {pass, std::to_string(scan.records.size()) + " pairs, " + std::to_string(feasible) + " feasible, " +
                    std::to_string(inconclusive) + " inconclusive, " + std::to_string(violations.size()) +
                    " violations, " + sci(elapsed) + " s"};
}

// 4. Balance of the split-support magnitudes is necessary.
Verdict criterion4() {
  Gen g(4004);
  double min_unbalanced = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    double p, q;
    do {
      p = g.uniform();
      q = g.uniform();
    } while (std::max({std::abs(p - 0.5), std::abs(q - 0.5)}) < 0.01);
    const OrthoPairParams pr{std::polar(std::sqrt(p), g.phase()), std::polar(std::sqrt(1 - p), g.phase()),
                             std::polar(std::sqrt(q), g.phase()), std::polar(std::sqrt(1 - q), g.phase())};
    const PairResidual r = reduced_pair_residual(pr.psi0(), pr.psi1());
    min_unbalanced = std::min(min_unbalanced, std::max(r.a, r.b));
  }
  double max_balanced = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const OrthoPairParams pr = g.balanced_ortho_pair();
    for (const auto& psi : {pr.psi0(), pr.psi1()})
      for (Subsystem s : {Subsystem::A, Subsystem::B})
        max_balanced = std::max(max_balanced, frob_dist(ptrace(outer(psi, psi), s), half_identity()));
  }
  return {min_unbalanced >= 1e-3 && max_balanced <= 1e-12,
          "unbalanced min residual " + sci(min_unbalanced) + ", balanced max marginal error " + sci(max_balanced)};
}

// 5. Zero set of the second family on the 201^3 lattice.
Verdict criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int n = 201;
  constexpr double eps = 1e-9;
  const auto kept = sample_example2(n, 1e-10);
  auto index = [](double c) { return static_cast<int>(std::lround((c + 1.0) * (n - 1) / 2.0)); };
  std::set<std::tuple<int, int, int>> sampled;
  for (const auto& p : kept) sampled.insert({index(p.coords[0]), index(p.coords[1]), index(p.coords[2])});

  std::size_t predicted = 0, disagreements = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double l = lattice_coordinate(i, n);
        const double x0 = lattice_coordinate(j, n);
        const double y0 = lattice_coordinate(k, n);
        const bool in = std::abs(l) <= eps || std::abs(x0 * x0 + y0 * y0 - 0.5) <= eps;
        predicted += in;
        if (in != static_cast<bool>(sampled.count({i, j, k}))) ++disagreements;
      }
  const double elapsed = seconds_since(t0);
  return {disagreements == 0 && sampled.size() == kept.size() && elapsed < 30.0,
          std::to_string(kept.size()) + " kept, " + std::to_string(predicted) + " predicted, " +
              std::to_string(disagreements) + " disagreements, " + sci(elapsed) + " s"};
}

// 6. Surface membership decides masking for the first family.
Verdict criterion6() {
  Gen g(6006);
  const OrthoPairParams pair = example1_pair();
  bool pass = true;
  std::ostringstream detail;
  for (Branch br : {Branch::Plus, Branch::Minus}) {
    int kept = 0, kept_ok = 0, rejected = 0, rejected_ok = 0;
    while (kept < 1000) {
      const QubitState b = example1_surface_qubit(g);
      const Example1Point pt{b.alpha0.real(), b.alpha0.imag(), b.alpha1.real(),
                             b.alpha1.imag() >= 0 ? Branch::Plus : Branch::Minus};
      if (pt.branch != br || example1_residual(pt) > 1e-9) continue;
      ++kept;
      kept_ok += masks_state(pt.qubit(), pair.psi0(), pair.psi1(), 1e-9).verdict;
    }
    for (const auto& p : sample_example1(101, br, 1e-9)) {
      ++kept;
      kept_ok += masks_state(Example1Point{p.coords[0], p.coords[1], p.coords[2], br}.qubit(), pair.psi0(),
                             pair.psi1(), 1e-9)
                     .verdict;
    }
    while (rejected < 1000) {
      const Example1Point pt{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), br};
      if (!pt.in_domain() || example1_residual(pt) < 1e-3) continue;
      ++rejected;
      rejected_ok += !masks_state(pt.qubit(), pair.psi0(), pair.psi1(), 1e-9).verdict;
    }
    pass = pass && kept_ok == kept && rejected_ok == rejected;
    detail << (br == Branch::Minus ? "; " : "") << to_string(br) << ": " << kept_ok << "/" << kept << " kept mask, "
           << rejected_ok << "/" << rejected << " rejected fail";
  }
  return {pass, detail.str()};
}

// 7. Unitary completion.
Verdict criterion7() {
  Gen g(7007);
  double worst_unitary = 0.0, worst_column = 0.0;
  for (int t = 0; t < 100; ++t) {
    TwoQubitState a, b;
    if (t % 2 == 0) {
      a = g.state();
      b = g.state();
      b += (-inner(a, b)) * a;
      b = normalize(b);
    } else {
      const OrthoPairParams p = g.balanced_ortho_pair();
      a = p.psi0();
      b = p.psi1();
    }
    const Mat4 f = complete_masker_unitary(a, b);
    worst_unitary = std::max(worst_unitary, frobenius_norm(f.adjoint() * f - Mat4::identity()));
    worst_column = std::max({worst_column, (apply(f, TwoQubitState::basis(0)) + Complex(-1.0) * a).norm(),
                             (apply(f, TwoQubitState::basis(2)) + Complex(-1.0) * b).norm()});
  }
  return {worst_unitary <= 1e-12 && worst_column <= 1e-12,
          "max ||F^dag F - I||_F " + sci(worst_unitary) + ", max column error " + sci(worst_column)};
}

// 8. Scalar condition lines against the matrix form.
Verdict criterion8() {
  Gen g(8008);
  constexpr double tol = 1e-12;
  int agree = 0, masked = 0;
  for (int t = 0; t < 10000; ++t) {
    Triple tr;
    if (t % 2 == 0) {
      tr = {g.qubit(), g.state(), g.state()};
    } else {
      tr = masking_triple(g);
    }
    const auto lines = eq7_eq8_residuals(tr.psi0, tr.psi1, tr.b);
    bool scalar = true;
    for (double v : lines) scalar = scalar && v <= tol;
    const bool matrix = frobenius_norm(cross_term_matrix(tr.psi0, tr.psi1, tr.b, Subsystem::A)) <= tol &&
                        frobenius_norm(cross_term_matrix(tr.psi0, tr.psi1, tr.b, Subsystem::B)) <= tol;
    agree += scalar == matrix;
    masked += matrix;
  }
  return {agree == 10000, std::to_string(agree) + "/10000 agree (" + std::to_string(masked) + " with vanishing cross terms)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmask acceptance suite"};
  std::vector<int> which;
  app.add_option("criteria", which, "Criteria to run (default all)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::vector<std::pair<std::string, std::function<Verdict()>>> all{
      {"example-1 fixed point", criterion1},       {"table reproduction", criterion2},
      {"support theorem scan", criterion3},        {"balance necessity", criterion4},
      {"example-2 zero set", criterion5},          {"example-1 surface consistency", criterion6},
      {"masker unitarity", criterion7},            {"scalar/matrix equivalence", criterion8},
  };
  int failed = 0;
  for (int c : which) {
    const auto& [name, fn] = all[static_cast<std::size_t>(c - 1)];
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << "criterion " << c << " (" << name << "): " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
