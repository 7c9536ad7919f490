// patterns.hpp
// Basis-term patterns and a seeded feasibility oracle for the masking
// equations over nonzero coefficients.
//
// A pattern is an ordered list of computational kets, each carrying its own
// coefficient slot with |c| >= delta. Repeated kets are summed after the
// coefficients are assigned, so merged amplitudes may vanish while every
// individual slot stays bounded away from zero.
//
// Feasibility is decided by random-restart local descent. Feasible is only
// reported with a witness that passes an independent re-check through the
// conditions module; Infeasible means every restart stalled at or above
// infeasible_floor; anything in between is Inconclusive.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmask/conditions.hpp"
#include "qmask/qlinalg.hpp"

namespace qmask {

enum class Ket : std::uint8_t { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

Ket parse_ket(std::string_view label);
std::string_view to_string(Ket k);

class BasisPattern {
 public:
  BasisPattern() = default;
  explicit BasisPattern(std::vector<Ket> kets);
  // From labels such as {"00", "01"}.
  static BasisPattern from_labels(const std::vector<std::string>& labels);

  const std::vector<Ket>& kets() const { return kets_; }
  std::size_t size() const { return kets_.size(); }
  // Bitmask of distinct kets present (bit i set for basis index i).
  unsigned support() const;
  std::string to_string() const;

  friend bool operator==(const BasisPattern&, const BasisPattern&) = default;

 private:
  std::vector<Ket> kets_;
};

// The 15 nonempty duplicate-free patterns, by length then lexicographically.
std::vector<BasisPattern> duplicate_free_patterns();

// Sum of coeffs[i] |kets[i]>. Returned unnormalized. Throws
// std::invalid_argument when lengths differ.
TwoQubitState assemble(const BasisPattern& pattern, const std::vector<Complex>& coeffs);

struct FeasibilityConfig {
  double delta = 0.1;
  int restarts = 200;
  int iters = 2000;
  double tol = 1e-8;
  double infeasible_floor = 1e-6;
  std::uint64_t seed = 42;

  // Throws std::invalid_argument unless 0 < tol < infeasible_floor,
  // restarts >= 1, iters >= 1 and delta lies in (0, 1/sqrt(longest)).
  void validate(std::size_t longest_pattern) const;
};

enum class FeasibilityStatus { Feasible, Infeasible, Inconclusive };

std::string_view to_string(FeasibilityStatus s);

struct Witness {
  std::vector<Complex> coeffs0;  // pre-merge, already scaled to the unit-norm states
  std::vector<Complex> coeffs1;
  TwoQubitState psi0;
  TwoQubitState psi1;
  std::optional<QubitState> b;  // present for the full masking system
  double residual = 0.0;       // independently recomputed
};

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::Inconclusive;
  std::optional<Witness> witness;
  double best_residual = 0.0;
  int restarts_used = 0;
  // Final objective norm of every restart, in restart order.
  std::vector<double> restart_residuals;
};

// Marginal-equality system only: unit-norm states, |c| >= delta on every
// slot, Tr_A and Tr_B marginals equal.
FeasibilityOutcome feasible_eq4(const BasisPattern& p0, const BasisPattern& p1, const FeasibilityConfig& cfg);

// Full system for non-orthogonal pairs: marginal equality, vanishing cross
// terms for some b with |alpha0|, |alpha1| >= delta, and |<Psi0|Psi1>| >= delta.
FeasibilityOutcome feasible_full_nonorthogonal(const BasisPattern& p0, const BasisPattern& p1,
                                                const FeasibilityConfig& cfg);

// Re-checks a witness from scratch. Used by the oracle before it reports
// Feasible and available to callers that want to audit a result.
bool verify_eq4_witness(const BasisPattern& p0, const BasisPattern& p1, const Witness& w,
                        const FeasibilityConfig& cfg);
bool verify_full_witness(const BasisPattern& p0, const BasisPattern& p1, const Witness& w,
                         const FeasibilityConfig& cfg);

// ---- table fixtures ------------------------------------------------------

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixtureRow {
  int table = 0;
  BasisPattern psi0;
  BasisPattern psi1;
  bool expected_mask = false;
};

// Throws FixtureError when the file is missing or malformed.
std::vector<FixtureRow> load_fixture(const std::filesystem::path& path);

// Path of the fixture shipped with the source tree.
std::filesystem::path default_fixture_path();

struct TableRowResult {
  FixtureRow row;
  FeasibilityOutcome outcome;
  // Inconclusive never agrees.
  bool agrees = false;
};

std::vector<TableRowResult> reproduce_table(int table, const std::vector<FixtureRow>& fixture,
                                            const FeasibilityConfig& cfg);

struct ScanRecord {
  BasisPattern psi0;
  BasisPattern psi1;
  FeasibilityOutcome outcome;
  // Feasible with differing ket sets.
  bool violation = false;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  std::vector<ScanRecord> violations() const;
};

// All 15 x 15 ordered pairs of duplicate-free patterns.
ScanReport support_theorem_scan(const FeasibilityConfig& cfg);

}  // namespace qmask
