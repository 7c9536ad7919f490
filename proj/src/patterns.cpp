#include "qmask/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <span>

#include "json.hpp"
#include "qmask/descent.hpp"

#ifndef QMASK_FIXTURE_PATH
#define QMASK_FIXTURE_PATH "data/tables.fixture.json"
#endif

namespace qmask {

namespace {

constexpr std::array<std::string_view, 4> kKetLabels{"00", "01", "10", "11"};

// Slots are kept slightly above delta inside the search so the exact
// rescaling to unit norm afterwards cannot push a witness below delta.
constexpr double kFloorMargin = 1.0 + 1e-7;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform doubles built directly from the engine's bits so that draws are
// identical across standard library implementations.
class RestartRng {
 public:
  RestartRng(std::uint64_t seed, int restart)
      : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// A coefficient slot (rho, theta) maps to (floor + rho^2) e^{i theta}.
Complex slot_value(double rho, double theta, double floor) {
  return std::polar(floor + rho * rho, theta);
}

void seed_slot(RestartRng& rng, double floor, double& rho, double& theta) {
  const double mag = rng.uniform(floor, 1.0);
  rho = std::sqrt(std::max(0.0, mag - floor));
  theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
}

std::vector<Complex> decode_slots(std::span<const double> x, std::size_t count, double floor) {
  std::vector<Complex> c(count);
  for (std::size_t i = 0; i < count; ++i) c[i] = slot_value(x[2 * i], x[2 * i + 1], floor);
  return c;
}

// Writes the 8 real components of a 2x2 matrix.
double* push_matrix(double* out, const Mat2& m) {
  for (const auto& v : m.e) {
    *out++ = v.real();
    *out++ = v.imag();
  }
  return out;
}

Mat2 marginal(const TwoQubitState& psi, Subsystem traced) { return ptrace(outer(psi, psi), traced); }

double norm_sq(const TwoQubitState& v) {
  double s = 0.0;
  for (const auto& x : v.c) s += std::norm(x);
  return s;
}

// Rescales the pre-merge coefficients so the merged state has unit norm.
std::optional<std::pair<std::vector<Complex>, TwoQubitState>> unit_state(const BasisPattern& p,
                                                                         std::vector<Complex> coeffs) {
  const double n = assemble(p, coeffs).norm();
  if (!(n > 1e-12) || !std::isfinite(n)) return std::nullopt;
  for (auto& c : coeffs) c /= n;
  return std::pair{coeffs, assemble(p, coeffs)};
}

bool slots_above(const std::vector<Complex>& coeffs, double delta) {
  return std::all_of(coeffs.begin(), coeffs.end(), [delta](Complex c) { return std::abs(c) >= delta; });
}

struct Problem {
  int variables = 0;
  int residuals = 0;
  descent::ResidualFn fn;
  std::function<std::vector<double>(RestartRng&)> seed;
  // Builds and verifies a witness; nullopt when verification fails.
  std::function<std::optional<Witness>(std::span<const double>)> extract;
};

FeasibilityOutcome run_restarts(const Problem& problem, const FeasibilityConfig& cfg) {
  FeasibilityOutcome out;
  out.best_residual = std::numeric_limits<double>::infinity();
  descent::Options opts;
  opts.max_iters = cfg.iters;

  for (int k = 0; k < cfg.restarts; ++k) {
    RestartRng rng(cfg.seed, k);
    const descent::Result res = descent::minimize(problem.fn, problem.seed(rng), problem.residuals, opts);
    out.restarts_used = k + 1;
    out.restart_residuals.push_back(res.residual_norm);
    out.best_residual = std::min(out.best_residual, res.residual_norm);
    if (res.residual_norm <= cfg.tol) {
      if (auto w = problem.extract(res.x)) {
        out.witness = std::move(w);
        out.status = FeasibilityStatus::Feasible;
        return out;
      }
    }
  }
  out.status = out.best_residual >= cfg.infeasible_floor ? FeasibilityStatus::Infeasible
                                                         : FeasibilityStatus::Inconclusive;
  return out;
}

}  // namespace

Ket parse_ket(std::string_view label) {
  for (std::size_t i = 0; i < kKetLabels.size(); ++i)
    if (kKetLabels[i] == label) return static_cast<Ket>(i);
  throw std::invalid_argument("unknown ket label '" + std::string(label) + "'");
}

std::string_view to_string(Ket k) { return kKetLabels[static_cast<std::size_t>(k)]; }

BasisPattern::BasisPattern(std::vector<Ket> kets) : kets_(std::move(kets)) {
  if (kets_.empty() || kets_.size() > 4) throw std::invalid_argument("a pattern holds 1 to 4 kets");
}

BasisPattern BasisPattern::from_labels(const std::vector<std::string>& labels) {
  std::vector<Ket> kets;
  kets.reserve(labels.size());
  for (const auto& l : labels) kets.push_back(parse_ket(l));
  return BasisPattern(std::move(kets));
}

unsigned BasisPattern::support() const {
  unsigned mask = 0;
  for (Ket k : kets_) mask |= 1u << static_cast<unsigned>(k);
  return mask;
}

std::string BasisPattern::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < kets_.size(); ++i) {
    if (i) s += ",";
    s += qmask::to_string(kets_[i]);
  }
  return s + "]";
}

std::vector<BasisPattern> duplicate_free_patterns() {
  std::vector<BasisPattern> out;
  for (int len = 1; len <= 4; ++len)
    for (unsigned mask = 1; mask < 16; ++mask) {
      if (std::popcount(mask) != len) continue;
      std::vector<Ket> kets;
      for (unsigned i = 0; i < 4; ++i)
        if (mask & (1u << i)) kets.push_back(static_cast<Ket>(i));
      out.emplace_back(std::move(kets));
    }
  std::stable_sort(out.begin(), out.end(), [](const BasisPattern& a, const BasisPattern& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.kets() < b.kets();
  });
  return out;
}

TwoQubitState assemble(const BasisPattern& pattern, const std::vector<Complex>& coeffs) {
  if (coeffs.size() != pattern.size())
    throw std::invalid_argument("pattern has " + std::to_string(pattern.size()) + " slots but " +
                                std::to_string(coeffs.size()) + " coefficients were given");
  TwoQubitState v;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[static_cast<std::size_t>(pattern.kets()[i])] += coeffs[i];
  return v;
}

void FeasibilityConfig::validate(std::size_t longest_pattern) const {
  if (!(tol > 0.0 && tol < infeasible_floor)) throw std::invalid_argument("need 0 < tol < infeasible_floor");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (iters < 1) throw std::invalid_argument("iters must be >= 1");
  const double cap = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(longest_pattern, 1)));
  if (!(delta > 0.0 && delta < cap)) throw std::invalid_argument("delta must lie in (0, 1/sqrt(pattern length))");
}

std::string_view to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

bool verify_eq4_witness(const BasisPattern& p0, const BasisPattern& p1, const Witness& w,
                        const FeasibilityConfig& cfg) {
  if (w.coeffs0.size() != p0.size() || w.coeffs1.size() != p1.size()) return false;
  if (!slots_above(w.coeffs0, cfg.delta) || !slots_above(w.coeffs1, cfg.delta)) return false;
  const TwoQubitState psi0 = assemble(p0, w.coeffs0);
  const TwoQubitState psi1 = assemble(p1, w.coeffs1);
  if (!psi0.is_normalized() || !psi1.is_normalized()) return false;
  const PairResidual r = reduced_pair_residual(psi0, psi1);
  return std::max(r.a, r.b) <= cfg.tol;
}

bool verify_full_witness(const BasisPattern& p0, const BasisPattern& p1, const Witness& w,
                         const FeasibilityConfig& cfg) {
  if (!w.b || !verify_eq4_witness(p0, p1, w, cfg)) return false;
  const QubitState& b = *w.b;
  if (!b.is_normalized() || std::abs(b.alpha0) < cfg.delta || std::abs(b.alpha1) < cfg.delta) return false;
  const TwoQubitState psi0 = assemble(p0, w.coeffs0);
  const TwoQubitState psi1 = assemble(p1, w.coeffs1);
  if (std::abs(inner(psi0, psi1)) < cfg.delta) return false;
  return masks_state(b, psi0, psi1, cfg.tol).verdict;
}

FeasibilityOutcome feasible_eq4(const BasisPattern& p0, const BasisPattern& p1, const FeasibilityConfig& cfg) {
  cfg.validate(std::max(p0.size(), p1.size()));
  const std::size_t n0 = p0.size();
  const std::size_t n1 = p1.size();
  const double floor = cfg.delta * kFloorMargin;

  Problem pr;
  pr.variables = static_cast<int>(2 * (n0 + n1));
  pr.residuals = 8 + 8 + 2;
  pr.fn = [=](std::span<const double> x, std::span<double> r) {
    const TwoQubitState psi0 = assemble(p0, decode_slots(x, n0, floor));
    const TwoQubitState psi1 = assemble(p1, decode_slots(x.subspan(2 * n0), n1, floor));
    double* out = r.data();
    out = push_matrix(out, marginal(psi0, Subsystem::A) - marginal(psi1, Subsystem::A));
    out = push_matrix(out, marginal(psi0, Subsystem::B) - marginal(psi1, Subsystem::B));
    *out++ = norm_sq(psi0) - 1.0;
    *out++ = norm_sq(psi1) - 1.0;
  };
  pr.seed = [=](RestartRng& rng) {
    std::vector<double> x(static_cast<std::size_t>(2 * (n0 + n1)));
    for (std::size_t i = 0; i < n0 + n1; ++i) seed_slot(rng, floor, x[2 * i], x[2 * i + 1]);
    return x;
  };
  pr.extract = [=](std::span<const double> x) -> std::optional<Witness> {
    auto s0 = unit_state(p0, decode_slots(x, n0, floor));
    auto s1 = unit_state(p1, decode_slots(x.subspan(2 * n0), n1, floor));
    if (!s0 || !s1) return std::nullopt;
    Witness w{s0->first, s1->first, s0->second, s1->second, std::nullopt, 0.0};
    const PairResidual r = reduced_pair_residual(w.psi0, w.psi1);
    w.residual = std::max(r.a, r.b);
    if (!verify_eq4_witness(p0, p1, w, cfg)) return std::nullopt;
    return w;
  };
  return run_restarts(pr, cfg);
}

FeasibilityOutcome feasible_full_nonorthogonal(const BasisPattern& p0, const BasisPattern& p1,
                                                const FeasibilityConfig& cfg) {
  cfg.validate(std::max(p0.size(), p1.size()));
  const std::size_t n0 = p0.size();
  const std::size_t n1 = p1.size();
  const std::size_t slots = n0 + n1;
  const double floor = cfg.delta * kFloorMargin;

  // The qubit b is taken with real alpha0 >= 0: a global phase on b leaves
  // every condition unchanged. Variables: slots, then (rho0) for alpha0 and
  // (rho1, phi) for alpha1.
  auto decode_b = [floor, slots](std::span<const double> x) {
    const std::size_t o = 2 * slots;
    return QubitState{Complex(floor + x[o] * x[o], 0.0), slot_value(x[o + 1], x[o + 2], floor)};
  };

  Problem pr;
  pr.variables = static_cast<int>(2 * slots + 3);
  pr.residuals = 8 * 4 + 3 + 1;
  pr.fn = [=](std::span<const double> x, std::span<double> r) {
    const TwoQubitState psi0 = assemble(p0, decode_slots(x, n0, floor));
    const TwoQubitState psi1 = assemble(p1, decode_slots(x.subspan(2 * n0), n1, floor));
    const QubitState b = decode_b(x);
    const Complex z = b.alpha0 * std::conj(b.alpha1);
    const Mat4 cross = outer(psi0, psi1);
    double* out = r.data();
    out = push_matrix(out, marginal(psi0, Subsystem::A) - marginal(psi1, Subsystem::A));
    out = push_matrix(out, marginal(psi0, Subsystem::B) - marginal(psi1, Subsystem::B));
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const Mat2 t = ptrace(cross, s);
      out = push_matrix(out, z * t + std::conj(z) * t.adjoint());
    }
    *out++ = norm_sq(psi0) - 1.0;
    *out++ = norm_sq(psi1) - 1.0;
    *out++ = std::norm(b.alpha0) + std::norm(b.alpha1) - 1.0;
    *out++ = std::max(0.0, floor - std::abs(inner(psi0, psi1)));
  };
  pr.seed = [=](RestartRng& rng) {
    std::vector<double> x(2 * slots + 3);
    for (std::size_t i = 0; i < slots; ++i) seed_slot(rng, floor, x[2 * i], x[2 * i + 1]);
    const double a0 = rng.uniform(floor, 1.0);
    x[2 * slots] = std::sqrt(std::max(0.0, a0 - floor));
    seed_slot(rng, floor, x[2 * slots + 1], x[2 * slots + 2]);
    return x;
  };
  pr.extract = [=](std::span<const double> x) -> std::optional<Witness> {
    auto s0 = unit_state(p0, decode_slots(x, n0, floor));
    auto s1 = unit_state(p1, decode_slots(x.subspan(2 * n0), n1, floor));
    if (!s0 || !s1) return std::nullopt;
    Witness w{s0->first, s1->first, s0->second, s1->second, normalize(decode_b(x)), 0.0};
    const MaskingReport rep = masks_state(*w.b, w.psi0, w.psi1, cfg.tol);
    w.residual = std::max({rep.pair.a, rep.pair.b, rep.cross_a_norm, rep.cross_b_norm,
                           rep.superposition_residuals[0], rep.superposition_residuals[1]});
    if (!verify_full_witness(p0, p1, w, cfg)) return std::nullopt;
    return w;
  };
  return run_restarts(pr, cfg);
}

std::vector<FixtureRow> load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file " + path.string());
  std::vector<FixtureRow> rows;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw FixtureError("fixture root must be an array");
    for (const auto& item : doc) {
      FixtureRow row;
      row.table = item.at("table").get<int>();
      if (row.table < 1 || row.table > 4) throw FixtureError("table id out of range");
      row.psi0 = BasisPattern::from_labels(item.at("psi0_kets").get<std::vector<std::string>>());
      row.psi1 = BasisPattern::from_labels(item.at("psi1_kets").get<std::vector<std::string>>());
      const auto expected = item.at("expected").get<std::string>();
      if (expected != "mask" && expected != "no") throw FixtureError("expected must be \"mask\" or \"no\"");
      row.expected_mask = expected == "mask";
      rows.push_back(std::move(row));
    }
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError("malformed fixture " + path.string() + ": " + e.what());
  }
  return rows;
}

std::filesystem::path default_fixture_path() { return QMASK_FIXTURE_PATH; }

std::vector<TableRowResult> reproduce_table(int table, const std::vector<FixtureRow>& fixture,
                                            const FeasibilityConfig& cfg) {
  std::vector<TableRowResult> out;
  for (const auto& row : fixture) {
    if (row.table != table) continue;
    TableRowResult r{row, feasible_eq4(row.psi0, row.psi1, cfg), false};
    const auto st = r.outcome.status;
    r.agrees = (row.expected_mask && st == FeasibilityStatus::Feasible) ||
               (!row.expected_mask && st == FeasibilityStatus::Infeasible);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScanRecord> ScanReport::violations() const {
  std::vector<ScanRecord> v;
  std::copy_if(records.begin(), records.end(), std::back_inserter(v), [](const ScanRecord& r) { return r.violation; });
  return v;
}

ScanReport support_theorem_scan(const FeasibilityConfig& cfg) {
  const auto patterns = duplicate_free_patterns();
  ScanReport report;
  report.records.reserve(patterns.size() * patterns.size());
  for (const auto& p0 : patterns)
    for (const auto& p1 : patterns) {
      ScanRecord rec{p0, p1, feasible_full_nonorthogonal(p0, p1, cfg), false};
      rec.violation = rec.outcome.status == FeasibilityStatus::Feasible && p0.support() != p1.support();
      report.records.push_back(std::move(rec));
    }
  return report;
}

}  // namespace qmask
