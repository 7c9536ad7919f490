// qmask: verification runs over the qubit masking conditions.
//
// Exit codes: 0 success, 1 verdict or mismatch failure, 2 input/environment
// failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmask/conditions.hpp"
#include "qmask/ortho.hpp"
#include "qmask/patterns.hpp"
#include "qmask/state_io.hpp"

namespace {

using nlohmann::json;
using namespace qmask;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct RunConfig {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 42;
  int restarts = 200;
  int grid = 101;
  std::string out;
  std::string format;  // empty: the command's natural format
  std::string fixture = default_fixture_path().string();
};

// Writes text to --out or stdout. Returns false when the path is unwritable.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

FeasibilityConfig search_config(const RunConfig& rc) {
  FeasibilityConfig cfg;
  cfg.seed = rc.seed;
  cfg.restarts = rc.restarts;
  return cfg;
}

int cmd_check(const RunConfig& rc, const std::string& state_file, const std::string& psi0_file,
              const std::string& psi1_file) {
  try {
    const auto b = read_qubit_state(state_file);
    const auto psi0 = read_two_qubit_state(psi0_file);
    const auto psi1 = read_two_qubit_state(psi1_file);
    for (const auto& [name, fixed, drift] : {std::tuple{state_file, b.renormalized, b.drift},
                                             std::tuple{psi0_file, psi0.renormalized, psi0.drift},
                                             std::tuple{psi1_file, psi1.renormalized, psi1.drift}})
      if (fixed) std::cerr << "warning: " << name << " renormalized (norm^2 drift " << drift << ")\n";

    const MaskingReport report = masks_state(b.state, psi0.state, psi1.state, rc.tol);
    if (!emit(rc.out, to_json(report).dump(2) + "\n")) {
      std::cerr << "error: cannot write " << rc.out << "\n";
      return kInputError;
    }
    return report.verdict ? kOk : kFail;
  } catch (const StateFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct TablesSummary {
  json report = json::array();
  int rows = 0;
  int mismatches = 0;
  int confirmed_masks = 0;
};

TablesSummary run_tables(const std::vector<FixtureRow>& fixture, std::optional<int> only,
                         const FeasibilityConfig& cfg) {
  TablesSummary s;
  for (int t = 1; t <= 4; ++t) {
    if (only && *only != t) continue;
    for (const auto& r : reproduce_table(t, fixture, cfg)) {
      ++s.rows;
      if (!r.agrees) ++s.mismatches;
      if (r.agrees && r.row.expected_mask) ++s.confirmed_masks;
      s.report.push_back(to_json(r));
    }
  }
  return s;
}

int cmd_tables(const RunConfig& rc, std::optional<int> table) {
  std::vector<FixtureRow> fixture;
  try {
    fixture = load_fixture(rc.fixture);
  } catch (const FixtureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  const TablesSummary s = run_tables(fixture, table, search_config(rc));
  std::string text = s.report.dump(2) + "\n";
  if (rc.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "table,psi0_kets,psi1_kets,expected,status,best_residual,agrees\n";
    for (const auto& row : s.report)
      csv << row["table"].get<int>() << ",\"" << row["psi0_kets"].get<std::string>() << "\",\""
          << row["psi1_kets"].get<std::string>() << "\"," << row["expected"].get<std::string>() << ","
          << row["outcome"]["status"].get<std::string>() << "," << row["outcome"]["best_residual"].get<double>()
          << "," << (row["agrees"].get<bool>() ? "true" : "false") << "\n";
    text = csv.str();
  }
  if (!emit(rc.out, text)) {
    std::cerr << "error: cannot write " << rc.out << "\n";
    return kInputError;
  }
  std::cerr << s.rows << " rows, " << s.mismatches << " mismatches, " << s.confirmed_masks
            << " masking rows confirmed\n";
  for (const auto& row : s.report)
    if (!row["agrees"].get<bool>())
      std::cerr << "  mismatch: table " << row["table"] << " " << row["psi0_kets"].get<std::string>() << " / "
                << row["psi1_kets"].get<std::string>() << " expected " << row["expected"].get<std::string>()
                << " got " << row["outcome"]["status"].get<std::string>() << "\n";
  return s.mismatches == 0 ? kOk : kFail;
}

int cmd_surface(const RunConfig& rc, int example, const std::string& branch) {
  std::vector<SurfacePoint> pts;
  if (example == 1)
    pts = sample_example1(rc.grid, parse_branch(branch), rc.tol);
  else
    pts = sample_example2(rc.grid, rc.tol);
  std::ostringstream text;
  if (rc.format == "json") {
    json arr = json::array();
    for (const auto& p : pts)
      arr.push_back({{"coords", p.coords}, {"residual", p.residual}, {"branch", std::string(p.branch)}});
    text << arr.dump(2) << "\n";
  } else {
    write_surface_csv(text, pts);
  }
  if (!emit(rc.out, text.str())) {
    std::cerr << "error: cannot write " << rc.out << "\n";
    return kInputError;
  }
  std::cerr << pts.size() << " points kept\n";
  return kOk;
}

int cmd_verify_paper(const RunConfig& rc) {
  std::vector<FixtureRow> fixture;
  try {
    fixture = load_fixture(rc.fixture);
  } catch (const FixtureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  int failures = 0;
  auto line = [&failures](const std::string& name, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
  };
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
  };

  const OrthoPairParams pair = example1_pair();
  const QubitState b1{Complex(0.2, -0.2), Complex(std::sqrt(23.0) / 5.0, 0.0)};
  const MaskingReport ex1 = masks_state(b1, pair.psi0(), pair.psi1(), rc.tol);
  line("example1-fixed-point", ex1.verdict,
       "cross_a=" + fmt(ex1.cross_a_norm) + " cross_b=" + fmt(ex1.cross_b_norm));

  const auto e9 = eq9_residuals(pair, b1);
  line("eq9-example1", e9[0] <= rc.tol && e9[1] <= rc.tol && e9[2] <= rc.tol,
       "residuals=" + fmt(e9[0]) + "," + fmt(e9[1]) + "," + fmt(e9[2]));

  const Example1Point p1{-0.2, -0.2, 0.0, Branch::Minus};
  const double r11 = example1_residual(p1);
  line("eq12-example1-point", r11 <= rc.tol, "residual=" + fmt(r11));

  const double r17a = example2_residual(1.0, 1.0 / std::sqrt(2.0), 0.0);
  const double r17b = example2_residual(0.0, 0.3, 0.1);
  const double r17c = example2_residual(0.5, 0.7, 0.7);
  line("eq17-zero-set", r17a <= rc.tol && r17b <= rc.tol && r17c > rc.tol,
       "cylinder=" + fmt(r17a) + " plane=" + fmt(r17b) + " off=" + fmt(r17c));

  const auto [s0, s1] = build_example2_states(0.5, 0.5, Branch::Plus);
  const MaskingReport ex2 = masks_state(example2_qubit(0.7), s0, s1, rc.tol);
  line("example2-masks", ex2.verdict, "cross_a=" + fmt(ex2.cross_a_norm));

  const FeasibilityConfig cfg = search_config(rc);
  const TablesSummary t = run_tables(fixture, std::nullopt, cfg);
  line("tables", t.mismatches == 0,
       std::to_string(t.rows) + " rows, " + std::to_string(t.mismatches) + " mismatches");

  const ScanReport scan = support_theorem_scan(cfg);
  const auto violations = scan.violations();
  std::string detail = std::to_string(scan.records.size()) + " pairs, " + std::to_string(violations.size()) +
                       " violations";
  if (!violations.empty())
    detail += " (first: " + violations.front().psi0.to_string() + " / " + violations.front().psi1.to_string() + ")";
  line("support-theorem", violations.empty(), detail);

  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
  return failures == 0 ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmask: qubit information masking verification"};
  app.require_subcommand(1);
  RunConfig rc;

  auto common = [&rc](CLI::App* sub) {
    sub->add_option("--tol", rc.tol, "Residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", rc.out, "Output path (default stdout)");
    sub->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto search = [&rc](CLI::App* sub) {
    sub->add_option("--seed", rc.seed, "Search seed");
    sub->add_option("--restarts", rc.restarts, "Restarts per feasibility query")->check(CLI::PositiveNumber);
    sub->add_option("--fixture", rc.fixture, "Table fixture JSON");
  };

  std::string state_file, psi0_file, psi1_file;
  auto* check = app.add_subcommand("check", "Check whether (psi0, psi1) mask the qubit state");
  check->add_option("state", state_file, "Qubit state JSON")->required();
  check->add_option("psi0", psi0_file, "Two-qubit state JSON")->required();
  check->add_option("psi1", psi1_file, "Two-qubit state JSON")->required();
  common(check);

  std::optional<int> table;
  auto* tables = app.add_subcommand("tables", "Reproduce the pattern feasibility tables");
  tables->add_option("--table", table, "Only this table")->check(CLI::Range(1, 4));
  common(tables);
  search(tables);

  int example = 1;
  std::string branch = "plus";
  auto* surface = app.add_subcommand("surface", "Sample a solution surface to CSV");
  surface->add_option("--example", example, "1 or 2")->check(CLI::Range(1, 2));
  surface->add_option("--branch", branch, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
  surface->add_option("--grid", rc.grid, "Lattice points per axis")->check(CLI::Range(2, 100000));
  common(surface);

  auto* verify = app.add_subcommand("verify-paper", "Run every in-scope regression check");
  common(verify);
  search(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*check) return cmd_check(rc, state_file, psi0_file, psi1_file);
  if (*tables) return cmd_tables(rc, table);
  if (*surface) return cmd_surface(rc, example, branch);
  return cmd_verify_paper(rc);
}
