#include "qmask/state_io.hpp"

#include <cmath>
#include <fstream>

namespace qmask {

namespace {

using nlohmann::json;

std::vector<Complex> parse_amplitudes(const json& doc, std::size_t expected) {
  if (!doc.is_object() || !doc.contains("re") || !doc.contains("im"))
    throw StateFileError("state must be an object with \"re\" and \"im\" arrays");
  const json& re = doc.at("re");
  const json& im = doc.at("im");
  if (!re.is_array() || !im.is_array()) throw StateFileError("\"re\" and \"im\" must be arrays");
  if (re.size() != expected || im.size() != expected)
    throw StateFileError("expected " + std::to_string(expected) + " amplitudes, got re=" +
                         std::to_string(re.size()) + " im=" + std::to_string(im.size()));
  std::vector<Complex> out;
  for (std::size_t i = 0; i < expected; ++i) {
    if (!re[i].is_number() || !im[i].is_number()) throw StateFileError("amplitudes must be numbers");
    const Complex c(re[i].get<double>(), im[i].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw StateFileError("amplitudes must be finite");
    out.push_back(c);
  }
  return out;
}

// Returns | ||v||^2 - 1 | after validating the drift window.
double check_norm(const std::vector<Complex>& amps) {
  double s = 0.0;
  for (const auto& c : amps) s += std::norm(c);
  const double drift = std::abs(s - 1.0);
  if (drift > kAutoNormalizeLimit)
    throw StateFileError("state norm^2 = " + std::to_string(s) + " deviates from 1 by more than 1e-9");
  return drift;
}

json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateFileError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw StateFileError("cannot parse " + path.string() + ": " + e.what());
  }
}

json complex_list(const std::vector<Complex>& v) {
  json re = json::array();
  json im = json::array();
  for (const auto& c : v) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

LoadedState<QubitState> parse_qubit_state(const json& doc) {
  const auto amps = parse_amplitudes(doc, 2);
  const double drift = check_norm(amps);
  LoadedState<QubitState> out{{amps[0], amps[1]}, drift > kNormTolerance, drift};
  if (out.renormalized) out.state = normalize(out.state);
  return out;
}

LoadedState<TwoQubitState> parse_two_qubit_state(const json& doc) {
  const auto amps = parse_amplitudes(doc, 4);
  const double drift = check_norm(amps);
  LoadedState<TwoQubitState> out{{amps[0], amps[1], amps[2], amps[3]}, drift > kNormTolerance, drift};
  if (out.renormalized) out.state = normalize(out.state);
  return out;
}

LoadedState<QubitState> read_qubit_state(const std::filesystem::path& path) {
  try {
    return parse_qubit_state(load(path));
  } catch (const StateFileError& e) {
    throw StateFileError(path.string() + ": " + e.what());
  }
}

LoadedState<TwoQubitState> read_two_qubit_state(const std::filesystem::path& path) {
  try {
    return parse_two_qubit_state(load(path));
  } catch (const StateFileError& e) {
    throw StateFileError(path.string() + ": " + e.what());
  }
}

json state_json(const QubitState& b) { return complex_list({b.alpha0, b.alpha1}); }

json state_json(const TwoQubitState& v) { return complex_list({v.c.begin(), v.c.end()}); }

json to_json(const MaskingReport& r) {
  return {
      {"eq4_residuals", r.eq4_residuals},
      {"pair_residual_a", r.pair.a},
      {"pair_residual_b", r.pair.b},
      {"cross_a_norm", r.cross_a_norm},
      {"cross_b_norm", r.cross_b_norm},
      {"superposition_residuals", r.superposition_residuals},
      {"superposition_norm", r.superposition_norm},
      {"degenerate", r.degenerate},
      {"verdict", r.verdict},
      {"tol", r.tol},
  };
}

json to_json(const FeasibilityOutcome& o) {
  json j = {
      {"status", std::string(to_string(o.status))},
      {"best_residual", o.best_residual},
      {"restarts_used", o.restarts_used},
      {"restart_residuals", o.restart_residuals},
  };
  if (o.witness) {
    const Witness& w = *o.witness;
    j["witness"] = {
        {"coeffs0", complex_list(w.coeffs0)},
        {"coeffs1", complex_list(w.coeffs1)},
        {"psi0", state_json(w.psi0)},
        {"psi1", state_json(w.psi1)},
        {"residual", w.residual},
    };
    if (w.b) j["witness"]["b"] = state_json(*w.b);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const TableRowResult& r) {
  return {
      {"table", r.row.table},
      {"psi0_kets", r.row.psi0.to_string()},
      {"psi1_kets", r.row.psi1.to_string()},
      {"expected", r.row.expected_mask ? "mask" : "no"},
      {"agrees", r.agrees},
      {"outcome", to_json(r.outcome)},
  };
}

json to_json(const ScanRecord& r) {
  return {
      {"psi0_kets", r.psi0.to_string()},
      {"psi1_kets", r.psi1.to_string()},
      {"violation", r.violation},
      {"outcome", to_json(r.outcome)},
  };
}

}  // namespace qmask
