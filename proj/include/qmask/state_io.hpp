// state_io.hpp
// State files and JSON report serialization.
//
// A state file is a JSON object {"re": [...], "im": [...]} holding 2 entries
// for a qubit or 4 for a two-qubit state (basis order |00>,|01>,|10>,|11>).
// Norm drift up to kAutoNormalizeLimit is corrected and flagged; anything
// larger is rejected.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmask/conditions.hpp"
#include "qmask/patterns.hpp"
#include "qmask/qlinalg.hpp"

namespace qmask {

inline constexpr double kAutoNormalizeLimit = 1e-9;

class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename State>
struct LoadedState {
  State state;
  bool renormalized = false;  // drift in (kNormTolerance, kAutoNormalizeLimit] was corrected
  double drift = 0.0;         // | ||v||^2 - 1 | as read
};

LoadedState<QubitState> parse_qubit_state(const nlohmann::json& doc);
LoadedState<TwoQubitState> parse_two_qubit_state(const nlohmann::json& doc);

// Throws StateFileError on unreadable, malformed or unnormalizable input.
LoadedState<QubitState> read_qubit_state(const std::filesystem::path& path);
LoadedState<TwoQubitState> read_two_qubit_state(const std::filesystem::path& path);

nlohmann::json state_json(const QubitState& b);
nlohmann::json state_json(const TwoQubitState& v);

nlohmann::json to_json(const MaskingReport& r);
nlohmann::json to_json(const FeasibilityOutcome& o);
nlohmann::json to_json(const TableRowResult& r);
nlohmann::json to_json(const ScanRecord& r);

}  // namespace qmask
