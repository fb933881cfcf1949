#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arearel/workspace.hpp"

namespace arearel {

struct Check {
  std::string name;
  bool ok = false;
  nlohmann::json detail;  ///< witness for reproduction on failure, data on success
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<Check> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// mod2, leading, e2, e3, e4, abridged, equidissection, bubble, nugget.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name. "all" runs every suite
/// in order and concatenates the checks.
SuiteReport run_suite(const std::string& name, Workspace& ws);

/// The classes stated for the first volumes, as text in A, B, C, D.
std::vector<std::string> expected_volume(int l);
std::vector<std::string> expected_abridged_volume(int l);

}  // namespace arearel
