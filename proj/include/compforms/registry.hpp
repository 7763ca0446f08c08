#pragma once

// Named examples with their expected properties, and the suite runner that
// compares observed results against them.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "compforms/form.hpp"

namespace compforms {

using ParamMap = std::map<std::string, std::string>;

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string help;
};

/// Expected observation for one check, with the text it is traceable to.
struct Expectation {
  std::string check;
  std::string expected;
  std::string anchor;
};

/// Inputs and expectations derived from an entry's parameters.
struct Plan {
  std::vector<Expectation> expectations;
  /// Central idempotents summing to 1, for "factor".
  std::vector<Vec> factor_idempotents;
  /// Named idempotents, for "idempotent".
  std::vector<std::pair<std::string, Vec>> idempotents;
  /// Subspace D with B|D nondegenerate, for "orthogonal".
  std::vector<Vec> orthogonal_subspace;
  /// Specialization points for the outer Laurent variable, for "specialize".
  std::vector<Scalar> points;
  /// Label blocks ("E12", "v1") spanning the radical, for "radical".
  std::vector<std::string> radical_blocks;
};

struct RegistryEntry {
  std::string name;
  std::string description;
  /// Quoted text the entry is traceable to.
  std::string anchor;
  /// Degree with default parameters.
  unsigned degree = 3;
  std::vector<ParamSpec> params;
  /// False when the entry fixes its own base ring.
  bool ring_selectable = true;
  std::function<FormedAlgebra(Ring, const ParamMap&)> build;
  std::function<Plan(const FormedAlgebra&, const ParamMap&)> plan;

  /// Fills defaults; throws std::invalid_argument on unknown names.
  ParamMap resolve(const ParamMap& given) const;
};

/// Entries sorted by name.
const std::vector<RegistryEntry>& registry();
/// Throws std::out_of_range for unknown names.
const RegistryEntry& find_entry(const std::string& name);

/// Checks understood by the runner, in sorted order.
const std::vector<std::string>& known_checks();

struct CheckResult {
  std::string entry;
  std::string check;
  std::string expected;
  std::string observed;
  std::string anchor;
  VerificationReport report;

  bool ok() const { return expected == observed; }
};

struct SuiteResult {
  std::vector<CheckResult> results;

  std::size_t failures() const;
  /// Schema "v1"; results sorted by (entry, check).
  nlohmann::json to_json(bool seed_echo) const;
};

/// Overrides keyed by "entry:check" replace the expected strings.
using ExpectOverrides = std::map<std::string, std::string>;

/// Runs `checks` (all planned ones when empty) on one entry. Throws
/// std::invalid_argument when a requested check has no expectation.
std::vector<CheckResult> run_entry(const RegistryEntry& entry, const ParamMap& params, Ring base,
                                   const std::set<std::string>& checks = {},
                                   const ExpectOverrides& overrides = {});
/// Every entry with default parameters over Q.
SuiteResult run_all(const ExpectOverrides& overrides = {});

}  // namespace compforms
