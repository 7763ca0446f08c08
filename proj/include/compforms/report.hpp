#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace compforms {

enum class Method { symbolic, sampled, exhaustive };

std::string to_string(Method m);

struct Witness {
  std::vector<std::string> inputs;
  std::string discrepancy;
};

/// Outcome of one identity or property check.
struct VerificationReport {
  std::string check;
  bool passed = true;
  Method method = Method::symbolic;
  std::optional<Witness> witness;
  std::map<std::string, std::int64_t> counters;
  /// Short human-readable result ("m = 2", "dims [7, 3, 0]").
  std::string detail;

  void fail(Witness w) {
    passed = false;
    if (!witness) witness = std::move(w);
  }
  nlohmann::json to_json() const;
};

std::string summarize(const VerificationReport& r);

}  // namespace compforms
