#include "compforms/report.hpp"

namespace compforms {

std::string to_string(Method m) {
  switch (m) {
    case Method::symbolic:
      return "symbolic";
    case Method::sampled:
      return "sampled";
    case Method::exhaustive:
      return "exhaustive";
  }
  return "unknown";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["method"] = to_string(method);
  j["outcome"] = passed ? "pass" : "fail";
  if (witness) j["witness"] = {{"inputs", witness->inputs}, {"discrepancy", witness->discrepancy}};
  j["counters"] = counters;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

std::string summarize(const VerificationReport& r) {
  std::string out = r.check + ": " + (r.passed ? "pass" : "FAIL") + " (" + to_string(r.method) + ")";
  if (!r.detail.empty()) out += " " + r.detail;
  if (r.witness) {
    out += "\n  witness:";
    for (const auto& in : r.witness->inputs) out += " [" + in + "]";
    out += "\n  discrepancy: " + r.witness->discrepancy;
  }
  return out;
}

}  // namespace compforms
