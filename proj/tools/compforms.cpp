// compforms: list, build, verify and report on the example registry.
// Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "compforms/io.hpp"
#include "compforms/registry.hpp"

namespace {

using namespace compforms;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "--key value" and "--key=value" pairs left over after CLI11 parsing.
ParamMap parse_extras(const std::vector<std::string>& extras) {
  ParamMap out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw UsageError("unexpected argument '" + a + "'");
    std::string key = a.substr(2);
    auto eq = key.find('=');
    if (eq != std::string::npos) {
      out[key.substr(0, eq)] = key.substr(eq + 1);
    } else {
      if (i + 1 >= extras.size()) throw UsageError("missing value for --" + key);
      out[key] = extras[++i];
    }
  }
  return out;
}

Ring select_ring(const RegistryEntry& e, const std::string& text) {
  if (text.empty()) return rationals();
  if (!e.ring_selectable) throw UsageError(e.name + " fixes its own base ring; --ring is not accepted");
  try {
    return parse_ring(text);
  } catch (const std::exception& ex) {
    throw UsageError(std::string("invalid --ring: ") + ex.what());
  }
}

std::set<std::string> split_checks(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.insert(item);
  return out;
}

std::string param_text(const RegistryEntry& e) {
  std::string s;
  for (const auto& p : e.params) s += (s.empty() ? "" : " ") + p.name + "=" + p.default_value;
  return s;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int cmd_list(bool json, const std::string& filter) {
  std::optional<unsigned> degree;
  if (!filter.empty()) {
    if (filter.rfind("degree=", 0) != 0) throw UsageError("unsupported filter '" + filter + "'");
    try {
      degree = static_cast<unsigned>(std::stoul(filter.substr(7)));
    } catch (const std::exception&) {
      throw UsageError("invalid degree in filter '" + filter + "'");
    }
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : registry()) {
    if (degree && e.degree != *degree) continue;
    if (json) {
      nlohmann::json params = nlohmann::json::object();
      for (const auto& p : e.params) params[p.name] = p.default_value;
      arr.push_back({{"name", e.name},
                     {"degree", e.degree},
                     {"description", e.description},
                     {"params", params},
                     {"anchor", e.anchor}});
    } else {
      std::cout << e.name << "  degree " << e.degree;
      if (!e.params.empty()) std::cout << "  [" << param_text(e) << "]";
      std::cout << "  " << e.description << "  \"" << e.anchor << "\"\n";
    }
  }
  if (json) std::cout << arr.dump(2) << "\n";
  return kPass;
}

int cmd_build(const std::string& name, const std::string& ring, const std::string& out,
              const std::vector<std::string>& extras) {
  const RegistryEntry& e = find_entry(name);
  Ring base = select_ring(e, ring);
  ParamMap params = e.resolve(parse_extras(extras));
  write_output(out, write_algebra(e.build(base, params)));
  return kPass;
}

void print_result(const CheckResult& r) {
  std::cout << (r.ok() ? "ok    " : "FAIL  ") << r.entry << " " << r.check << ": " << r.observed;
  if (!r.ok()) std::cout << " (expected " << r.expected << ")";
  std::cout << " [" << to_string(r.report.method) << "]\n";
}

void print_witness(const CheckResult& r) {
  if (!r.report.witness) return;
  std::cout << "witness for " << r.entry << " " << r.check << ":\n";
  for (const auto& in : r.report.witness->inputs) std::cout << "  input: " << in << "\n";
  std::cout << "  discrepancy: " << r.report.witness->discrepancy << "\n";
}

int cmd_verify(const std::string& name, const std::string& ring, const std::string& checks,
               const std::vector<std::string>& expects, const std::vector<std::string>& extras) {
  const RegistryEntry& e = find_entry(name);
  Ring base = select_ring(e, ring);
  ExpectOverrides overrides;
  for (const auto& x : expects) {
    auto eq = x.find('=');
    if (eq == std::string::npos) throw UsageError("--expect takes check=value, got '" + x + "'");
    overrides[name + ":" + x.substr(0, eq)] = x.substr(eq + 1);
  }
  auto results = run_entry(e, parse_extras(extras), base, split_checks(checks), overrides);
  bool ok = true;
  for (const auto& r : results) print_result(r);
  for (const auto& r : results)
    if (!r.ok()) {
      print_witness(r);
      ok = false;
      break;
    }
  // Expected failures (negative controls) still show their witness.
  if (ok)
    for (const auto& r : results)
      if (r.report.witness) {
        print_witness(r);
        break;
      }
  return ok ? kPass : kFail;
}

int cmd_report(bool all, bool seed_echo, const std::string& out, const std::vector<std::string>& expects) {
  if (!all) throw UsageError("report requires --all");
  ExpectOverrides overrides;
  for (const auto& x : expects) {
    auto colon = x.find(':');
    auto eq = x.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
      throw UsageError("--expect takes entry:check=value, got '" + x + "'");
    overrides[x.substr(0, eq)] = x.substr(eq + 1);
  }
  SuiteResult s = run_all(overrides);
  write_output(out, s.to_json(seed_echo).dump(2) + "\n");
  for (const auto& r : s.results)
    if (!r.ok()) std::cerr << "mismatch: " << r.entry << " " << r.check << ": expected " << r.expected
                           << ", observed " << r.observed << "\n";
  std::cerr << s.results.size() - s.failures() << "/" << s.results.size() << " checks match\n";
  return s.failures() ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of forms permitting composition"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registry entries");
  bool list_json = false;
  std::string filter;
  list->add_flag("--json", list_json, "JSON output");
  list->add_option("--filter", filter, "Filter, e.g. degree=3");

  auto* build = app.add_subcommand("build", "Write the algebra file of an entry");
  std::string build_name, build_ring, build_out;
  build->add_option("name", build_name, "Registry entry")->required();
  build->add_option("--ring", build_ring, "Base ring: Q, F<p>, Q[t], Q[t,1/t]");
  build->add_option("--out", build_out, "Output file (default stdout)");
  build->allow_extras();

  auto* verify = app.add_subcommand("verify", "Run checks on an entry");
  std::string verify_name, verify_ring, checks;
  std::vector<std::string> verify_expects;
  verify->add_option("name", verify_name, "Registry entry")->required();
  verify->add_option("--ring", verify_ring, "Base ring: Q, F<p>, Q[t], Q[t,1/t]");
  verify->add_option("--checks", checks, "Comma-separated checks (default: all planned)");
  verify->add_option("--expect", verify_expects, "Override an expectation: check=value");
  verify->allow_extras();

  auto* report = app.add_subcommand("report", "Run the full suite and emit a JSON report");
  bool all = false, seed_echo = false;
  std::string report_out;
  std::vector<std::string> expects;
  report->add_flag("--all", all, "Every registry entry");
  report->add_flag("--seed-echo", seed_echo, "Include the sampling seed in metadata");
  report->add_option("--out", report_out, "Output file (default stdout)");
  report->add_option("--expect", expects, "Override an expectation: entry:check=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*list) return cmd_list(list_json, filter);
    if (*build) return cmd_build(build_name, build_ring, build_out, build->remaining());
    if (*verify) return cmd_verify(verify_name, verify_ring, checks, verify_expects, verify->remaining());
    if (*report) return cmd_report(all, seed_echo, report_out, expects);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
