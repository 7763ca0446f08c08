#include <set>

#include <gtest/gtest.h>

#include "compforms/registry.hpp"

using namespace compforms;

TEST(Registry, SortedUniqueAndAnchored) {
  std::set<std::string> names;
  std::string prev;
  for (const auto& e : registry()) {
    EXPECT_LT(prev, e.name);
    prev = e.name;
    names.insert(e.name);
    EXPECT_FALSE(e.anchor.empty()) << e.name;
    FormedAlgebra F = e.build(rationals(), e.resolve({}));
    EXPECT_EQ(F.degree(), e.degree) << e.name;
    for (const auto& x : e.plan(F, e.resolve({})).expectations) {
      EXPECT_FALSE(x.anchor.empty()) << e.name << " " << x.check;
      EXPECT_NE(std::find(known_checks().begin(), known_checks().end(), x.check), known_checks().end());
    }
  }
  for (const char* n : {"base_algebra", "base_algebra_quartic", "split_etale2", "split_etale3", "split_etale4",
                        "split_etale_1_3", "quadratic_etale", "quadratic_split", "quadratic_laurent", "cubic_tits",
                        "cubic_tits_laurent", "cay_octonion", "zorn", "mat2_det", "mat3_det", "mat4_det", "q_zorn",
                        "qq_etale", "zorn_zorn", "zorn_squared", "etale_squared", "section_end", "section_end_equal",
                        "section_end_zero", "section_zorn", "section_zorn_1_2", "section_zorn_2_2"})
    EXPECT_TRUE(names.count(n)) << n;
}

TEST(Registry, ParameterResolution) {
  const RegistryEntry& e = find_entry("section_end");
  ParamMap p = e.resolve({{"b", "3"}});
  EXPECT_EQ(p.at("n"), "1");
  EXPECT_EQ(p.at("b"), "3");
  EXPECT_THROW(e.resolve({{"mu", "2"}}), std::invalid_argument);
  EXPECT_THROW(find_entry("nonexistent"), std::out_of_range);
  EXPECT_THROW(find_entry("cubic_tits").build(rationals(), {{"mu", "0"}}), NotAUnit);
  EXPECT_THROW(e.build(rationals(), e.resolve({{"a", "-1"}})), std::invalid_argument);
}

TEST(Registry, RunEntrySelectsChecks) {
  const RegistryEntry& e = find_entry("section_end");
  auto rs = run_entry(e, {}, rationals(), {"radical", "filtration"});
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].check, "filtration");
  EXPECT_EQ(rs[0].observed, "dims [7, 3, 0]; index 3");
  EXPECT_TRUE(rs[0].ok());
  EXPECT_TRUE(rs[1].ok());
  EXPECT_THROW(run_entry(e, {}, rationals(), {"idempotent"}), std::invalid_argument);
  EXPECT_THROW(run_entry(e, {}, rationals(), {"bogus"}), std::invalid_argument);
}

TEST(Registry, OtherParametersAndRings) {
  auto rs = run_entry(find_entry("section_end"), {{"a", "2"}, {"b", "3"}}, rationals(), {"rank", "radical"});
  for (const auto& r : rs) EXPECT_TRUE(r.ok()) << r.check << ": " << r.observed << " vs " << r.expected;
  auto fp = run_entry(find_entry("zorn"), {}, prime_field(7), {"composition", "alternative"});
  for (const auto& r : fp) EXPECT_TRUE(r.ok()) << r.check;
}

TEST(Registry, FullSuiteHasNoMismatchesAndIsDeterministic) {
  SuiteResult s = run_all();
  EXPECT_EQ(s.failures(), 0u);
  for (const auto& r : s.results)
    EXPECT_TRUE(r.ok()) << r.entry << " " << r.check << ": " << r.observed << " vs " << r.expected;
  std::string a = s.to_json(true).dump();
  EXPECT_EQ(run_all().to_json(true).dump(), a);
  auto j = s.to_json(true);
  EXPECT_EQ(j["schema"], "v1");
  EXPECT_EQ(j["metadata"]["seed"], kSampleSeed);
  EXPECT_FALSE(s.to_json(false).contains("metadata"));
  std::string prev_entry, prev_check;
  for (const auto& r : j["results"]) {
    auto key = std::pair{r["entry"].get<std::string>(), r["check"].get<std::string>()};
    EXPECT_LT(std::pair(prev_entry, prev_check), key);
    std::tie(prev_entry, prev_check) = key;
  }
}

TEST(Registry, OverriddenExpectationIsReported) {
  auto rs = run_entry(find_entry("zorn"), {}, rationals(), {"rank"}, {{"zorn:rank", "rank 9, degree 2"}});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_FALSE(rs[0].ok());
  EXPECT_EQ(rs[0].observed, "rank 8, degree 2");
}
