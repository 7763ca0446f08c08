// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "compforms/constructors.hpp"
#include "compforms/registry.hpp"
#include "oracles.hpp"

using namespace compforms;

namespace {

Ring Q() { return rationals(); }
Scalar q(long v) { return Scalar::integer(Q(), v); }

FormedAlgebra build(const std::string& name, const ParamMap& params = {}) {
  const RegistryEntry& e = find_entry(name);
  return e.build(Q(), e.resolve(params));
}

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::ostream&)> run;
};

bool require(std::ostream& log, bool ok, const std::string& what) {
  if (!ok) log << "  failed: " << what << "\n";
  return ok;
}

const std::vector<std::string> kCompositionEntries = {
    "split_etale3", "mat2_det",      "mat3_det",       "mat4_det",        "zorn",         "cubic_tits",
    "q_zorn",       "zorn_squared",  "q_etale",        "q_quaternion",    "q_tits",       "q_mat3",
    "qq_etale",     "qq_zorn",       "etale_zorn",     "quaternion_zorn", "zorn_zorn",    "section_end",
    "section_end_equal", "section_end_zero", "section_end_n2", "section_zorn", "section_zorn_1_2",
    "section_zorn_2_2"};

bool composition_suite(std::ostream& log) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& name : kCompositionEntries) {
    FormedAlgebra F = build(name);
    auto c = check_composition(F);
    auto l = check_linearized_composition(F);
    ok &= require(log, c.passed && c.method == Method::symbolic, name + " composition (symbolic)");
    ok &= require(log, l.passed, name + " linearized");
    if (name == "mat3_det") ok &= require(log, l.counters.at("multiset_pairs") == 27225, "27225 multiset pairs");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "  " << kCompositionEntries.size() << " entries in " << secs << " s\n";
  return ok && require(log, secs < 60, "runtime under 60 s");
}

bool alternativity(std::ostream& log) {
  bool ok = true;
  for (const auto& name : kCompositionEntries) {
    FormedAlgebra F = build(name);
    if (!nondegenerate(polarize(F.form))) continue;
    auto a = check_alternative(F.algebra);
    auto d = check_degree_equation(F, trace_tower(F));
    ok &= require(log, a.passed && a.method == Method::symbolic, name + " alternative");
    ok &= require(log, d.passed && d.method == Method::symbolic, name + " degree equation");
  }
  FormedAlgebra M = build("mutated_zorn");
  auto a = check_alternative(M.algebra);
  auto d = check_degree_equation(M, trace_tower(M));
  ok &= require(log, !a.passed && a.witness.has_value(), "mutation fails alternativity with a witness");
  ok &= require(log, !d.passed && d.witness.has_value(), "mutation fails the degree equation with a witness");
  if (a.witness) log << "  mutation witness: " << a.witness->discrepancy << "\n";
  return ok;
}

bool rank_admissibility(std::ostream& log) {
  bool ok = true;
  std::size_t count = 0;
  for (const auto& e : registry()) {
    FormedAlgebra F = e.build(Q(), e.resolve({}));
    if (F.degree() != 3 && F.degree() != 4) continue;
    if (!nondegenerate(polarize(F.form)) || !check_composition(F).passed) continue;
    ++count;
    ok &= require(log, rank_admissible(F.degree(), F.rank()),
                  e.name + " rank " + std::to_string(F.rank()) + " degree " + std::to_string(F.degree()));
  }
  log << "  " << count << " nondegenerate cubic/quartic entries\n";
  return ok;
}

bool section_end_formulas(std::ostream& log) {
  struct Case {
    unsigned n, a, b;
    std::size_t rank, rad, index;
  };
  // 6+2b; 5+2(a+1); 5+2(b+1) and radicals (a+1)+(b+1)+(b-a+1), 2(a+1), 2(b+1).
  std::vector<Case> cases = {{1, 1, 2, 6 + 2 * 2, 2 + 3 + 2, 3},
                             {1, 1, 1, 5 + 2 * 2, 2 * 2, 2},
                             {1, 0, 1, 5 + 2 * 2, 2 * 2, 2},
                             {2, 1, 2, 15, 0, 0}};
  bool ok = true;
  for (const auto& c : cases) {
    FormedAlgebra F = section_end_algebra(Q(), c.n, c.a, c.b);
    std::string tag = "(n,a,b)=(" + std::to_string(c.n) + "," + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
    ok &= require(log, F.rank() == c.rank, tag + " rank " + std::to_string(F.rank()));
    if (c.index == 0) continue;
    Filtration f = radical_filtration(F);
    ok &= require(log, !f.dims.empty() && f.dims[0] == c.rad, tag + " radical dim");
    ok &= require(log, f.nilpotency_index == c.index, tag + " nilpotency index");
  }
  return ok;
}

bool section_zorn_formulas(std::ostream& log) {
  bool ok = true;
  for (auto [l, m, rank] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{{1, 1, 10}, {1, 2, 12}}) {
    FormedAlgebra F = section_zorn_algebra(Q(), 1, l, m);
    std::size_t formula = 3 + (l + 1) + (m + 1) + (l + m + 1);
    std::string tag = "(l,m)=(" + std::to_string(l) + "," + std::to_string(m) + ")";
    ok &= require(log, F.rank() == formula && F.rank() == rank, tag + " rank");
    Filtration f = radical_filtration(F);
    ok &= require(log, f.radical_is_ideal && f.dims.size() == 3 && f.dims.back() == 0 && f.nilpotency_index == 3u,
                  tag + " radical chain ends at index 3");
    ok &= require(log, f.dims[0] == (l + 1) + (m + 1) + (l + m + 1), tag + " radical dim");
  }
  return ok;
}

bool factorization(std::ostream& log) {
  bool ok = true;
  for (const auto& name : {"q_zorn", "split_etale3", "qq_etale", "q_tits", "q_mat3"}) {
    const RegistryEntry& e = find_entry(name);
    FormedAlgebra F = e.build(Q(), e.resolve({}));
    Plan plan = e.plan(F, e.resolve({}));
    Factorization fz = factor_over_decomposition(F, trace_tower(F), plan.factor_idempotents);
    unsigned sum = 0;
    for (auto d : fz.degrees) sum += d;
    ok &= require(log, fz.report.passed, std::string(name) + " factorization report");
    ok &= require(log, sum == F.degree(), std::string(name) + " degrees sum to d");
    for (const auto& C : fz.components)
      ok &= require(log, check_composition(C).passed, std::string(name) + " component composition");
    log << "  " << name << ": " << fz.report.detail << "\n";
  }
  return ok;
}

bool idempotents(std::ostream& log) {
  FormedAlgebra M = build("mat3_det");
  TraceTower tower = trace_tower(M);
  bool ok = true;
  for (auto [e, m] : std::vector<std::pair<Vec, long>>{
           {M.algebra.basis(0), 1}, {add(M.algebra.basis(0), M.algebra.basis(4)), 2}}) {
    auto rep = idempotent_relations(M, tower, e);
    ok &= require(log, rep.passed && rep.counters.at("m") == m, "m = " + std::to_string(m));
    ok &= require(log, M.form(e).is_zero(), "N(e) = 0");
    ok &= require(log, trace_of(tower, e) == q(m), "T(e) = m");
    for (unsigned i = 0; i <= 3; ++i)
      ok &= require(log, tower.T[i](e) == binomial(Q(), m, i), "T_i(e) = C(m, i)");
    for (unsigned j = 0; j < 3; ++j)
      ok &= require(log, q(j + 1) * tower.T[j + 1](e) == (trace_of(tower, e) - q(j)) * tower.T[j](e),
                    "(j+1)T_{j+1}(e) = (T(e)-j)T_j(e)");
  }
  return ok;
}

bool nondegeneracy(std::ostream& log) {
  bool ok = true;
  for (const auto& e : registry()) {
    FormedAlgebra F = e.build(Q(), e.resolve({}));
    if (!F.expect_nondegenerate || !check_composition(F).passed) continue;
    SymmetricTensor theta = polarize(F.form);
    TraceTower tower = trace_tower(F, theta);
    ok &= require(log, radical(theta).empty(), e.name + " rad(N) = 0");
    ok &= require(log, gram_radical(tower).empty(), e.name + " rad(B) = 0");
    ok &= require(log, rank_over_fractions(tower.gram) == F.rank(), e.name + " Gram full rank");
  }
  auto blocks = [](const FormedAlgebra& F, const std::vector<std::string>& names) {
    Subspace s(F.ring(), F.rank());
    for (std::size_t i = 0; i < F.rank(); ++i) {
      std::string l = F.algebra.label(i);
      if (std::find(names.begin(), names.end(), l.substr(0, l.find('|'))) != names.end()) s.add(F.algebra.basis(i));
    }
    return s;
  };
  auto matches = [&](const FormedAlgebra& F, const std::vector<std::string>& names) {
    return Subspace(F.ring(), F.rank(), radical(polarize(F.form))) == blocks(F, names);
  };
  ok &= require(log, matches(section_end_algebra(Q(), 1, 1, 2), {"E12", "E13", "E23"}), "section_end strictly upper");
  ok &= require(log, matches(section_end_algebra(Q(), 1, 1, 1), {"E12", "E13"}), "section_end a=b block");
  ok &= require(log, matches(section_end_algebra(Q(), 1, 0, 1), {"E13", "E23"}), "section_end a=0 block");
  ok &= require(log, matches(section_end_algebra(Q(), 2, 1, 2), {"E12", "E13", "E23"}), "section_end n=2");
  for (auto [l, m] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 2}})
    ok &= require(log, matches(section_zorn_algebra(Q(), 1, l, m), {"v1", "v2", "w3"}), "section_zorn rad block");
  return ok;
}

bool specialization(std::ostream& log) {
  bool ok = true;
  std::vector<Scalar> points = {q(1), q(2), q(-1)};
  for (const auto& name : {"quadratic_laurent", "cubic_tits_laurent", "cay_laurent"}) {
    FormedAlgebra F = build(name);
    ok &= require(log, specialization_nondegeneracy(F, points).passed, std::string(name) + " report");
    for (const auto& p : points) {
      FormedAlgebra G = specialize_formed(F, p);
      ok &= require(log, G.ring() == Q() && radical(polarize(G.form)).empty(),
                    std::string(name) + " kernel at t = " + p.to_string());
    }
  }
  return ok;
}

bool oracles(std::ostream& log) {
  bool ok = true;
  std::size_t forms = 0, entries = 0;
  for (const auto& e : registry()) {
    FormedAlgebra F = e.build(Q(), e.resolve({}));
    if (F.rank() > 9) continue;
    ++forms;
    SymmetricTensor theta = polarize(F.form);
    for (const auto& ms : oracle::multisets(F.rank(), F.degree())) {
      ++entries;
      if (theta.at(ms) != oracle::theta_brute(F.form, ms)) {
        ok = require(log, false, e.name + " polarization entry");
        break;
      }
    }
  }
  log << "  " << forms << " forms, " << entries << " tensor entries\n";
  FormedAlgebra M = build("mat3_det");
  TraceTower tower = trace_tower(M);
  std::mt19937_64 rng(kSampleSeed);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int t = 0; t < 50; ++t) {
    Vec x;
    oracle::QMatrix X(3, std::vector<mpq_class>(3));
    for (int k = 0; k < 9; ++k) {
      x.push_back(q(dist(rng)));
      X[k / 3][k % 3] = x.back().rational_value();
    }
    auto c = oracle::charpoly(X);
    ok &= require(log, tower.T[1](x).rational_value() == -c[2] && tower.T[2](x).rational_value() == c[1] &&
                           tower.T[3](x).rational_value() == -c[0],
                  "trace tower vs characteristic polynomial");
  }
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "composition and linearized composition, symbolic", composition_suite},
      {2, "alternativity and degree equation; mutation fails", alternativity},
      {3, "rank admissibility of cubic and quartic entries", rank_admissibility},
      {4, "upper triangular section algebra formulas", section_end_formulas},
      {5, "Zorn section algebra formulas", section_zorn_formulas},
      {6, "factorization over central idempotents", factorization},
      {7, "idempotent relations in Mat_3", idempotents},
      {8, "nondegeneracy coherence and radical blocks", nondegeneracy},
      {9, "specialization of Laurent entries", specialization},
      {10, "polarization and trace tower oracles", oracles},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << "\n" << log.str();
    failed += !ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
