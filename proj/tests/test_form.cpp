#include <random>

#include <gtest/gtest.h>

#include "compforms/constructors.hpp"
#include "compforms/form.hpp"
#include "oracles.hpp"

using namespace compforms;

namespace {

Ring Q() { return rationals(); }
Scalar q(long v) { return Scalar::integer(Q(), v); }

Vec random_vec(std::mt19937_64& rng, std::size_t n, int range = 4) {
  std::uniform_int_distribution<int> dist(-range, range);
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(q(dist(rng)));
  return v;
}

FormedAlgebra octonions() {
  FormedAlgebra F = base_algebra(Q(), 2);
  for (int k = 0; k < 3; ++k) F = cayley_dickson(F, q(-1));
  return F;
}

std::vector<FormedAlgebra> samples() {
  return {zorn(Q()),
          matrix_algebra_det(Q(), 3),
          cubic_tits(Q(), q(2)),
          product_form(base_algebra(Q(), 1), zorn(Q())),
          power_form(quadratic_etale(Q(), q(5)), 2),
          split_etale(Q(), {1, 3}),
          section_end_algebra(Q(), 1, 1, 2),
          section_zorn_algebra(Q(), 1, 1, 1),
          cubic_tits(laurent_ring(Q()), Scalar::variable(laurent_ring(Q())))};
}

}  // namespace

TEST(Form, MultisetIndexIsABijection) {
  MultisetIndex idx(5, 3);
  EXPECT_EQ(idx.size(), 35u);
  for (std::size_t r = 0; r < idx.size(); ++r) EXPECT_EQ(idx.rank(idx.multiset(r)), r);
  EXPECT_EQ(multinomial({0, 0, 1}), 3);
  EXPECT_EQ(multinomial({0, 1, 2, 2}), 12);
}

TEST(Form, MakeFormChecksHomogeneity) {
  Ring co = coordinate_ring(Q(), 2);
  Scalar x = Scalar::variable(co, 0), y = Scalar::variable(co, 1);
  EXPECT_NO_THROW(make_form(Q(), 2, 2, x * y));
  EXPECT_THROW(make_form(Q(), 2, 2, x * y + x), std::invalid_argument);
}

TEST(Form, PolarizationAgreesWithBothOracles) {
  for (const auto& F : samples()) {
    SymmetricTensor theta = polarize(F.form);
    for (const auto& ms : oracle::multisets(F.rank(), F.degree())) {
      ASSERT_EQ(theta.at(ms), oracle::theta_brute(F.form, ms)) << F.tag;
      ASSERT_EQ(theta.at(ms), oracle::theta_coefficient(F.form, ms)) << F.tag;
    }
  }
}

TEST(Form, PolarizationRestrictsToTheForm) {
  std::mt19937_64 rng(0x5EED);
  for (const auto& F : samples()) {
    if (F.ring() != Q()) continue;
    SymmetricTensor theta = polarize(F.form);
    for (int t = 0; t < 5; ++t) {
      Vec x = random_vec(rng, F.rank(), 3);
      EXPECT_EQ(theta_eval(theta, std::vector<Vec>(F.degree(), x)), F.form(x));
      EXPECT_EQ(F.form(x), oracle::eval(F.form, x));
    }
    // Symmetry under swapping two arguments.
    std::vector<Vec> xs;
    for (unsigned k = 0; k < F.degree(); ++k) xs.push_back(random_vec(rng, F.rank(), 2));
    Scalar v = theta_eval(theta, xs);
    std::swap(xs[0], xs[1]);
    EXPECT_EQ(theta_eval(theta, xs), v);
  }
}

TEST(Form, Mat3TraceTowerMatchesCharacteristicPolynomial) {
  FormedAlgebra M = matrix_algebra_det(Q(), 3);
  TraceTower tower = trace_tower(M);
  std::mt19937_64 rng(0x5EED);
  for (int t = 0; t < 50; ++t) {
    Vec x = random_vec(rng, 9, 6);
    oracle::QMatrix X(3, std::vector<mpq_class>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) X[i][j] = x[3 * i + j].rational_value();
    auto c = oracle::charpoly(X);
    EXPECT_EQ(tower.T[1](x).rational_value(), -c[2]);
    EXPECT_EQ(tower.T[2](x).rational_value(), c[1]);
    EXPECT_EQ(tower.T[3](x).rational_value(), -c[0]);
    EXPECT_EQ(tower.T[0](x), q(1));
  }
}

TEST(Form, TitsNormIsTheMultiplicationDeterminant) {
  for (long mu : {2L, 3L, -5L}) {
    FormedAlgebra J = cubic_tits(Q(), q(mu));
    std::mt19937_64 rng(static_cast<std::uint64_t>(mu + 100));
    for (int t = 0; t < 20; ++t) {
      Vec x = random_vec(rng, 3, 5);
      oracle::QMatrix L(3, std::vector<mpq_class>(3));
      for (std::size_t j = 0; j < 3; ++j) {
        Vec col = J.algebra.multiply(x, J.algebra.basis(j));
        for (std::size_t i = 0; i < 3; ++i) L[i][j] = col[i].rational_value();
      }
      EXPECT_EQ(J.form(x).rational_value(), -oracle::charpoly(L)[0]);
    }
  }
}

TEST(Form, TitsTraceBilinearForm) {
  // B((a, w, w'), (c, v, v')) = 3ac + 3<w, v'> + 3<v, w'> with w' = mu * (x^2 coordinate).
  long mu = 2;
  FormedAlgebra J = cubic_tits(Q(), q(mu));
  TraceTower tower = trace_tower(J);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    Vec x = random_vec(rng, 3), y = random_vec(rng, 3);
    Scalar a = x[0], w = x[1], wc = q(mu) * x[2], c = y[0], v = y[1], vc = q(mu) * y[2];
    Scalar expected = q(3) * a * c + q(3) * w * vc + q(3) * v * wc;
    EXPECT_EQ(dot(x, tower.gram.apply(y)), expected);
  }
}

TEST(Form, TraceTowerEndpointsAndHomogeneity) {
  std::mt19937_64 rng(4);
  for (const auto& F : samples()) {
    if (F.ring() != Q()) continue;
    TraceTower tower = trace_tower(F);
    ASSERT_EQ(tower.T.size(), F.degree() + 1u);
    Vec x = random_vec(rng, F.rank(), 3);
    EXPECT_EQ(tower.T[F.degree()](x), F.form(x));
    for (unsigned i = 0; i <= F.degree(); ++i) {
      EXPECT_EQ(tower.T[i].degree, i);
      EXPECT_EQ(tower.T[i](scale(q(2), x)), Scalar::integer(Q(), 1L << i) * tower.T[i](x));
      // T_i(1) = C(d, i) when N(1) = 1
      EXPECT_EQ(tower.T[i](F.algebra.unit()), binomial(Q(), F.degree(), i));
    }
    EXPECT_EQ(trace_of(tower, x), tower.T[1](x));
  }
}

TEST(Form, TraceSplit) {
  FormedAlgebra M = matrix_algebra_det(Q(), 3);
  TraceTower tower = trace_tower(M);
  Vec x = M.algebra.basis(0);
  auto [s, rest] = trace_split(M, tower, x);
  EXPECT_EQ(s, Scalar::rational(Q(), mpq_class(1, 3)));
  EXPECT_TRUE(trace_of(tower, rest).is_zero());
}

TEST(Form, NondegeneracyAndRadical) {
  EXPECT_TRUE(nondegenerate(polarize(zorn(Q()).form)));
  EXPECT_TRUE(radical(polarize(zorn(Q()).form)).empty());
  EXPECT_TRUE(nondegenerate(polarize(matrix_algebra_det(Q(), 3).form)));
  Ring co = coordinate_ring(Q(), 2);
  DegreeForm cube = make_form(Q(), 2, 3, Scalar::variable(co, 0).pow(3));
  auto rad = radical(polarize(cube));
  ASSERT_EQ(rad.size(), 1u);
  EXPECT_EQ(rad[0], (Vec{q(0), q(1)}));
  EXPECT_FALSE(nondegenerate(polarize(section_end_algebra(Q(), 1, 1, 2).form)));
}

TEST(Form, NondegenerateFormGivesFullRankGram) {
  for (const auto& F : samples()) {
    TraceTower tower = trace_tower(F);
    bool nd = nondegenerate(polarize(F.form));
    EXPECT_EQ(nd, F.expect_nondegenerate) << F.tag;
    if (nd) EXPECT_EQ(rank_over_fractions(tower.gram), F.rank()) << F.tag;
    EXPECT_TRUE(check_trace_form_associative(F, tower).passed) << F.tag;
  }
}

TEST(Form, RadicalFiltrations) {
  auto f1 = radical_filtration(section_end_algebra(Q(), 1, 1, 2));
  EXPECT_TRUE(f1.radical_is_ideal);
  EXPECT_EQ(f1.dims, (std::vector<std::size_t>{7, 3, 0}));
  EXPECT_EQ(f1.nilpotency_index, 3u);
  auto f2 = radical_filtration(section_end_algebra(Q(), 1, 1, 1));
  EXPECT_EQ(f2.dims, (std::vector<std::size_t>{4, 0}));
  EXPECT_EQ(f2.nilpotency_index, 2u);
  auto f3 = radical_filtration(section_end_algebra(Q(), 1, 0, 1));
  EXPECT_EQ(f3.dims, (std::vector<std::size_t>{4, 0}));
  auto f4 = radical_filtration(section_zorn_algebra(Q(), 1, 1, 1));
  EXPECT_EQ(f4.dims, (std::vector<std::size_t>{7, 3, 0}));
  auto f5 = radical_filtration(zorn(Q()));
  EXPECT_EQ(f5.dims, (std::vector<std::size_t>{0}));
  EXPECT_EQ(f5.nilpotency_index, 1u);
}

TEST(Form, CompositionAndLinearizedAgree) {
  for (const auto& F : samples()) {
    auto c = check_composition(F);
    auto l = check_linearized_composition(F);
    EXPECT_TRUE(c.passed) << F.tag;
    EXPECT_EQ(c.passed, l.passed) << F.tag;
    EXPECT_EQ(c.method, Method::symbolic);
    EXPECT_EQ(l.method, Method::exhaustive);
  }
  FormedAlgebra S = cayley_dickson(octonions(), q(-1));
  auto c = check_composition(S), l = check_linearized_composition(S);
  EXPECT_FALSE(c.passed);
  EXPECT_FALSE(l.passed);
  EXPECT_TRUE(c.witness && l.witness);
}

TEST(Form, LinearizedCountsRank9MultisetPairs) {
  auto rep = check_linearized_composition(matrix_algebra_det(Q(), 3));
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.counters.at("multiset_pairs"), 27225);
}

TEST(Form, CompositionRequiresNormOfUnitOne) {
  FormedAlgebra Z = zorn(Q());
  Ring co = coordinate_ring(Q(), 8);
  FormedAlgebra twice = make_formed(Z.algebra, make_form(Q(), 8, 2, Z.form.poly * embed(q(2), co)), "twice");
  auto rep = check_composition(twice);
  EXPECT_FALSE(rep.passed);
}

TEST(Form, SampledComposition) {
  auto rep = check_composition(zorn(Q()), 5);
  EXPECT_EQ(rep.method, Method::sampled);
  EXPECT_TRUE(rep.passed);
  auto bad = check_composition(cayley_dickson(octonions(), q(-1)), 5);
  EXPECT_EQ(bad.method, Method::sampled);
  EXPECT_FALSE(bad.passed);
}

TEST(Form, DegreeEquation) {
  for (const auto& F : samples()) EXPECT_TRUE(check_degree_equation(F, trace_tower(F)).passed) << F.tag;
}

TEST(Form, IdempotentRelationsInMat3) {
  FormedAlgebra M = matrix_algebra_det(Q(), 3);
  TraceTower tower = trace_tower(M);
  const Algebra& A = M.algebra;
  auto r1 = idempotent_relations(M, tower, A.basis(0));
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(r1.counters.at("m"), 1);
  auto r2 = idempotent_relations(M, tower, add(A.basis(0), A.basis(4)));
  EXPECT_TRUE(r2.passed);
  EXPECT_EQ(r2.counters.at("m"), 2);
  EXPECT_EQ(r2.detail, "m = 2, T_i(e) = [1, 2, 1, 0]");
  EXPECT_THROW(idempotent_relations(M, tower, A.unit()), std::invalid_argument);
  EXPECT_THROW(idempotent_relations(M, tower, A.basis(1)), std::invalid_argument);
}

TEST(Form, FactorizationOverCentralIdempotents) {
  FormedAlgebra F = product_form(base_algebra(Q(), 1), zorn(Q()));
  TraceTower tower = trace_tower(F);
  Vec e1 = F.algebra.basis(0), e2 = sub(F.algebra.unit(), e1);
  Factorization fz = factor_over_decomposition(F, tower, {e1, e2});
  EXPECT_TRUE(fz.report.passed);
  EXPECT_EQ(fz.degrees, (std::vector<unsigned>{1, 2}));
  ASSERT_EQ(fz.components.size(), 2u);
  EXPECT_EQ(fz.components[1].rank(), 8u);
  EXPECT_TRUE(check_composition(fz.components[1]).passed);
  EXPECT_EQ(fz.report.detail, "degrees (1, 2)");
  EXPECT_THROW(factor_over_decomposition(F, tower, {e1}), std::invalid_argument);

  FormedAlgebra E = split_etale(Q(), {1, 1, 1});
  auto fe = factor_over_decomposition(E, trace_tower(E), {E.algebra.basis(0), E.algebra.basis(1), E.algebra.basis(2)});
  EXPECT_EQ(fe.degrees, (std::vector<unsigned>{1, 1, 1}));
}

TEST(Form, OrthogonalSplit) {
  FormedAlgebra S = section_end_algebra(Q(), 1, 1, 2);
  TraceTower tower = trace_tower(S);
  std::vector<Vec> D;
  for (std::size_t i = 0; i < S.rank(); ++i)
    if (S.algebra.label(i).find("|1") != std::string::npos && S.algebra.label(i)[1] == S.algebra.label(i)[2])
      D.push_back(S.algebra.basis(i));
  ASSERT_EQ(D.size(), 3u);
  auto split = orthogonal_split(S, tower, D);
  EXPECT_TRUE(split.report.passed);
  EXPECT_EQ(split.perp.size(), 7u);
  Subspace perp(Q(), S.rank(), split.perp), rad(Q(), S.rank(), radical(polarize(S.form)));
  EXPECT_TRUE(perp == rad);
  std::vector<Vec> upper = {S.algebra.basis(1)};
  EXPECT_THROW(orthogonal_split(S, tower, upper), std::invalid_argument);
}

TEST(Form, RankAdmissibility) {
  std::set<std::size_t> cubic = {1, 2, 3, 5, 9}, quartic = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16};
  for (std::size_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(rank_admissible(3, n), cubic.count(n) == 1) << n;
    EXPECT_EQ(rank_admissible(4, n), quartic.count(n) == 1) << n;
  }
  EXPECT_ANY_THROW(rank_admissible(5, 3));
}

TEST(Form, SpecializationOfLaurentEntries) {
  Ring L = laurent_ring(Q());
  Scalar t = Scalar::variable(L);
  FormedAlgebra J = cubic_tits(L, t);
  auto rep = specialization_nondegeneracy(J, {q(1), q(2), q(-1)});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.detail, "points [1, 2, -1]");
  FormedAlgebra at2 = specialize_formed(J, q(2));
  EXPECT_EQ(at2.ring(), Q());
  EXPECT_EQ(at2.form.poly, cubic_tits(Q(), q(2)).form.poly);
  EXPECT_THROW(specialize_formed(J, q(0)), NotAUnit);
}

TEST(Form, MakeFormedRejectsSmallCharacteristic) {
  EXPECT_THROW(zorn(prime_field(2)), NotAUnit);
  EXPECT_THROW(matrix_algebra_det(prime_field(3), 3), NotAUnit);
  EXPECT_NO_THROW(matrix_algebra_det(prime_field(5), 3));
}

TEST(Form, BaseChange) {
  FormedAlgebra Z = base_change(zorn(Q()), poly_ring(Q()));
  EXPECT_EQ(Z.ring(), poly_ring(Q()));
  EXPECT_TRUE(check_composition(Z).passed);
}
