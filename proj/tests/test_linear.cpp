#include <random>

#include <gtest/gtest.h>

#include "compforms/linear.hpp"
#include "oracles.hpp"

using namespace compforms;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, int zero_bias) {
  Ring q = rationals();
  std::uniform_int_distribution<int> dist(-range, range), zero(0, 9);
  ExactMatrix m(q, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Scalar::integer(q, zero(rng) < zero_bias ? 0 : dist(rng));
  return m;
}

oracle::QMatrix to_q(const ExactMatrix& m) {
  oracle::QMatrix out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).rational_value();
  return out;
}

}  // namespace

TEST(Linear, RankMatchesNaiveElimination) {
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    ExactMatrix m = random_matrix(rng, rows, cols, 3, static_cast<int>(rng() % 8));
    EXPECT_EQ(rank_over_fractions(m), oracle::rank(to_q(m)));
  }
}

TEST(Linear, KernelIsKernelAndHasComplementaryDimension) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
    ExactMatrix m = random_matrix(rng, rows, cols, 4, 5);
    auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size(), cols - oracle::rank(to_q(m)));
    for (const auto& v : ker) EXPECT_TRUE(is_zero_vec(m.apply(v)));
    Subspace s(rationals(), cols, ker);
    EXPECT_EQ(s.dimension(), ker.size());
  }
}

TEST(Linear, EchelonPivotsShareOneValue) {
  Ring q = rationals();
  auto m = ExactMatrix::from_rows(q, 3,
                                  {{Scalar::integer(q, 2), Scalar::integer(q, 4), Scalar::integer(q, 1)},
                                   {Scalar::integer(q, 1), Scalar::integer(q, 2), Scalar::integer(q, 3)}});
  EchelonForm e = fraction_free_gauss_jordan(m);
  ASSERT_EQ(e.pivot_columns, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(e.reduced.at(0, 0), e.pivot);
  EXPECT_EQ(e.reduced.at(1, 2), e.pivot);
  EXPECT_TRUE(e.reduced.at(0, 2).is_zero());
  EXPECT_TRUE(e.reduced.at(1, 0).is_zero());
}

TEST(Linear, PolynomialEntriesStayInTheRing) {
  // [[t, t^2], [1, t]] has rank 1 over Q(t); [[t, 1], [1, t]] rank 2.
  Ring r = poly_ring(rationals());
  Scalar t = Scalar::variable(r), one = Scalar::one(r);
  auto a = ExactMatrix::from_rows(r, 2, {{t, t * t}, {one, t}});
  auto b = ExactMatrix::from_rows(r, 2, {{t, one}, {one, t}});
  EXPECT_EQ(rank_over_fractions(a), 1u);
  EXPECT_EQ(rank_over_fractions(b), 2u);
  auto ker = kernel_basis(a);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_TRUE(is_zero_vec(a.apply(ker[0])));
  for (const auto& s : ker[0]) EXPECT_EQ(s.ring(), r);
}

TEST(Linear, SolveHomogeneousSystem) {
  Ring q = rationals();
  auto i = [&](long v) { return Scalar::integer(q, v); };
  // x + y + z = 0 and x - z = 0, given twice.
  auto sol = solve_homogeneous_system(q, 3, {{i(1), i(1), i(1)}, {i(1), i(0), i(-1)}, {i(2), i(2), i(2)}});
  ASSERT_EQ(sol.size(), 1u);
  Subspace s(q, 3, sol);
  EXPECT_TRUE(s.contains({i(1), i(-2), i(1)}));
  EXPECT_EQ(solve_homogeneous_system(q, 2, {}).size(), 2u);
}

TEST(Linear, SubspaceCoordinatesReconstruct) {
  std::mt19937_64 rng(11);
  Ring q = rationals();
  for (int trial = 0; trial < 50; ++trial) {
    ExactMatrix m = random_matrix(rng, 4, 6, 3, 2);
    Subspace s(q, 6);
    for (std::size_t r = 0; r < 4; ++r) s.add(m.row(r));
    std::uniform_int_distribution<int> dist(-3, 3);
    Vec v = zero_vec(q, 6), c;
    for (std::size_t r = 0; r < 4; ++r) v = add(v, scale(Scalar::integer(q, dist(rng)), m.row(r)));
    auto coords = s.coordinates(v);
    ASSERT_TRUE(coords.has_value());
    Vec back = zero_vec(q, 6);
    for (std::size_t k = 0; k < s.dimension(); ++k) back = add(back, scale((*coords)[k], s.basis()[k]));
    EXPECT_EQ(back, v);
    EXPECT_TRUE(s.contains(v));
  }
}

TEST(Linear, SubspaceEqualityIgnoresBasisChoice) {
  Ring q = rationals();
  auto i = [&](long v) { return Scalar::integer(q, v); };
  Subspace a(q, 3, {{i(1), i(0), i(0)}, {i(0), i(1), i(0)}});
  Subspace b(q, 3, {{i(1), i(1), i(0)}, {i(1), i(-1), i(0)}});
  Subspace c(q, 3, {{i(1), i(0), i(1)}});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  EXPECT_FALSE(a.contains({i(0), i(0), i(1)}));
  EXPECT_FALSE(a.coordinates({i(0), i(0), i(1)}).has_value());
  EXPECT_FALSE(a.add({i(2), i(3), i(0)}));
}

TEST(Linear, VectorHelpers) {
  Ring q = rationals();
  Vec a = unit_vec(q, 3, 1), b = {Scalar::integer(q, 2), Scalar::integer(q, 5), Scalar::integer(q, 0)};
  EXPECT_EQ(dot(a, b), Scalar::integer(q, 5));
  EXPECT_TRUE(is_zero_vec(sub(b, b)));
  EXPECT_EQ(add(a, a), scale(Scalar::integer(q, 2), a));
}
