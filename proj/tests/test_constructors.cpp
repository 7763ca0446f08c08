#include <gtest/gtest.h>

#include "compforms/constructors.hpp"
#include "oracles.hpp"

using namespace compforms;

namespace {

Ring Q() { return rationals(); }
Scalar q(long v) { return Scalar::integer(Q(), v); }

std::size_t binom(unsigned n, unsigned k) { return binomial_integer(n, k).get_ui(); }

void expect_well_formed(const FormedAlgebra& F) {
  EXPECT_EQ(F.form(F.algebra.unit()), Scalar::one(F.ring())) << F.tag;
  EXPECT_EQ(F.form.rank, F.rank());
  EXPECT_EQ(F.algebra.labels().size(), F.rank());
}

}  // namespace

TEST(Constructors, BaseAndSplitEtale) {
  FormedAlgebra B = base_algebra(Q(), 4);
  EXPECT_EQ(B.rank(), 1u);
  EXPECT_EQ(B.form(Vec{q(3)}), q(81));
  FormedAlgebra E = split_etale(Q(), {1, 3});
  EXPECT_EQ(E.degree(), 4u);
  EXPECT_EQ(E.form(Vec{q(2), q(3)}), q(54));
  EXPECT_THROW(split_etale(Q(), {}), std::invalid_argument);
  EXPECT_THROW(split_etale(Q(), {1, 0}), std::invalid_argument);
  expect_well_formed(E);
}

TEST(Constructors, QuadraticEtale) {
  FormedAlgebra F = quadratic_etale(Q(), q(5));
  EXPECT_EQ(F.form(Vec{q(2), q(1)}), q(-1));
  EXPECT_EQ(F.algebra.multiply(F.algebra.basis(1), F.algebra.basis(1)), (Vec{q(5), q(0)}));
  EXPECT_THROW(quadratic_etale(Q(), q(0)), NotAUnit);
  Ring L = laurent_ring(Q());
  EXPECT_NO_THROW(quadratic_etale(L, Scalar::variable(L)));
  EXPECT_THROW(quadratic_etale(poly_ring(Q()), Scalar::variable(poly_ring(Q()))), NotAUnit);
}

TEST(Constructors, CubicTits) {
  FormedAlgebra J = cubic_tits(Q(), q(2));
  EXPECT_EQ(J.algebra.labels(), (std::vector<std::string>{"1", "x", "x^2"}));
  // x^3 = mu
  Vec x = J.algebra.basis(1);
  EXPECT_EQ(J.algebra.multiply(x, J.algebra.multiply(x, x)), (Vec{q(2), q(0), q(0)}));
  // a^3 + mu v^3 + mu^2 w^3 - 3 mu a v w
  EXPECT_EQ(J.form(Vec{q(1), q(1), q(1)}), q(1 + 2 + 4 - 6));
  EXPECT_THROW(cubic_tits(Q(), q(0)), NotAUnit);
  expect_well_formed(J);
}

TEST(Constructors, CayleyDicksonTower) {
  FormedAlgebra F = base_algebra(Q(), 2);
  std::vector<std::size_t> ranks;
  for (int k = 0; k < 3; ++k) {
    F = cayley_dickson(F, q(-1));
    ranks.push_back(F.rank());
    expect_well_formed(F);
  }
  EXPECT_EQ(ranks, (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_EQ(F.algebra.label(7), "u1*u2*u4");
  EXPECT_THROW(cayley_dickson(cubic_tits(Q(), q(2)), q(-1)), std::invalid_argument);
  EXPECT_THROW(cayley_dickson(F, q(0)), NotAUnit);
}

TEST(Constructors, OctonionNormIsAnisotropicOnAGrid) {
  FormedAlgebra O = base_algebra(Q(), 2);
  for (int k = 0; k < 3; ++k) O = cayley_dickson(O, q(-1));
  std::size_t checked = 0;
  for (int code = 0; code < 6561; ++code) {
    Vec x;
    int c = code;
    for (int i = 0; i < 8; ++i, c /= 3) x.push_back(q(c % 3 - 1));
    if (is_zero_vec(x)) continue;
    Scalar n = oracle::eval(O.form, x);
    ASSERT_GT(n.rational_value(), 0);
    // The norm is the sum of squares of the coordinates.
    Scalar s = q(0);
    for (const auto& xi : x) s += xi * xi;
    ASSERT_EQ(n, s);
    ++checked;
  }
  EXPECT_EQ(checked, 6560u);
}

TEST(Constructors, ZornIsotropicAndMultiplicative) {
  FormedAlgebra Z = zorn(Q());
  EXPECT_TRUE(Z.form(Z.algebra.basis(1)).is_zero());
  EXPECT_EQ(Z.form(add(Z.algebra.basis(1), Z.algebra.basis(4))), q(-1));
  expect_well_formed(Z);
}

TEST(Constructors, MatrixDeterminant) {
  FormedAlgebra M = matrix_algebra_det(Q(), 2);
  EXPECT_EQ(M.form(Vec{q(1), q(2), q(3), q(4)}), q(-2));
  EXPECT_EQ(M.algebra.labels(), (std::vector<std::string>{"E11", "E12", "E21", "E22"}));
  EXPECT_THROW(matrix_algebra_det(Q(), 0), std::invalid_argument);
}

TEST(Constructors, ProductsAndPowers) {
  FormedAlgebra P = product_form(base_algebra(Q(), 1), zorn(Q()));
  EXPECT_EQ(P.rank(), 9u);
  EXPECT_EQ(P.degree(), 3u);
  FormedAlgebra Z2 = power_form(zorn(Q()), 2);
  EXPECT_EQ(Z2.degree(), 4u);
  Vec x = add(Z2.algebra.basis(0), scale(q(3), Z2.algebra.basis(7)));
  EXPECT_EQ(Z2.form(x), q(9));
  EXPECT_THROW(power_form(Z2, 0), std::invalid_argument);
  EXPECT_THROW(product_form(zorn(Q()), zorn(laurent_ring(Q()))), RingMismatch);
}

TEST(Constructors, SectionEndRankSweep) {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned b = 1; b <= 4; ++b)
      for (unsigned a = 0; a <= b; ++a) {
        FormedAlgebra S = section_end_algebra(Q(), n, a, b);
        // Below the diagonal only degree-0 blocks survive: E21 when a = 0, E32 when a = b.
        std::size_t expected = 3 + binom(a + n, n) + binom(b + n, n) + binom(b - a + n, n) + (a == 0) + (a == b);
        EXPECT_EQ(S.rank(), expected) << n << " " << a << " " << b;
        expect_well_formed(S);
      }
  EXPECT_THROW(section_end_algebra(Q(), 1, 2, 1), std::invalid_argument);
  EXPECT_THROW(section_end_algebra(Q(), 1, 0, 0), std::invalid_argument);
}

TEST(Constructors, SectionEndDisplayedRanks) {
  EXPECT_EQ(section_end_algebra(Q(), 1, 1, 2).rank(), 6u + 2 * 2);
  EXPECT_EQ(section_end_algebra(Q(), 1, 1, 1).rank(), 5u + 2 * 2);
  EXPECT_EQ(section_end_algebra(Q(), 1, 0, 1).rank(), 5u + 2 * 2);
  EXPECT_EQ(section_end_algebra(Q(), 2, 1, 2).rank(), 15u);
}

TEST(Constructors, SectionEndNormIsDiagonalProduct) {
  FormedAlgebra S = section_end_algebra(Q(), 1, 1, 2);
  Vec x = S.algebra.zero();
  for (std::size_t i = 0; i < S.rank(); ++i) x[i] = q(static_cast<long>(i) + 2);
  Scalar diag = q(1);
  for (std::size_t i = 0; i < S.rank(); ++i) {
    const std::string& l = S.algebra.label(i);
    if (l[1] == l[2]) diag *= x[i];
  }
  EXPECT_EQ(S.form(x), diag);
}

TEST(Constructors, SectionZornRankSweep) {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned l = 1; l <= 4; ++l)
      for (unsigned m = 1; m <= 4; ++m) {
        FormedAlgebra S = section_zorn_algebra(Q(), n, l, m);
        EXPECT_EQ(S.rank(), 3 + binom(l + n, n) + binom(m + n, n) + binom(l + m + n, n)) << n << l << m;
        expect_well_formed(S);
      }
  EXPECT_EQ(section_zorn_algebra(Q(), 1, 1, 1).rank(), 10u);
  EXPECT_EQ(section_zorn_algebra(Q(), 1, 1, 2).rank(), 12u);
  EXPECT_THROW(section_zorn_algebra(Q(), 1, 0, 1), std::invalid_argument);
}

TEST(Constructors, MonomialsOfDegree) {
  auto ms = monomials_of_degree(2, 2);
  EXPECT_EQ(ms, (std::vector<Exponents>{{2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(monomials_of_degree(4, 3).size(), 20u);
  EXPECT_EQ(monomials_of_degree(3, 0).size(), 1u);
}
