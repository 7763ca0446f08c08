#pragma once

// Builders for the named algebra/form pairs.

#include <vector>

#include "compforms/form.hpp"

namespace compforms {

/// R with N(x) = x^d.
FormedAlgebra base_algebra(Ring r, unsigned d);
/// R^r with componentwise product and N(x) = prod x_i^{m_i}, d = sum m_i.
FormedAlgebra split_etale(Ring r, const std::vector<unsigned>& multiplicities);
/// Basis {1, w} with w^2 = c, n(a + bw) = a^2 - c b^2.
FormedAlgebra quadratic_etale(Ring r, const Scalar& c);
/// R[x]/(x^3 - mu) with basis {1, x, x^2} and its cubic norm. The norm is
/// cross-checked against the Tits coordinates (a, w, mu*w') at build time.
FormedAlgebra cubic_tits(Ring r, const Scalar& mu);
/// Doubling of a degree-2 formed algebra: (u1,u2)(v1,v2) = (u1v1 + mu bar(v2)u2, v2u1 + u2 bar(v1)).
FormedAlgebra cayley_dickson(const FormedAlgebra& D, const Scalar& mu);
/// Vector matrices [[a, v], [w, b]] with norm ab - v.w; basis a, v1..v3, w1..w3, b.
FormedAlgebra zorn(Ring r);
/// Full matrix algebra with the determinant; basis E_ij row-major.
FormedAlgebra matrix_algebra_det(Ring r, unsigned size);
/// Direct sum with N(x1 + x2) = N1(x1) N2(x2).
FormedAlgebra product_form(const FormedAlgebra& F1, const FormedAlgebra& F2);
/// Same algebra, form N^k.
FormedAlgebra power_form(const FormedAlgebra& F, unsigned k);

/// Global sections of the upper triangular twisted endomorphism algebra over
/// P^n: block (i, j) holds the degree m_i - m_j forms in n+1 variables for
/// twists (0, -a, -b). Requires 0 <= a <= b, b > 0. Labels are "Eij|monomial".
FormedAlgebra section_end_algebra(Ring r, unsigned n, unsigned a, unsigned b);
/// R + the Zorn-type algebra with slots a, b, v1 = S_l, v2 = S_m, w3 = S_{l+m}
/// and N = x_r * a * b. Labels are "r", "a", "b", "v1|monomial", ...
FormedAlgebra section_zorn_algebra(Ring r, unsigned n, unsigned l, unsigned m);

/// Monomials of a given degree in `nvars` variables, descending graded-lex.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, unsigned degree);

}  // namespace compforms
