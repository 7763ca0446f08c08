#include "compforms/constructors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace compforms {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

Scalar var(Ring coords, std::size_t i) { return Scalar::variable(coords, i); }

Scalar constant(Ring coords, const Scalar& c) { return embed(c, coords); }

Scalar require_unit(const Scalar& s, const std::string& what) {
  auto inv = s.try_invert();
  if (!inv) throw NotAUnit(what + " = " + s.to_string() + " is not a unit in " + s.ring()->name());
  return *inv;
}

// N restricted to the coordinates [offset, offset + F.rank()) of a larger coordinate ring.
Scalar shifted_form(const FormedAlgebra& F, Ring coords, std::size_t offset) {
  Vec xs;
  for (std::size_t i = 0; i < F.rank(); ++i) xs.push_back(var(coords, offset + i));
  return F.form(xs);
}

}  // namespace

std::vector<Exponents> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v + 1 == nvars) {
      cur[v] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[v] = e;
      rec(v + 1, left - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, static_cast<int>(degree));
  std::sort(out.begin(), out.end(), grlex_before);
  return out;
}

FormedAlgebra base_algebra(Ring r, unsigned d) {
  Algebra A(r, 1, [&](std::size_t, std::size_t) { return Vec{Scalar::one(r)}; }, {Scalar::one(r)}, {"1"});
  Ring c = coordinate_ring(r, 1);
  return make_formed(std::move(A), make_form(r, 1, d, var(c, 0).pow(d)), "base_algebra", {{"d", std::to_string(d)}});
}

FormedAlgebra split_etale(Ring r, const std::vector<unsigned>& multiplicities) {
  std::size_t n = multiplicities.size();
  if (n == 0) throw std::invalid_argument("split_etale: need at least one factor");
  unsigned d = 0;
  std::string mult;
  for (unsigned m : multiplicities) {
    if (m == 0) throw std::invalid_argument("split_etale: multiplicities must be positive");
    d += m;
    mult += (mult.empty() ? "" : ",") + std::to_string(m);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  Algebra A(r, n, [&](std::size_t i, std::size_t j) { return i == j ? unit_vec(r, n, i) : zero_vec(r, n); },
            Vec(n, Scalar::one(r)), labels);
  Ring c = coordinate_ring(r, n);
  Scalar N = Scalar::one(c);
  for (std::size_t i = 0; i < n; ++i) N *= var(c, i).pow(multiplicities[i]);
  return make_formed(std::move(A), make_form(r, n, d, N), "split_etale", {{"multiplicities", mult}});
}

FormedAlgebra quadratic_etale(Ring r, const Scalar& c) {
  if (c.ring() != r) throw RingMismatch("quadratic_etale: c not in " + r->name());
  require_unit(c, "c");
  Algebra A(r, 2,
            [&](std::size_t i, std::size_t j) {
              if (i == 0) return unit_vec(r, 2, j);
              if (j == 0) return unit_vec(r, 2, i);
              return Vec{c, Scalar::zero(r)};
            },
            {Scalar::one(r), Scalar::zero(r)}, {"1", "w"});
  Ring co = coordinate_ring(r, 2);
  Scalar N = var(co, 0) * var(co, 0) - constant(co, c) * var(co, 1) * var(co, 1);
  return make_formed(std::move(A), make_form(r, 2, 2, N), "quadratic_etale", {{"c", c.to_string()}});
}

FormedAlgebra cubic_tits(Ring r, const Scalar& mu) {
  if (mu.ring() != r) throw RingMismatch("cubic_tits: mu not in " + r->name());
  Scalar mu_inv = require_unit(mu, "mu");
  // x^i x^j = x^{i+j}, reduced by x^3 = mu
  Algebra A(r, 3,
            [&](std::size_t i, std::size_t j) {
              std::size_t k = i + j;
              Vec v = zero_vec(r, 3);
              v[k % 3] = k >= 3 ? mu : Scalar::one(r);
              return v;
            },
            unit_vec(r, 3, 0), {"1", "x", "x^2"});
  Ring co = coordinate_ring(r, 3);
  Scalar a = var(co, 0), v = var(co, 1), w = var(co, 2);
  Scalar m = constant(co, mu);
  Scalar N = a.pow(3) + m * v.pow(3) + m * m * w.pow(3) - Scalar::integer(co, 3) * m * a * v * w;
  // Tits coordinates: L = R x with N_L = mu, w = v and dual coordinate w' = mu w.
  Scalar wd = m * w;
  Scalar tits = a.pow(3) + m * v.pow(3) + constant(co, mu_inv) * wd.pow(3) - Scalar::integer(co, 3) * a * v * wd;
  if (tits != N) throw std::logic_error("cubic_tits: monomial norm disagrees with the Tits expression");
  return make_formed(std::move(A), make_form(r, 3, 3, N), "cubic_tits", {{"mu", mu.to_string()}});
}

FormedAlgebra cayley_dickson(const FormedAlgebra& D, const Scalar& mu) {
  if (D.degree() != 2) throw std::invalid_argument("cayley_dickson: D must carry a form of degree 2");
  Ring r = D.ring();
  if (mu.ring() != r) throw RingMismatch("cayley_dickson: mu not in " + r->name());
  require_unit(mu, "mu");
  const Algebra& B = D.algebra;
  std::size_t m = B.rank(), n = 2 * m;
  TraceTower tower = trace_tower(D);
  auto bar = [&](const Vec& x) { return sub(scale(trace_of(tower, x), B.unit()), x); };
  auto half = [&](const Vec& x, std::size_t off) { return Vec(x.begin() + off, x.begin() + off + m); };
  auto product = [&](std::size_t i, std::size_t j) {
    Vec x = unit_vec(r, n, i), y = unit_vec(r, n, j);
    Vec u1 = half(x, 0), u2 = half(x, m), v1 = half(y, 0), v2 = half(y, m);
    Vec first = add(B.multiply(u1, v1), scale(mu, B.multiply(bar(v2), u2)));
    Vec second = add(B.multiply(v2, u1), B.multiply(u2, bar(v1)));
    first.insert(first.end(), second.begin(), second.end());
    return first;
  };
  std::string u = "u" + std::to_string(m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back(B.label(i));
  for (std::size_t i = 0; i < m; ++i) labels.push_back(B.label(i) == "1" ? u : B.label(i) + "*" + u);
  Vec unit = B.unit();
  unit.resize(n, Scalar::zero(r));
  Algebra A(r, n, product, unit, labels);
  Ring co = coordinate_ring(r, n);
  Scalar N = shifted_form(D, co, 0) - constant(co, mu) * shifted_form(D, co, m);
  Params params{{"D", D.tag}, {"mu", mu.to_string()}};
  FormedAlgebra out = make_formed(std::move(A), make_form(r, n, 2, N), "cayley_dickson", params);
  return out;
}

namespace {

// Coordinates a, v1, v2, v3, w1, w2, w3, b.
Vec zorn_product(const Vec& x, const Vec& y) {
  Ring r = x[0].ring();
  const Scalar &a = x[0], &b = x[7], &a2 = y[0], &b2 = y[7];
  Vec v(x.begin() + 1, x.begin() + 4), w(x.begin() + 4, x.begin() + 7);
  Vec v2(y.begin() + 1, y.begin() + 4), w2(y.begin() + 4, y.begin() + 7);
  auto cross = [](const Vec& p, const Vec& q) {
    return Vec{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  };
  Vec out(8, Scalar::zero(r));
  out[0] = a * a2 + dot(v, w2);
  Vec top = sub(add(scale(a, v2), scale(b2, v)), cross(w, w2));
  Vec bottom = add(add(scale(a2, w), scale(b, w2)), cross(v, v2));
  for (int k = 0; k < 3; ++k) {
    out[1 + k] = top[k];
    out[4 + k] = bottom[k];
  }
  out[7] = b * b2 + dot(w, v2);
  return out;
}

}  // namespace

FormedAlgebra zorn(Ring r) {
  Vec unit = zero_vec(r, 8);
  unit[0] = unit[7] = Scalar::one(r);
  Algebra A(r, 8, [&](std::size_t i, std::size_t j) { return zorn_product(unit_vec(r, 8, i), unit_vec(r, 8, j)); },
            unit, {"a", "v1", "v2", "v3", "w1", "w2", "w3", "b"});
  Ring co = coordinate_ring(r, 8);
  Scalar N = var(co, 0) * var(co, 7);
  for (int k = 0; k < 3; ++k) N -= var(co, 1 + k) * var(co, 4 + k);
  return make_formed(std::move(A), make_form(r, 8, 2, N), "zorn");
}

FormedAlgebra matrix_algebra_det(Ring r, unsigned size) {
  if (size < 1) throw std::invalid_argument("matrix_algebra_det: size must be positive");
  std::size_t s = size, n = s * s;
  std::vector<std::string> labels;
  Vec unit = zero_vec(r, n);
  for (std::size_t i = 0; i < s; ++i) {
    unit[i * s + i] = Scalar::one(r);
    for (std::size_t j = 0; j < s; ++j) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  Algebra A(r, n,
            [&](std::size_t p, std::size_t q) {
              std::size_t i = p / s, j = p % s, k = q / s, l = q % s;
              return j == k ? unit_vec(r, n, i * s + l) : zero_vec(r, n);
            },
            unit, labels);
  Ring co = coordinate_ring(r, n);
  std::vector<std::size_t> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) inversions += perm[i] > perm[j];
    Exponents e(n, 0);
    for (std::size_t i = 0; i < s; ++i) e[i * s + perm[i]] = 1;
    terms.push_back(Term{e, Scalar::integer(r, inversions % 2 ? -1 : 1)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return make_formed(std::move(A), make_form(r, n, size, Scalar::from_terms(co, terms)), "matrix_algebra_det",
                     {{"size", std::to_string(size)}});
}

FormedAlgebra product_form(const FormedAlgebra& F1, const FormedAlgebra& F2) {
  if (F1.ring() != F2.ring()) throw RingMismatch("product_form: factors over different rings");
  Ring r = F1.ring();
  Algebra A = direct_sum(F1.algebra, F2.algebra);
  std::size_t n = A.rank();
  Ring co = coordinate_ring(r, n);
  Scalar N = shifted_form(F1, co, 0) * shifted_form(F2, co, F1.rank());
  FormedAlgebra out = make_formed(std::move(A), make_form(r, n, F1.degree() + F2.degree(), N), "product_form",
                                  {{"left", F1.tag}, {"right", F2.tag}});
  out.expect_nondegenerate = F1.expect_nondegenerate && F2.expect_nondegenerate;
  return out;
}

FormedAlgebra power_form(const FormedAlgebra& F, unsigned k) {
  if (k == 0) throw std::invalid_argument("power_form: exponent must be positive");
  FormedAlgebra out = make_formed(F.algebra, make_form(F.ring(), F.rank(), F.degree() * k, F.form.poly.pow(k)),
                                  "power_form", {{"base", F.tag}, {"k", std::to_string(k)}});
  out.expect_nondegenerate = F.expect_nondegenerate;
  return out;
}

namespace {

std::string monomial_label(const Exponents& e) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += "s" + std::to_string(v) + "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

Exponents add_exps(const Exponents& x, const Exponents& y) {
  Exponents out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

// Basis of graded blocks: (block id, monomial) -> index.
struct GradedBasis {
  std::vector<std::pair<std::string, Exponents>> elements;
  std::map<std::pair<std::string, Exponents>, std::size_t> position;

  void add_block(const std::string& block, std::size_t nvars, unsigned degree) {
    for (const Exponents& e : monomials_of_degree(nvars, degree)) {
      position[{block, e}] = elements.size();
      elements.emplace_back(block, e);
    }
  }
  std::size_t at(const std::string& block, const Exponents& e) const { return position.at({block, e}); }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& [b, e] : elements) out.push_back(b + "|" + monomial_label(e));
    return out;
  }
};

}  // namespace

FormedAlgebra section_end_algebra(Ring r, unsigned n, unsigned a, unsigned b) {
  if (a > b || b == 0) throw std::invalid_argument("section_end: need 0 <= a <= b and b > 0");
  const int twist[3] = {0, -static_cast<int>(a), -static_cast<int>(b)};
  std::size_t nvars = n + 1;
  GradedBasis basis;
  auto block = [](int i, int j) { return "E" + std::to_string(i + 1) + std::to_string(j + 1); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (twist[i] - twist[j] >= 0) basis.add_block(block(i, j), nvars, static_cast<unsigned>(twist[i] - twist[j]));
  std::size_t N = basis.elements.size();
  auto row_col = [](const std::string& blk) { return std::pair<int, int>{blk[1] - '1', blk[2] - '1'}; };
  Vec unit = zero_vec(r, N);
  for (int i = 0; i < 3; ++i) unit[basis.at(block(i, i), Exponents(nvars, 0))] = Scalar::one(r);
  Algebra A(r, N,
            [&](std::size_t p, std::size_t q) {
              const auto& [bp, ep] = basis.elements[p];
              const auto& [bq, eq] = basis.elements[q];
              auto [i, j] = row_col(bp);
              auto [k, l] = row_col(bq);
              Vec out = zero_vec(r, N);
              if (j == k) out[basis.at(block(i, l), add_exps(ep, eq))] = Scalar::one(r);
              return out;
            },
            unit, basis.labels());
  // N_0 = det of the degree-zero entries.
  Ring co = coordinate_ring(r, N);
  std::vector<std::vector<Scalar>> m(3, std::vector<Scalar>(3, Scalar::zero(co)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (twist[i] == twist[j]) m[i][j] = var(co, basis.at(block(i, j), Exponents(nvars, 0)));
  Scalar det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  FormedAlgebra out = make_formed(std::move(A), make_form(r, N, 3, det), "section_end",
                                  {{"n", std::to_string(n)}, {"a", std::to_string(a)}, {"b", std::to_string(b)}});
  out.expect_nondegenerate = false;
  return out;
}

FormedAlgebra section_zorn_algebra(Ring r, unsigned n, unsigned l, unsigned m) {
  if (l == 0 || m == 0) throw std::invalid_argument("section_zorn: l and m must be positive");
  std::size_t nvars = n + 1;
  GradedBasis basis;
  basis.add_block("r", nvars, 0);
  basis.add_block("a", nvars, 0);
  basis.add_block("b", nvars, 0);
  basis.add_block("v1", nvars, l);
  basis.add_block("v2", nvars, m);
  basis.add_block("w3", nvars, l + m);
  std::size_t N = basis.elements.size();
  Exponents one(nvars, 0);
  std::size_t ir = basis.at("r", one), ia = basis.at("a", one), ib = basis.at("b", one);
  Vec unit = zero_vec(r, N);
  unit[ir] = unit[ia] = unit[ib] = Scalar::one(r);
  // Zorn multiplication restricted to the slots; every dot product pairs disjoint slots.
  Algebra A(r, N,
            [&](std::size_t p, std::size_t q) {
              const auto& [bp, ep] = basis.elements[p];
              const auto& [bq, eq] = basis.elements[q];
              Vec out = zero_vec(r, N);
              auto set = [&](std::size_t k, int s) { out[k] = Scalar::integer(r, s); };
              bool vp = bp[0] == 'v', vq = bq[0] == 'v', wp = bp[0] == 'w', wq = bq[0] == 'w';
              if (bp == "r" && bq == "r") set(ir, 1);
              if (bp == "a" && bq == "a") set(ia, 1);
              if (bp == "b" && bq == "b") set(ib, 1);
              if (bp == "a" && vq) set(q, 1);
              if (vp && bq == "b") set(p, 1);
              if (wp && bq == "a") set(p, 1);
              if (bp == "b" && wq) set(q, 1);
              if (bp == "v1" && bq == "v2") set(basis.at("w3", add_exps(ep, eq)), 1);
              if (bp == "v2" && bq == "v1") set(basis.at("w3", add_exps(ep, eq)), -1);
              return out;
            },
            unit, basis.labels());
  Ring co = coordinate_ring(r, N);
  Scalar form = var(co, ir) * var(co, ia) * var(co, ib);
  FormedAlgebra out = make_formed(std::move(A), make_form(r, N, 3, form), "section_zorn",
                                  {{"n", std::to_string(n)}, {"l", std::to_string(l)}, {"m", std::to_string(m)}});
  out.expect_nondegenerate = false;
  return out;
}

}  // namespace compforms
