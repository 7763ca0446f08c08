#include "compforms/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <random>
#include <set>

namespace compforms {

namespace {

std::vector<ProductTerm> sparse(const Vec& v) {
  std::vector<ProductTerm> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back(ProductTerm{k, v[k]});
  return out;
}

}  // namespace

Algebra::Algebra(Ring r, std::size_t n, const ProductFn& product, Vec unit, std::vector<std::string> labels)
    : ring_(r), n_(n), unit_(std::move(unit)), labels_(std::move(labels)) {
  if (n == 0) throw std::invalid_argument("algebra rank must be positive");
  if (unit_.size() != n) throw std::invalid_argument("unit vector has wrong length");
  if (!labels_.empty() && labels_.size() != n) throw std::invalid_argument("label count does not match rank");
  for (const Scalar& s : unit_)
    if (s.ring() != r) throw RingMismatch("unit not over " + r->name());
  products_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec p = product(i, j);
      if (p.size() != n) throw std::invalid_argument("product vector has wrong length");
      for (const Scalar& s : p)
        if (s.ring() != r) throw RingMismatch("structure constant not over " + r->name());
      products_[i * n + j] = sparse(p);
    }
  check_unit_law();
}

Algebra Algebra::from_entries(Ring r, std::size_t n, const std::vector<Entry>& entries, Vec unit,
                              std::vector<std::string> labels) {
  std::vector<Vec> table(n * n, zero_vec(r, n));
  for (const Entry& e : entries) {
    if (e.i >= n || e.j >= n || e.k >= n) throw std::out_of_range("structure constant index out of range");
    table[e.i * n + e.j][e.k] += e.coeff;
  }
  return Algebra(r, n, [&](std::size_t i, std::size_t j) { return table[i * n + j]; }, std::move(unit),
                 std::move(labels));
}

void Algebra::check_unit_law() const {
  for (std::size_t j = 0; j < n_; ++j) {
    Vec ej = basis(j);
    if (multiply(unit_, ej) != ej || multiply(ej, unit_) != ej)
      throw std::invalid_argument("unit law fails on basis vector " + label(j));
  }
}

Scalar Algebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  for (const ProductTerm& t : product(i, j))
    if (t.index == k) return t.coeff;
  return Scalar::zero(ring_);
}

std::vector<Algebra::Entry> Algebra::entries() const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (const ProductTerm& t : product(i, j)) out.push_back(Entry{i, j, t.index, t.coeff});
  return out;
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("element does not belong to this algebra");
  Vec out = zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& p = product(i, j);
      if (p.empty()) continue;
      Scalar xy = x[i] * y[j];
      for (const ProductTerm& t : p) out[t.index] += t.coeff.is_one() ? xy : t.coeff * xy;
    }
  }
  return out;
}

Vec Algebra::left_basis_multiply(std::size_t i, const Vec& x) const {
  Vec out = zero();
  for (std::size_t j = 0; j < n_; ++j) {
    if (x[j].is_zero()) continue;
    for (const ProductTerm& t : product(i, j)) out[t.index] += t.coeff * x[j];
  }
  return out;
}

Vec Algebra::right_basis_multiply(const Vec& x, std::size_t i) const {
  Vec out = zero();
  for (std::size_t j = 0; j < n_; ++j) {
    if (x[j].is_zero()) continue;
    for (const ProductTerm& t : product(j, i)) out[t.index] += t.coeff * x[j];
  }
  return out;
}

Algebra Algebra::map_scalars(Ring target, const std::function<Scalar(const Scalar&)>& f) const {
  Algebra out;
  out.ring_ = target;
  out.n_ = n_;
  out.labels_ = labels_;
  for (const Scalar& s : unit_) out.unit_.push_back(f(s));
  out.products_.resize(products_.size());
  for (std::size_t p = 0; p < products_.size(); ++p)
    for (const ProductTerm& t : products_[p]) {
      Scalar c = f(t.coeff);
      if (!c.is_zero()) out.products_[p].push_back(ProductTerm{t.index, std::move(c)});
    }
  out.check_unit_law();
  return out;
}

Algebra Algebra::over(Ring target) const {
  if (target == ring_) return *this;
  return map_scalars(target, [target](const Scalar& s) { return embed(s, target); });
}

std::string Algebra::label(std::size_t i) const { return labels_.empty() ? "e" + std::to_string(i + 1) : labels_[i]; }

std::string Algebra::format(const Vec& x) const {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + x[i].to_string() + ")*" + label(i);
  }
  return out.empty() ? "0" : out;
}

Vec associator(const Algebra& A, const Vec& x, const Vec& y, const Vec& z) {
  return sub(A.multiply(A.multiply(x, y), z), A.multiply(x, A.multiply(y, z)));
}

Vec commutator(const Algebra& A, const Vec& x, const Vec& y) { return sub(A.multiply(x, y), A.multiply(y, x)); }

GenericElements generic_elements(const Algebra& A, std::size_t count) {
  std::size_t n = A.rank();
  Ring M = multi_poly_ring(A.ring(), count * n, "z");
  GenericElements g{M, A.over(M), {}};
  for (std::size_t c = 0; c < count; ++c) {
    Vec x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Scalar::variable(M, c * n + i));
    g.elements.push_back(std::move(x));
  }
  return g;
}

std::uint64_t symbolic_budget() {
  if (const char* env = std::getenv("COMPFORMS_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1'000'000;
}

namespace {

std::vector<Vec> sample_point(Ring r, std::size_t arity, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-5, 5);
  std::vector<Vec> xs(arity);
  for (auto& x : xs)
    for (std::size_t i = 0; i < n; ++i) x.push_back(Scalar::integer(r, dist(rng)));
  return xs;
}

Witness make_witness(const Algebra& A, const std::vector<Vec>& xs, const std::vector<Scalar>& res) {
  Witness w;
  for (const Vec& x : xs) w.inputs.push_back(A.format(x));
  for (std::size_t k = 0; k < res.size(); ++k)
    if (!res[k].is_zero()) {
      w.discrepancy = "component " + std::to_string(k) + " = " + res[k].to_string();
      break;
    }
  return w;
}

}  // namespace

VerificationReport check_identity(const std::string& name, const Algebra& A, std::size_t arity,
                                  const IdentityFn& residual, std::optional<std::uint64_t> budget) {
  VerificationReport rep;
  rep.check = name;
  std::uint64_t limit = budget.value_or(symbolic_budget());
  std::size_t n = A.rank();
  try {
    std::vector<Scalar> res;
    std::uint64_t used = 0;
    GenericElements g = generic_elements(A, arity);
    {
      TermBudget tb(limit);
      res = residual(g.algebra, g.elements);
      used = tb.used();
    }
    rep.method = Method::symbolic;
    rep.counters["monomial_products"] = static_cast<std::int64_t>(used);
    rep.counters["variables"] = static_cast<std::int64_t>(arity * n);
    auto bad = std::find_if(res.begin(), res.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (bad == res.end()) return rep;
    // Specialize the nonzero difference at deterministic points until it is nonzero.
    std::mt19937_64 rng(kSampleSeed);
    for (int attempt = 0; attempt < 256; ++attempt) {
      auto xs = sample_point(A.ring(), arity, n, rng);
      std::vector<Scalar> flat;
      for (const Vec& x : xs) flat.insert(flat.end(), x.begin(), x.end());
      if (substitute(*bad, flat, A.ring()).is_zero()) continue;
      rep.fail(make_witness(A, xs, residual(A, xs)));
      return rep;
    }
    rep.fail(Witness{{"generic"}, "nonzero polynomial " + bad->to_string()});
    return rep;
  } catch (const BudgetExceeded&) {
    rep = VerificationReport{};
    rep.check = name;
  }
  rep.method = Method::sampled;
  rep.counters["seed"] = static_cast<std::int64_t>(kSampleSeed);
  rep.counters["samples"] = kSampleCount;
  rep.counters["budget"] = static_cast<std::int64_t>(limit);
  std::mt19937_64 rng(kSampleSeed);
  for (int s = 0; s < kSampleCount; ++s) {
    auto xs = sample_point(A.ring(), arity, n, rng);
    auto res = residual(A, xs);
    if (std::any_of(res.begin(), res.end(), [](const Scalar& v) { return !v.is_zero(); })) {
      rep.fail(make_witness(A, xs, res));
      break;
    }
  }
  return rep;
}

VerificationReport check_alternative(const Algebra& A, std::optional<std::uint64_t> budget) {
  return check_identity(
      "alternative", A, 2,
      [](const Algebra& B, const std::vector<Vec>& xs) {
        const Vec& x = xs[0];
        const Vec& y = xs[1];
        Vec xx = B.multiply(x, x);
        Vec left = sub(B.multiply(xx, y), B.multiply(x, B.multiply(x, y)));
        Vec right = sub(B.multiply(y, xx), B.multiply(B.multiply(y, x), x));
        left.insert(left.end(), right.begin(), right.end());
        return left;
      },
      budget);
}

// ---------------------------------------------------------------------------
// Ideals

bool is_two_sided_ideal(const Algebra& A, const Subspace& s) {
  for (const Vec& b : s.basis())
    for (std::size_t i = 0; i < A.rank(); ++i)
      if (!s.contains(A.left_basis_multiply(i, b)) || !s.contains(A.right_basis_multiply(b, i))) return false;
  return true;
}

Ideal::Ideal(const Algebra& A, Subspace span) : span_(std::move(span)) {
  if (span_.ambient() != A.rank()) throw std::invalid_argument("ideal lives in a different algebra");
  if (!is_two_sided_ideal(A, span_)) throw std::logic_error("subspace is not a two-sided ideal");
}

Ideal ideal_closure(const Algebra& A, const std::vector<Vec>& generators) {
  Subspace s(A.ring(), A.rank());
  std::deque<Vec> pending;
  auto push = [&](const Vec& v) {
    if (s.add(v)) pending.push_back(v);
  };
  for (const Vec& g : generators) push(g);
  while (!pending.empty() && s.dimension() < A.rank()) {
    Vec v = std::move(pending.front());
    pending.pop_front();
    for (std::size_t i = 0; i < A.rank(); ++i) {
      push(A.left_basis_multiply(i, v));
      push(A.right_basis_multiply(v, i));
    }
  }
  if (s.dimension() == A.rank()) {
    Subspace full(A.ring(), A.rank());
    for (std::size_t i = 0; i < A.rank(); ++i) full.add(A.basis(i));
    return Ideal(A, std::move(full));
  }
  return Ideal(A, std::move(s));
}

Ideal ideal_product(const Algebra& A, const Ideal& I, const Ideal& J) {
  std::vector<Vec> gens;
  for (const Vec& b : I.basis())
    for (const Vec& c : J.basis()) gens.push_back(A.multiply(b, c));
  return ideal_closure(A, gens);
}

Algebra direct_sum(const Algebra& A1, const Algebra& A2) {
  if (A1.ring() != A2.ring()) throw RingMismatch("direct_sum: algebras over different rings");
  Ring r = A1.ring();
  std::size_t n1 = A1.rank(), n2 = A2.rank(), n = n1 + n2;
  std::vector<Algebra::Entry> entries;
  for (const auto& e : A1.entries()) entries.push_back(e);
  for (const auto& e : A2.entries()) entries.push_back(Algebra::Entry{e.i + n1, e.j + n1, e.k + n1, e.coeff});
  Vec unit = A1.unit();
  unit.insert(unit.end(), A2.unit().begin(), A2.unit().end());
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n1; ++i) seen.insert(A1.label(i));
  bool clash = false;
  for (std::size_t i = 0; i < n2; ++i) clash = clash || seen.count(A2.label(i));
  for (std::size_t i = 0; i < n1; ++i) labels.push_back((clash ? "L." : "") + A1.label(i));
  for (std::size_t i = 0; i < n2; ++i) labels.push_back((clash ? "R." : "") + A2.label(i));
  return Algebra::from_entries(r, n, entries, std::move(unit), std::move(labels));
}

bool is_central(const Algebra& A, const Vec& x) {
  for (std::size_t j = 0; j < A.rank(); ++j) {
    Vec ej = A.basis(j);
    if (!is_zero_vec(commutator(A, x, ej))) return false;
    for (std::size_t k = 0; k < A.rank(); ++k) {
      Vec ek = A.basis(k);
      if (!is_zero_vec(associator(A, x, ej, ek)) || !is_zero_vec(associator(A, ej, x, ek)) ||
          !is_zero_vec(associator(A, ej, ek, x)))
        return false;
    }
  }
  return true;
}

std::pair<Ideal, Ideal> split_by_idempotent(const Algebra& A, const Vec& e) {
  if (A.multiply(e, e) != e) throw NotCentralIdempotent("e is not idempotent");
  if (is_zero_vec(e)) throw NotCentralIdempotent("e is zero");
  if (e == A.unit()) throw NotCentralIdempotent("e is the unit");
  if (!is_central(A, e)) throw NotCentralIdempotent("e is not central");
  Vec f = sub(A.unit(), e);
  Subspace s1(A.ring(), A.rank()), s2(A.ring(), A.rank());
  for (std::size_t j = 0; j < A.rank(); ++j) {
    s1.add(A.right_basis_multiply(e, j));
    s2.add(A.right_basis_multiply(f, j));
  }
  return {Ideal(A, std::move(s1)), Ideal(A, std::move(s2))};
}

CenterNucleus center_and_nucleus(const Algebra& A) {
  std::size_t n = A.rank();
  Ring r = A.ring();
  // Row (position, j, k, l): sum_a v_a [assoc]_l = 0 for the three positions of v.
  Subspace assoc_rows(r, n), comm_rows(r, n);
  std::vector<Vec> basis;
  for (std::size_t a = 0; a < n; ++a) basis.push_back(A.basis(a));
  for (int pos = 0; pos < 3 && assoc_rows.dimension() < n; ++pos)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Vec> cols;
        for (std::size_t a = 0; a < n; ++a) {
          const Vec& v = basis[a];
          if (pos == 0) cols.push_back(associator(A, v, basis[j], basis[k]));
          if (pos == 1) cols.push_back(associator(A, basis[j], v, basis[k]));
          if (pos == 2) cols.push_back(associator(A, basis[j], basis[k], v));
        }
        for (std::size_t l = 0; l < n; ++l) {
          Vec row;
          for (std::size_t a = 0; a < n; ++a) row.push_back(cols[a][l]);
          if (!is_zero_vec(row)) assoc_rows.add(row);
        }
      }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Vec> cols;
    for (std::size_t a = 0; a < n; ++a) cols.push_back(commutator(A, basis[a], basis[j]));
    for (std::size_t l = 0; l < n; ++l) {
      Vec row;
      for (std::size_t a = 0; a < n; ++a) row.push_back(cols[a][l]);
      if (!is_zero_vec(row)) comm_rows.add(row);
    }
  }
  CenterNucleus out;
  out.nucleus = solve_homogeneous_system(r, n, assoc_rows.basis());
  std::vector<Vec> all = assoc_rows.basis();
  all.insert(all.end(), comm_rows.basis().begin(), comm_rows.basis().end());
  out.center = solve_homogeneous_system(r, n, all);
  return out;
}

bool lin_independent_with_unit(const Algebra& A, const Vec& e) {
  if (A.multiply(e, e) != e) throw std::invalid_argument("lin_independent_with_unit: e is not idempotent");
  if (is_zero_vec(e)) throw std::invalid_argument("lin_independent_with_unit: e is zero");
  if (e == A.unit()) throw std::invalid_argument("lin_independent_with_unit: e is the unit");
  return rank_over_fractions(ExactMatrix::from_rows(A.ring(), A.rank(), {A.unit(), e})) == 2;
}

}  // namespace compforms
