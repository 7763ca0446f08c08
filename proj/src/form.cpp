#include "compforms/form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace compforms {

Ring coordinate_ring(Ring r, std::size_t n) { return multi_poly_ring(r, n, "x"); }

Scalar DegreeForm::operator()(const Vec& x) const {
  if (x.size() != rank) throw std::invalid_argument("form evaluated on a vector of the wrong length");
  return substitute(poly, x, x.front().ring());
}

DegreeForm make_form(Ring r, std::size_t n, unsigned d, Scalar poly) {
  if (poly.ring() != coordinate_ring(r, n))
    throw RingMismatch("form polynomial must live in " + coordinate_ring(r, n)->name());
  for (const Term& t : poly.terms())
    if (std::accumulate(t.exps.begin(), t.exps.end(), 0) != static_cast<int>(d))
      throw std::invalid_argument("form is not homogeneous of degree " + std::to_string(d));
  return DegreeForm{r, n, d, std::move(poly)};
}

// ---------------------------------------------------------------------------
// Multiset ranking

MultisetIndex::MultisetIndex(std::size_t n, unsigned d) : n_(n), d_(d) {
  std::size_t top = n + d + 1;
  binom_.assign(top + 1, std::vector<std::size_t>(d + 2, 0));
  for (std::size_t a = 0; a <= top; ++a) {
    binom_[a][0] = 1;
    for (std::size_t b = 1; b <= d + 1 && b <= a; ++b)
      binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : 0);
  }
  std::size_t count = n == 0 ? (d == 0 ? 1 : 0) : binom_[n + d - 1][d];
  multisets_.resize(count);
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t lo) {
    if (cur.size() == d) {
      multisets_[rank(cur)] = cur;
      return;
    }
    for (std::size_t i = lo; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
}

std::size_t MultisetIndex::rank(const std::size_t* sorted) const {
  std::size_t r = 0;
  for (unsigned j = 0; j < d_; ++j) r += binom_[sorted[j] + j][j + 1];
  return r;
}

mpz_class multinomial(const std::vector<std::size_t>& sorted) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), sorted.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    out /= static_cast<unsigned long>(run);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polarization

namespace {

// N at a vector of small non-negative integers.
Scalar eval_at_counts(const DegreeForm& N, const std::vector<unsigned>& counts) {
  Scalar out = Scalar::zero(N.ring);
  for (const Term& t : N.poly.terms()) {
    mpz_class m = 1;
    bool vanishes = false;
    for (std::size_t v = 0; v < t.exps.size() && !vanishes; ++v) {
      if (t.exps[v] == 0) continue;
      if (counts[v] == 0) {
        vanishes = true;
        break;
      }
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), counts[v], static_cast<unsigned long>(t.exps[v]));
      m *= p;
    }
    if (!vanishes) out += t.coeff * Scalar::from_mpz(N.ring, m);
  }
  return out;
}

}  // namespace

SymmetricTensor polarize(const DegreeForm& N) {
  unsigned d = N.degree;
  auto inv = factorial_unit(d, N.ring);
  if (!inv) throw NotAUnit(std::to_string(d) + "! is not a unit in " + N.ring->name());
  MultisetIndex index(N.rank, d);
  std::vector<Scalar> entries(index.size(), Scalar::zero(N.ring));
  std::map<std::vector<unsigned>, Scalar> memo;
  std::vector<unsigned> counts(N.rank, 0);
  for (std::size_t r = 0; r < index.size(); ++r) {
    const auto& alpha = index.multiset(r);
    Scalar sum = Scalar::zero(N.ring);
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      std::fill(counts.begin(), counts.end(), 0u);
      for (unsigned s = 0; s < d; ++s)
        if (mask & (1u << s)) ++counts[alpha[s]];
      auto it = memo.find(counts);
      if (it == memo.end()) it = memo.emplace(counts, eval_at_counts(N, counts)).first;
      if (it->second.is_zero()) continue;
      bool negative = (d - static_cast<unsigned>(__builtin_popcount(mask))) % 2 == 1;
      if (negative)
        sum -= it->second;
      else
        sum += it->second;
    }
    entries[r] = sum * *inv;
  }
  return SymmetricTensor{N.ring, N.rank, d, std::move(index), std::move(entries)};
}

Scalar theta_eval(const SymmetricTensor& theta, const std::vector<Vec>& xs) {
  if (xs.size() != theta.degree) throw std::invalid_argument("theta_eval: expected " + std::to_string(theta.degree) + " vectors");
  for (const Vec& x : xs)
    if (x.size() != theta.rank) throw std::invalid_argument("theta_eval: vector of the wrong length");
  Ring r = xs.empty() ? theta.ring : xs.front().front().ring();
  Scalar out = Scalar::zero(r);
  std::vector<std::size_t> idx(theta.degree), sorted(theta.degree);
  std::vector<Scalar> partial(theta.degree + 1, Scalar::one(r));
  std::function<void(unsigned)> rec = [&](unsigned k) {
    if (k == theta.degree) {
      sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      const Scalar& t = theta.entries[theta.index.rank(sorted)];
      if (!t.is_zero()) out += partial[k] * embed(t, r);
      return;
    }
    for (std::size_t i = 0; i < theta.rank; ++i) {
      if (xs[k][i].is_zero()) continue;
      idx[k] = i;
      partial[k + 1] = partial[k] * xs[k][i];
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Formed algebras

FormedAlgebra make_formed(Algebra A, DegreeForm N, std::string tag,
                          std::vector<std::pair<std::string, std::string>> params) {
  if (A.ring() != N.ring) throw RingMismatch("form and algebra live over different rings");
  if (A.rank() != N.rank) throw std::invalid_argument("form rank does not match algebra rank");
  if (N.degree == 0) throw std::invalid_argument("form degree must be positive");
  if (!factorial_unit(N.degree, N.ring))
    throw NotAUnit(std::to_string(N.degree) + "! is not a unit in " + N.ring->name());
  return FormedAlgebra{std::move(A), std::move(N), std::move(tag), std::move(params), true};
}

FormedAlgebra base_change(const FormedAlgebra& F, Ring target) {
  Ring coords = coordinate_ring(target, F.rank());
  Scalar poly = map_coefficients(F.form.poly, coords, [&](const Scalar& c) { return embed(c, target); });
  FormedAlgebra out = make_formed(F.algebra.over(target), make_form(target, F.rank(), F.degree(), poly), F.tag, F.params);
  out.expect_nondegenerate = F.expect_nondegenerate;
  return out;
}

// ---------------------------------------------------------------------------
// Trace tower

TraceTower trace_tower(const FormedAlgebra& F, const SymmetricTensor& theta) {
  Ring R = F.ring();
  std::size_t n = F.rank();
  unsigned d = F.degree();
  Ring coords = coordinate_ring(R, n);
  std::vector<std::pair<std::size_t, Scalar>> supp;
  for (std::size_t i = 0; i < n; ++i)
    if (!F.algebra.unit()[i].is_zero()) supp.emplace_back(i, F.algebra.unit()[i]);

  TraceTower tower{{}, zero_vec(R, n), ExactMatrix(R, n, n)};
  std::vector<std::size_t> full(d);
  for (unsigned i = 0; i <= d; ++i) {
    MultisetIndex idx(n, i);
    std::vector<Term> terms;
    unsigned rest = d - i;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const auto& beta = idx.multiset(b);
      Scalar sum = Scalar::zero(R);
      std::vector<std::size_t> odo(rest, 0);
      while (true) {
        Scalar w = Scalar::one(R);
        std::copy(beta.begin(), beta.end(), full.begin());
        for (unsigned s = 0; s < rest; ++s) {
          full[i + s] = supp[odo[s]].first;
          w *= supp[odo[s]].second;
        }
        std::sort(full.begin(), full.end());
        const Scalar& t = theta.at(full);
        if (!t.is_zero()) sum += w * t;
        unsigned s = 0;
        while (s < rest && ++odo[s] == supp.size()) odo[s++] = 0;
        if (s == rest) break;
      }
      if (sum.is_zero()) continue;
      Exponents e(n, 0);
      for (auto k : beta) ++e[k];
      terms.push_back(Term{std::move(e), sum * Scalar::from_mpz(R, binomial_integer(d, i) * multinomial(beta))});
    }
    tower.T.push_back(make_form(R, n, i, Scalar::from_terms(coords, std::move(terms))));
  }
  if (d >= 1)
    for (const Term& t : tower.T[1].poly.terms())
      for (std::size_t k = 0; k < n; ++k)
        if (t.exps[k] == 1) tower.trace[k] = t.coeff;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar b = Scalar::zero(R);
      for (const ProductTerm& p : F.algebra.product(i, j))
        if (!tower.trace[p.index].is_zero()) b += p.coeff * tower.trace[p.index];
      tower.gram.at(i, j) = b;
    }
  return tower;
}

TraceTower trace_tower(const FormedAlgebra& F) { return trace_tower(F, polarize(F.form)); }

Scalar trace_of(const TraceTower& tower, const Vec& x) { return dot(tower.trace, x); }

std::pair<Scalar, Vec> trace_split(const FormedAlgebra& F, const TraceTower& tower, const Vec& x) {
  auto inv_d = Scalar::integer(F.ring(), F.degree()).try_invert();
  if (!inv_d) throw NotAUnit(std::to_string(F.degree()) + " is not a unit in " + F.ring()->name());
  Scalar s = trace_of(tower, x) * *inv_d;
  return {s, sub(x, scale(s, F.algebra.unit()))};
}

// ---------------------------------------------------------------------------
// Nondegeneracy and radicals

ExactMatrix contraction_matrix(const SymmetricTensor& theta) {
  unsigned d = theta.degree;
  MultisetIndex cols(theta.rank, d == 0 ? 0 : d - 1);
  ExactMatrix m(theta.ring, cols.size(), theta.rank);
  std::vector<std::size_t> full(d);
  for (std::size_t b = 0; b < cols.size(); ++b) {
    const auto& beta = cols.multiset(b);
    for (std::size_t i = 0; i < theta.rank; ++i) {
      std::copy(beta.begin(), beta.end(), full.begin());
      full[d - 1] = i;
      std::sort(full.begin(), full.end());
      m.at(b, i) = theta.at(full);
    }
  }
  return m;
}

bool nondegenerate(const SymmetricTensor& theta) {
  return rank_over_fractions(contraction_matrix(theta)) == theta.rank;
}

std::vector<Vec> radical(const SymmetricTensor& theta) { return kernel_basis(contraction_matrix(theta)); }

std::vector<Vec> gram_radical(const TraceTower& tower) { return kernel_basis(tower.gram); }

Filtration radical_filtration(const FormedAlgebra& F, const SymmetricTensor& theta) {
  const Algebra& A = F.algebra;
  Filtration out;
  Subspace rad(A.ring(), A.rank(), radical(theta));
  out.radical_is_ideal = is_two_sided_ideal(A, rad);
  if (!out.radical_is_ideal) return out;
  Ideal I(A, rad);
  Ideal power = I;
  for (std::size_t k = 1; k <= A.rank() + 1; ++k) {
    out.dims.push_back(power.dimension());
    if (power.dimension() == 0) {
      out.nilpotency_index = k;
      break;
    }
    Ideal next = ideal_product(A, power, I);
    if (next.dimension() == power.dimension()) {
      out.dims.push_back(next.dimension());
      break;
    }
    power = std::move(next);
  }
  return out;
}

Filtration radical_filtration(const FormedAlgebra& F) { return radical_filtration(F, polarize(F.form)); }

// ---------------------------------------------------------------------------
// Composition

VerificationReport check_composition(const FormedAlgebra& F, std::optional<std::uint64_t> budget) {
  const DegreeForm& N = F.form;
  VerificationReport rep = check_identity(
      "composition", F.algebra, 2,
      [&N](const Algebra& B, const std::vector<Vec>& xs) {
        return std::vector<Scalar>{N(B.multiply(xs[0], xs[1])) - N(xs[0]) * N(xs[1])};
      },
      budget);
  Scalar at_unit = N(F.algebra.unit());
  if (!at_unit.is_one()) rep.fail(Witness{{"1"}, "N(1) = " + at_unit.to_string()});
  return rep;
}

namespace {

struct FastTerm {
  std::size_t index;
  int sign;  // +1 or -1 for unit coefficients, 0 otherwise
  const Scalar* coeff;
};

// Exhaustive evaluation of sums of theta(x_1 y_s(1), ..., x_d y_s(d)) over basis vectors.
class LinearizedEngine {
 public:
  LinearizedEngine(const Algebra& A, const SymmetricTensor& theta)
      : A_(A), theta_(theta), d_(theta.degree), n_(A.rank()), table_(n_ * n_),
        idx_(d_), sorted_(d_), general_(d_), acc_(Scalar::zero(A.ring())) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (const ProductTerm& t : A.product(i, j)) {
          int sign = t.coeff.is_one() ? 1 : ((-t.coeff).is_one() ? -1 : 0);
          table_[i * n_ + j].push_back(FastTerm{t.index, sign, &t.coeff});
        }
  }

  // Sum over distinct arrangements of the y multiset (groups of equal
  // vectors), weighted later by the group factorials. With permute = false
  // every slot uses y_0.
  std::optional<Scalar> run(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y, bool permute) {
    x_ = &x;
    groups_.clear();
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (!groups_.empty() && groups_.back().first == y[k])
        ++groups_.back().second;
      else
        groups_.emplace_back(y[k], 1);
    }
    permute_ = permute;
    touched_ = false;
    recurse(0, 1, 0);
    if (!touched_) return std::nullopt;
    return acc_;
  }

 private:
  void recurse(unsigned k, int sign, unsigned ngeneral) {
    if (k == d_) {
      std::copy(idx_.begin(), idx_.end(), sorted_.begin());
      std::sort(sorted_.begin(), sorted_.end());
      const Scalar& t = theta_.entries[theta_.index.rank(sorted_.data())];
      if (t.is_zero()) return;
      Scalar v = t;
      for (unsigned g = 0; g < ngeneral; ++g) v *= *general_[g];
      if (sign < 0) v = -v;
      if (!touched_) {
        acc_ = std::move(v);
        touched_ = true;
      } else {
        acc_ += v;
      }
      return;
    }
    std::size_t xi = (*x_)[k];
    for (auto& group : groups_) {
      if (group.second == 0) continue;
      const auto& terms = table_[xi * n_ + group.first];
      if (!terms.empty()) {
        if (permute_) --group.second;
        for (const FastTerm& t : terms) {
          idx_[k] = t.index;
          if (t.sign != 0) {
            recurse(k + 1, sign * t.sign, ngeneral);
          } else {
            general_[ngeneral] = t.coeff;
            recurse(k + 1, sign, ngeneral + 1);
          }
        }
        if (permute_) ++group.second;
      }
      if (!permute_) break;
    }
  }

  const Algebra& A_;
  const SymmetricTensor& theta_;
  unsigned d_;
  std::size_t n_;
  std::vector<std::vector<FastTerm>> table_;
  std::vector<std::size_t> idx_, sorted_;
  std::vector<const Scalar*> general_;
  const std::vector<std::size_t>* x_ = nullptr;
  std::vector<std::pair<std::size_t, unsigned>> groups_;
  bool permute_ = false;
  bool touched_ = false;
  Scalar acc_;
};

std::string basis_tuple(const Algebra& A, const std::vector<std::size_t>& ms) {
  std::string out = "(";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + A.label(ms[i]);
  return out + ")";
}

}  // namespace

VerificationReport check_linearized_composition(const FormedAlgebra& F, const SymmetricTensor& theta) {
  const Algebra& A = F.algebra;
  Ring R = A.ring();
  unsigned d = theta.degree;
  std::size_t n = A.rank();
  VerificationReport rep;
  rep.check = "linearized";
  rep.method = Method::exhaustive;
  LinearizedEngine engine(A, theta);
  const MultisetIndex& idx = theta.index;
  Scalar dfact = Scalar::from_mpz(R, [d] {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), d);
    return f;
  }());

  // theta(x_1 y, ..., x_d y) = theta(x) N(y)
  std::int64_t single = 0;
  for (std::size_t a = 0; a < idx.size() && rep.passed; ++a) {
    const auto& alpha = idx.multiset(a);
    for (std::size_t j = 0; j < n; ++j) {
      ++single;
      std::vector<std::size_t> y(d, j);
      auto lhs = engine.run(alpha, y, false);
      Scalar rhs = theta.entries[a] * theta.at(y);
      Scalar left = lhs ? *lhs : Scalar::zero(R);
      if (left != rhs) {
        rep.fail(Witness{{"x = " + basis_tuple(A, alpha), "y = " + A.label(j)},
                         "theta(x_i y) = " + left.to_string() + ", theta(x) N(y) = " + rhs.to_string()});
        break;
      }
    }
  }
  rep.counters["single_pairs"] = single;

  // sum_s theta(x_i y_s(i)) = d! theta(x) theta(y)
  std::vector<Scalar> scaled(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) scaled[a] = theta.entries[a] * dfact;
  std::vector<Scalar> weight(idx.size());
  for (std::size_t b = 0; b < idx.size(); ++b) {
    mpz_class w = 1;
    const auto& beta = idx.multiset(b);
    std::size_t run = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      run = (i > 0 && beta[i] == beta[i - 1]) ? run + 1 : 1;
      w *= static_cast<unsigned long>(run);
    }
    weight[b] = Scalar::from_mpz(R, w);
  }
  std::int64_t pairs = 0;
  for (std::size_t a = 0; a < idx.size() && rep.passed; ++a) {
    const auto& alpha = idx.multiset(a);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      ++pairs;
      auto lhs = engine.run(alpha, idx.multiset(b), true);
      bool rhs_zero = theta.entries[a].is_zero() || theta.entries[b].is_zero();
      if (!lhs && rhs_zero) continue;
      Scalar left = lhs ? *lhs * weight[b] : Scalar::zero(R);
      Scalar rhs = rhs_zero ? Scalar::zero(R) : scaled[a] * theta.entries[b];
      if (left != rhs) {
        rep.fail(Witness{{"x = " + basis_tuple(A, alpha), "y = " + basis_tuple(A, idx.multiset(b))},
                         "sum theta(x_i y_s(i)) = " + left.to_string() + ", d! theta(x) theta(y) = " + rhs.to_string()});
        break;
      }
    }
  }
  rep.counters["multiset_pairs"] = pairs;
  return rep;
}

VerificationReport check_linearized_composition(const FormedAlgebra& F) {
  return check_linearized_composition(F, polarize(F.form));
}

VerificationReport check_degree_equation(const FormedAlgebra& F, const TraceTower& tower,
                                         std::optional<std::uint64_t> budget) {
  unsigned d = F.degree();
  return check_identity(
      "degree-equation", F.algebra, 1,
      [&tower, d](const Algebra& B, const std::vector<Vec>& xs) {
        const Vec& x = xs[0];
        std::vector<Vec> powers{B.unit()};
        for (unsigned k = 1; k <= d; ++k) powers.push_back(B.multiply(powers.back(), x));
        Vec total = B.zero();
        for (unsigned i = 0; i <= d; ++i) {
          Scalar c = i == 0 ? Scalar::one(B.ring()) : tower.T[i](x);
          if (i % 2 == 1) c = -c;
          total = add(total, scale(c, powers[d - i]));
        }
        return total;
      },
      budget);
}

VerificationReport check_trace_form_associative(const FormedAlgebra& F, const TraceTower& tower) {
  const Algebra& A = F.algebra;
  std::size_t n = A.rank();
  VerificationReport rep;
  rep.check = "trace-form-associative";
  rep.method = Method::exhaustive;
  const ExactMatrix& G = tower.gram;
  for (std::size_t i = 0; i < n && rep.passed; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (G.at(i, j) != G.at(j, i)) {
        rep.fail(Witness{{A.label(i), A.label(j)}, "B is not symmetric"});
        break;
      }
  auto bilinear = [&](const std::vector<ProductTerm>& xy, std::size_t k, bool left) {
    Scalar s = Scalar::zero(A.ring());
    for (const ProductTerm& t : xy) {
      const Scalar& g = left ? G.at(t.index, k) : G.at(k, t.index);
      if (!g.is_zero()) s += t.coeff * g;
    }
    return s;
  };
  std::int64_t triples = 0;
  for (std::size_t i = 0; i < n && rep.passed; ++i)
    for (std::size_t j = 0; j < n && rep.passed; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ++triples;
        Scalar l = bilinear(A.product(i, j), k, true);
        Scalar r = bilinear(A.product(j, k), i, false);
        if (l != r) {
          rep.fail(Witness{{A.label(i), A.label(j), A.label(k)},
                           "B(xy, z) = " + l.to_string() + ", B(x, yz) = " + r.to_string()});
          break;
        }
      }
  rep.counters["triples"] = triples;
  return rep;
}

// ---------------------------------------------------------------------------
// Idempotents and factorization

VerificationReport idempotent_relations(const FormedAlgebra& F, const TraceTower& tower, const Vec& e) {
  const Algebra& A = F.algebra;
  Ring R = A.ring();
  unsigned d = F.degree();
  if (!lin_independent_with_unit(A, e))
    throw std::invalid_argument("idempotent_relations: 1 and e are linearly dependent");
  VerificationReport rep;
  rep.check = "idempotent";
  rep.method = Method::exhaustive;
  std::vector<Scalar> T;
  for (unsigned i = 0; i <= d; ++i) T.push_back(tower.T[i](e));
  unsigned m = d;
  while (m > 0 && T[m].is_zero()) --m;
  rep.counters["m"] = m;
  std::string values;
  for (unsigned i = 0; i <= d; ++i) values += (i ? ", " : "") + T[i].to_string();
  rep.detail = "m = " + std::to_string(m) + ", T_i(e) = [" + values + "]";
  std::string ein = A.format(e);
  for (unsigned j = 0; j < d; ++j) {
    Scalar lhs = Scalar::integer(R, j + 1) * T[j + 1];
    Scalar rhs = (T[1] - Scalar::integer(R, j)) * T[j];
    if (lhs != rhs)
      rep.fail(Witness{{ein}, "(j+1)T_{j+1}(e) != (T(e)-j)T_j(e) at j = " + std::to_string(j)});
  }
  for (unsigned i = 0; i <= d; ++i)
    if (T[i] != binomial(R, m, i))
      rep.fail(Witness{{ein}, "T_" + std::to_string(i) + "(e) = " + T[i].to_string() + " != C(m, i)"});
  Scalar ne = F.form(e);
  if (!ne.is_zero()) rep.fail(Witness{{ein}, "N(e) = " + ne.to_string()});
  if (T[1] != Scalar::integer(R, m)) rep.fail(Witness{{ein}, "T(e) = " + T[1].to_string() + " != m"});
  return rep;
}

namespace {

std::optional<unsigned> small_integer(const Scalar& s, unsigned max) {
  for (unsigned k = 0; k <= max; ++k)
    if (s == Scalar::integer(s.ring(), k)) return k;
  return std::nullopt;
}

}  // namespace

Factorization factor_over_decomposition(const FormedAlgebra& F, const TraceTower& tower,
                                        const std::vector<Vec>& idempotents) {
  const Algebra& A = F.algebra;
  Ring R = A.ring();
  std::size_t n = A.rank();
  unsigned d = F.degree();
  if (idempotents.size() < 2) throw std::invalid_argument("factor_over_decomposition: need at least two idempotents");
  Vec total = A.zero();
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    const Vec& e = idempotents[i];
    if (A.multiply(e, e) != e) throw std::invalid_argument("idempotent " + std::to_string(i) + " is not idempotent");
    if (is_zero_vec(e)) throw std::invalid_argument("idempotent " + std::to_string(i) + " is zero");
    if (!is_central(A, e)) throw std::invalid_argument("idempotent " + std::to_string(i) + " is not central");
    for (std::size_t j = 0; j < idempotents.size(); ++j)
      if (j != i && !is_zero_vec(A.multiply(e, idempotents[j])))
        throw std::invalid_argument("idempotents " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are not orthogonal");
    total = add(total, e);
  }
  if (total != A.unit()) throw std::invalid_argument("idempotents do not sum to 1");

  Factorization out;
  out.report.check = "factor";
  out.report.method = Method::symbolic;
  unsigned degree_sum = 0;
  for (std::size_t c = 0; c < idempotents.size(); ++c) {
    const Vec& e = idempotents[c];
    Subspace span(R, n);
    for (std::size_t j = 0; j < n; ++j) span.add(A.right_basis_multiply(e, j));
    const auto& basis = span.basis();
    std::size_t m = basis.size();
    std::vector<std::string> labels;
    for (const Vec& b : basis) {
      std::size_t nz = 0, pos = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (!b[k].is_zero()) ++nz, pos = k;
      labels.push_back(nz == 1 && b[pos].is_one() ? A.label(pos) : A.format(b));
    }
    auto coords = [&](const Vec& v) {
      auto c = span.coordinates(v);
      if (!c) throw std::logic_error("product leaves the ideal e A");
      return *c;
    };
    Algebra Ai(R, m, [&](std::size_t p, std::size_t q) { return coords(A.multiply(basis[p], basis[q])); }, coords(e),
               labels);
    // N_i(g) = N(g + 1 - e)
    Ring cr = coordinate_ring(R, m);
    Vec g(n, Scalar::zero(cr));
    Vec shift = sub(A.unit(), e);
    for (std::size_t k = 0; k < n; ++k) g[k] = embed(shift[k], cr);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t k = 0; k < n; ++k)
        if (!basis[p][k].is_zero()) g[k] += embed(basis[p][k], cr) * Scalar::variable(cr, p);
    Scalar Ni = F.form(g);
    auto deg = small_integer(trace_of(tower, e), d);
    std::string name = "component " + std::to_string(c + 1);
    if (!deg || *deg == 0) {
      out.report.fail(Witness{{A.format(e)}, name + ": T(e) = " + trace_of(tower, e).to_string() + " is not a degree"});
      return out;
    }
    bool homogeneous = true;
    for (const Term& t : Ni.terms())
      homogeneous = homogeneous && std::accumulate(t.exps.begin(), t.exps.end(), 0) == static_cast<int>(*deg);
    if (!homogeneous || Ni.is_zero()) {
      out.report.fail(Witness{{A.format(e)}, name + ": N_i is not homogeneous of degree " + std::to_string(*deg)});
      return out;
    }
    degree_sum += *deg;
    out.degrees.push_back(*deg);
    FormedAlgebra Fi = make_formed(std::move(Ai), make_form(R, m, *deg, Ni), F.tag + "/component" + std::to_string(c + 1));
    VerificationReport comp = check_composition(Fi);
    if (!comp.passed) {
      Witness w = comp.witness.value_or(Witness{});
      w.discrepancy = name + " fails composition: " + w.discrepancy;
      out.report.fail(w);
    }
    out.components.push_back(std::move(Fi));
  }
  std::string degs;
  for (auto k : out.degrees) degs += (degs.empty() ? "" : ", ") + std::to_string(k);
  out.report.detail = "degrees (" + degs + ")";
  if (degree_sum != d)
    out.report.fail(Witness{{}, "component degrees sum to " + std::to_string(degree_sum) + ", not " + std::to_string(d)});
  // N(x) = prod_i N(e_i x + 1 - e_i)
  VerificationReport prod = check_identity(
      "factor-product", A, 1, [&](const Algebra& B, const std::vector<Vec>& xs) {
        Scalar p = Scalar::one(B.ring());
        for (const Vec& e0 : idempotents) {
          Vec e(e0.size());
          for (std::size_t k = 0; k < e.size(); ++k) e[k] = embed(e0[k], B.ring());
          p *= F.form(add(B.multiply(e, xs[0]), sub(B.unit(), e)));
        }
        return std::vector<Scalar>{F.form(xs[0]) - p};
      });
  out.report.method = prod.method;
  for (const auto& [k, v] : prod.counters) out.report.counters[k] = v;
  if (!prod.passed) {
    Witness w = prod.witness.value_or(Witness{});
    w.discrepancy = "N != prod N_i: " + w.discrepancy;
    out.report.fail(w);
  }
  return out;
}

OrthogonalSplit orthogonal_split(const FormedAlgebra& F, const TraceTower& tower, const std::vector<Vec>& D) {
  const Algebra& A = F.algebra;
  Ring R = A.ring();
  std::size_t n = A.rank();
  const ExactMatrix& G = tower.gram;
  Subspace Dspan(R, n, D);
  const auto& Db = Dspan.basis();
  std::vector<Vec> functionals;  // rows d^T G
  for (const Vec& v : Db) {
    Vec row = zero_vec(R, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (!v[i].is_zero() && !G.at(i, j).is_zero()) row[j] += v[i] * G.at(i, j);
    functionals.push_back(std::move(row));
  }
  ExactMatrix restricted(R, Db.size(), Db.size());
  for (std::size_t a = 0; a < Db.size(); ++a)
    for (std::size_t b = 0; b < Db.size(); ++b) restricted.at(a, b) = dot(functionals[a], Db[b]);
  if (rank_over_fractions(restricted) != Db.size())
    throw std::invalid_argument("orthogonal_split: B restricted to D is degenerate");

  OrthogonalSplit out;
  out.report.check = "orthogonal-split";
  out.report.method = Method::exhaustive;
  out.perp = functionals.empty() ? [&] {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(A.basis(i));
    return all;
  }()
                                 : kernel_basis(ExactMatrix::from_rows(R, n, functionals));
  Subspace perp(R, n, out.perp);
  Subspace both = Dspan;
  for (const Vec& v : perp.basis()) both.add(v);
  out.report.detail = "dim D = " + std::to_string(Dspan.dimension()) + ", dim D^perp = " + std::to_string(perp.dimension());
  out.report.counters["dim_D"] = static_cast<std::int64_t>(Dspan.dimension());
  out.report.counters["dim_perp"] = static_cast<std::int64_t>(perp.dimension());
  if (Dspan.dimension() + perp.dimension() != n || both.dimension() != n)
    out.report.fail(Witness{{}, "A is not D + D^perp as a direct sum"});
  for (const Vec& x : Db)
    for (const Vec& y : perp.basis()) {
      if (!perp.contains(A.multiply(x, y)))
        out.report.fail(Witness{{A.format(x), A.format(y)}, "D D^perp not inside D^perp"});
      if (!perp.contains(A.multiply(y, x)))
        out.report.fail(Witness{{A.format(y), A.format(x)}, "D^perp D not inside D^perp"});
    }
  return out;
}

bool rank_admissible(unsigned d, std::size_t n) {
  static const std::vector<std::size_t> cubic{1, 2, 3, 5, 9};
  static const std::vector<std::size_t> quartic{1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16};
  if (d == 3) return std::find(cubic.begin(), cubic.end(), n) != cubic.end();
  if (d == 4) return std::find(quartic.begin(), quartic.end(), n) != quartic.end();
  throw std::invalid_argument("rank_admissible: only degrees 3 and 4 are covered");
}

// ---------------------------------------------------------------------------
// Specialization

FormedAlgebra specialize_formed(const FormedAlgebra& F, const Scalar& point) {
  Ring R = F.ring();
  if (R->kind() != RingKind::poly && R->kind() != RingKind::laurent)
    throw std::invalid_argument("specialization needs a polynomial or Laurent base ring, not " + R->name());
  Ring base = R->base();
  Scalar p = embed(point, base);
  if (R->kind() == RingKind::laurent && !p.try_invert())
    throw NotAUnit("specialization point " + R->variable() + " = " + p.to_string() + " is not a unit");
  std::map<std::string, Scalar> at{{R->variable(), p}};
  auto f = [&](const Scalar& s) { return specialize(s, at); };
  Scalar poly = map_coefficients(F.form.poly, coordinate_ring(base, F.rank()), f);
  auto params = F.params;
  params.emplace_back(R->variable(), p.to_string());
  FormedAlgebra out = make_formed(F.algebra.map_scalars(base, f), make_form(base, F.rank(), F.degree(), poly),
                                  F.tag, std::move(params));
  out.expect_nondegenerate = F.expect_nondegenerate;
  return out;
}

VerificationReport specialization_nondegeneracy(const FormedAlgebra& F, const std::vector<Scalar>& points) {
  VerificationReport rep;
  rep.check = "specialize";
  rep.method = Method::exhaustive;
  std::string shown;
  for (const Scalar& p : points) {
    FormedAlgebra Fp = specialize_formed(F, p);
    auto rad = radical(polarize(Fp.form));
    shown += (shown.empty() ? "" : ", ") + p.to_string();
    if (!rad.empty())
      rep.fail(Witness{{F.ring()->variable() + " = " + p.to_string()},
                       "radical of dimension " + std::to_string(rad.size()) + " contains " + Fp.algebra.format(rad[0])});
  }
  rep.counters["points"] = static_cast<std::int64_t>(points.size());
  rep.detail = "points [" + shown + "]";
  return rep;
}

}  // namespace compforms
