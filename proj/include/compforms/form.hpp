#pragma once

// Forms of degree d on algebras: polarization, the trace tower, radicals and
// the verification suite for composition, linearized composition, the degree
// equation, idempotent relations and factorization over central idempotents.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compforms/algebra.hpp"

namespace compforms {

/// Polynomial ring x1..xn that carries forms on a rank-n algebra over r.
Ring coordinate_ring(Ring r, std::size_t n);

/// Homogeneous polynomial of degree d in the n coordinates.
struct DegreeForm {
  Ring ring;
  std::size_t rank;
  unsigned degree;
  Scalar poly;

  /// N(x) for coordinates in any ring containing `ring`.
  Scalar operator()(const Vec& x) const;
};

/// Checks shape and homogeneity.
DegreeForm make_form(Ring r, std::size_t n, unsigned d, Scalar poly);

/// Colex ranking of sorted multisets of size d drawn from {0..n-1}.
class MultisetIndex {
 public:
  MultisetIndex(std::size_t n, unsigned d);
  std::size_t size() const { return multisets_.size(); }
  std::size_t rank(const std::size_t* sorted) const;
  std::size_t rank(const std::vector<std::size_t>& sorted) const { return rank(sorted.data()); }
  const std::vector<std::size_t>& multiset(std::size_t r) const { return multisets_[r]; }
  std::size_t n() const { return n_; }
  unsigned d() const { return d_; }

 private:
  std::size_t n_;
  unsigned d_;
  std::vector<std::vector<std::size_t>> binom_;
  std::vector<std::vector<std::size_t>> multisets_;
};

/// The symmetric d-linear form of N, stored on sorted basis multi-indices.
struct SymmetricTensor {
  Ring ring;
  std::size_t rank;
  unsigned degree;
  MultisetIndex index;
  std::vector<Scalar> entries;

  const Scalar& at(const std::vector<std::size_t>& sorted) const { return entries[index.rank(sorted)]; }
};

SymmetricTensor polarize(const DegreeForm& N);
Scalar theta_eval(const SymmetricTensor& theta, const std::vector<Vec>& xs);

/// Number of orderings of a sorted multiset.
mpz_class multinomial(const std::vector<std::size_t>& sorted);

struct FormedAlgebra {
  Algebra algebra;
  DegreeForm form;
  std::string tag;
  std::vector<std::pair<std::string, std::string>> params;
  /// Whether the construction is expected to give a nondegenerate form.
  bool expect_nondegenerate = true;

  unsigned degree() const { return form.degree; }
  Ring ring() const { return algebra.ring(); }
  std::size_t rank() const { return algebra.rank(); }
};

/// Pairs an algebra with a form; checks ring, rank and that d! is a unit.
FormedAlgebra make_formed(Algebra A, DegreeForm N, std::string tag,
                          std::vector<std::pair<std::string, std::string>> params = {});
FormedAlgebra base_change(const FormedAlgebra& F, Ring target);

struct TraceTower {
  /// T[0] .. T[d]; T[0] = 1 and T[d] = N.
  std::vector<DegreeForm> T;
  /// Coefficients of the linear trace T = T[1].
  Vec trace;
  /// B(e_i, e_j) = T(e_i e_j).
  ExactMatrix gram;
};

TraceTower trace_tower(const FormedAlgebra& F, const SymmetricTensor& theta);
TraceTower trace_tower(const FormedAlgebra& F);
Scalar trace_of(const TraceTower& tower, const Vec& x);
/// (T(x)/d, x - (T(x)/d) 1); throws NotAUnit when d is not a unit.
std::pair<Scalar, Vec> trace_split(const FormedAlgebra& F, const TraceTower& tower, const Vec& x);

/// n x C(n+d-2, d-1) contraction matrix, transposed: rows are (d-1)-multisets.
ExactMatrix contraction_matrix(const SymmetricTensor& theta);
bool nondegenerate(const SymmetricTensor& theta);
std::vector<Vec> radical(const SymmetricTensor& theta);
std::vector<Vec> gram_radical(const TraceTower& tower);

struct Filtration {
  bool radical_is_ideal = false;
  std::vector<std::size_t> dims;
  /// Least k with rad^k = 0.
  std::optional<std::size_t> nilpotency_index;
};
Filtration radical_filtration(const FormedAlgebra& F, const SymmetricTensor& theta);
Filtration radical_filtration(const FormedAlgebra& F);

VerificationReport check_composition(const FormedAlgebra& F, std::optional<std::uint64_t> budget = std::nullopt);
VerificationReport check_linearized_composition(const FormedAlgebra& F, const SymmetricTensor& theta);
VerificationReport check_linearized_composition(const FormedAlgebra& F);
VerificationReport check_degree_equation(const FormedAlgebra& F, const TraceTower& tower,
                                         std::optional<std::uint64_t> budget = std::nullopt);
/// B(xy, z) = B(x, yz) on all basis triples, and B symmetric.
VerificationReport check_trace_form_associative(const FormedAlgebra& F, const TraceTower& tower);

/// The value m and the relations (j+1)T_{j+1}(e) = (T(e)-j)T_j(e),
/// T_i(e) = C(m, i), N(e) = 0, T(e) = m. Throws std::invalid_argument on
/// precondition failures.
VerificationReport idempotent_relations(const FormedAlgebra& F, const TraceTower& tower, const Vec& e);

struct Factorization {
  VerificationReport report;
  std::vector<FormedAlgebra> components;
  std::vector<unsigned> degrees;
};
/// Throws std::invalid_argument when the e_i are not orthogonal central
/// idempotents summing to 1.
Factorization factor_over_decomposition(const FormedAlgebra& F, const TraceTower& tower,
                                        const std::vector<Vec>& idempotents);

struct OrthogonalSplit {
  VerificationReport report;
  std::vector<Vec> perp;
};
/// Throws std::invalid_argument when B restricted to D is degenerate.
OrthogonalSplit orthogonal_split(const FormedAlgebra& F, const TraceTower& tower, const std::vector<Vec>& D);

/// Rank lists for nondegenerate cubic and quartic forms permitting composition.
bool rank_admissible(unsigned d, std::size_t n);

/// Specializes the outermost polynomial variable of F's ring at each point
/// and checks the radical vanishes. Throws NotAUnit for invalid points.
VerificationReport specialization_nondegeneracy(const FormedAlgebra& F, const std::vector<Scalar>& points);
FormedAlgebra specialize_formed(const FormedAlgebra& F, const Scalar& point);

}  // namespace compforms
