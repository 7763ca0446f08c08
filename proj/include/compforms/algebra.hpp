#pragma once

// Unital nonassociative algebras that are free of finite rank over a base
// ring, given by structure constants e_i e_j = sum_k c_ijk e_k. Elements are
// plain coordinate vectors.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compforms/linear.hpp"
#include "compforms/report.hpp"
#include "compforms/scalar.hpp"

namespace compforms {

struct ProductTerm {
  std::size_t index;
  Scalar coeff;
};

class NotCentralIdempotent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Algebra {
 public:
  struct Entry {
    std::size_t i, j, k;
    Scalar coeff;
  };
  using ProductFn = std::function<Vec(std::size_t, std::size_t)>;

  /// `product(i, j)` gives the coordinates of e_i e_j. Throws
  /// std::invalid_argument when `unit` is not a two-sided identity.
  Algebra(Ring r, std::size_t n, const ProductFn& product, Vec unit, std::vector<std::string> labels = {});
  static Algebra from_entries(Ring r, std::size_t n, const std::vector<Entry>& entries, Vec unit,
                              std::vector<std::string> labels = {});

  Ring ring() const { return ring_; }
  std::size_t rank() const { return n_; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Sparse e_i e_j, sorted by index.
  const std::vector<ProductTerm>& product(std::size_t i, std::size_t j) const { return products_[i * n_ + j]; }
  Scalar constant(std::size_t i, std::size_t j, std::size_t k) const;
  /// Nonzero structure constants in (i, j, k) order.
  std::vector<Entry> entries() const;

  Vec basis(std::size_t i) const { return unit_vec(ring_, n_, i); }
  Vec zero() const { return zero_vec(ring_, n_); }
  Vec multiply(const Vec& x, const Vec& y) const;
  /// e_i x and x e_i.
  Vec left_basis_multiply(std::size_t i, const Vec& x) const;
  Vec right_basis_multiply(const Vec& x, std::size_t i) const;

  Algebra map_scalars(Ring target, const std::function<Scalar(const Scalar&)>& f) const;
  /// Base change along the inclusion of ring() into `target`.
  Algebra over(Ring target) const;
  std::string label(std::size_t i) const;
  std::string format(const Vec& x) const;

 private:
  Algebra() = default;
  void check_unit_law() const;

  Ring ring_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::vector<ProductTerm>> products_;
  Vec unit_;
  std::vector<std::string> labels_;
};

Vec associator(const Algebra& A, const Vec& x, const Vec& y, const Vec& z);
Vec commutator(const Algebra& A, const Vec& x, const Vec& y);

/// `count` generic elements with coordinates z_1 .. z_{count*n} over
/// MultiPoly(ring, count*n).
struct GenericElements {
  Ring ring;
  Algebra algebra;
  std::vector<Vec> elements;
};
GenericElements generic_elements(const Algebra& A, std::size_t count);

/// Residual of an identity; the identity holds when every returned scalar
/// is zero. Called either over generic elements or over sample points.
using IdentityFn = std::function<std::vector<Scalar>(const Algebra& over, const std::vector<Vec>& xs)>;

inline constexpr std::uint64_t kSampleSeed = 0x5EED;
inline constexpr int kSampleCount = 8;

/// Symbolic budget in monomial products: COMPFORMS_BUDGET or 10^6.
std::uint64_t symbolic_budget();

/// Checks residual == 0 for all `arity`-tuples of elements, symbolically
/// within the budget, else at deterministic sample points.
VerificationReport check_identity(const std::string& name, const Algebra& A, std::size_t arity,
                                  const IdentityFn& residual, std::optional<std::uint64_t> budget = std::nullopt);

VerificationReport check_alternative(const Algebra& A, std::optional<std::uint64_t> budget = std::nullopt);

/// A two-sided ideal, checked at construction.
class Ideal {
 public:
  Ideal(const Algebra& A, Subspace span);
  const Subspace& span() const { return span_; }
  std::size_t dimension() const { return span_.dimension(); }
  const std::vector<Vec>& basis() const { return span_.basis(); }

 private:
  Subspace span_;
};

bool is_two_sided_ideal(const Algebra& A, const Subspace& s);
Ideal ideal_closure(const Algebra& A, const std::vector<Vec>& generators);
Ideal ideal_product(const Algebra& A, const Ideal& I, const Ideal& J);

Algebra direct_sum(const Algebra& A1, const Algebra& A2);

/// Checks e central idempotent, e not 0 or 1; returns (eA, (1-e)A).
std::pair<Ideal, Ideal> split_by_idempotent(const Algebra& A, const Vec& e);
bool is_central(const Algebra& A, const Vec& x);

struct CenterNucleus {
  std::vector<Vec> center;
  std::vector<Vec> nucleus;
};
CenterNucleus center_and_nucleus(const Algebra& A);

/// Whether 1 and e are linearly independent; e must be an idempotent other than 0 and 1.
bool lin_independent_with_unit(const Algebra& A, const Vec& e);

}  // namespace compforms
