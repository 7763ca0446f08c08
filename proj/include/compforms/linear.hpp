#pragma once

// Exact linear algebra over the fraction field of a base ring. Elimination is
// fraction-free, so every intermediate entry stays in the ring.

#include <optional>
#include <vector>

#include "compforms/scalar.hpp"

namespace compforms {

using Vec = std::vector<Scalar>;

class ExactMatrix {
 public:
  ExactMatrix(Ring r, std::size_t rows, std::size_t cols);
  static ExactMatrix from_rows(Ring r, std::size_t cols, const std::vector<Vec>& rows);

  Ring ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Vec row(std::size_t i) const;
  ExactMatrix transpose() const;
  Vec apply(const Vec& v) const;

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  std::vector<Scalar> entries_;
};

/// Result of fraction-free Gauss-Jordan elimination: `reduced` has the pivot
/// columns equal to `pivot` times a unit vector, all pivots share one value.
struct EchelonForm {
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  Scalar pivot;
};

EchelonForm fraction_free_gauss_jordan(ExactMatrix m);
std::size_t rank_over_fractions(const ExactMatrix& m);
/// Right kernel over Frac(ring), one vector per free column with ring entries.
/// Over a field each vector is normalized to 1 in its free column.
std::vector<Vec> kernel_basis(const ExactMatrix& m);
/// Common kernel of the given constraint rows (each of length `width`).
std::vector<Vec> solve_homogeneous_system(Ring r, std::size_t width, const std::vector<Vec>& constraints);

/// Incrementally maintained span over Frac(ring).
class Subspace {
 public:
  Subspace(Ring r, std::size_t ambient);
  Subspace(Ring r, std::size_t ambient, const std::vector<Vec>& vectors);

  /// Adds v; true when the dimension grew.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dimension() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  Ring ring() const { return ring_; }
  /// The added vectors that enlarged the span, in insertion order.
  const std::vector<Vec>& basis() const { return basis_; }
  /// c with v = sum c_i basis()[i]; nullopt when v is outside the span or
  /// the coefficients are not in the ring.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains_all(const Subspace& other) const;
  bool operator==(const Subspace& other) const {
    return dimension() == other.dimension() && contains_all(other);
  }

 private:
  struct Row {
    Vec v;
    Vec combo;  // v = sum combo_i * basis_[i]
    std::size_t pivot;
  };
  // Reduces v against all rows, keeping v = s*original + sum combo_i basis_i.
  void reduce(Vec& v, Vec& combo, Scalar& scale) const;

  Ring ring_;
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<Row> rows_;
};

Vec zero_vec(Ring r, std::size_t n);
Vec unit_vec(Ring r, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
Scalar dot(const Vec& a, const Vec& b);

}  // namespace compforms
