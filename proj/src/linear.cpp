#include "compforms/linear.hpp"

#include <stdexcept>

namespace compforms {

ExactMatrix::ExactMatrix(Ring r, std::size_t rows, std::size_t cols)
    : ring_(r), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(r)) {}

ExactMatrix ExactMatrix::from_rows(Ring r, std::size_t cols, const std::vector<Vec>& rows) {
  ExactMatrix m(r, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: row width mismatch");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j].ring() != r) throw RingMismatch("from_rows: entry not in " + r->name());
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

Vec ExactMatrix::row(std::size_t i) const {
  return Vec(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Vec ExactMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vec out(rows_, Scalar::zero(ring_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

namespace {

Scalar divide_exactly(const Scalar& a, const Scalar& b) {
  auto q = a.exact_div(b);
  if (!q) throw std::logic_error("fraction-free elimination produced an inexact division");
  return *q;
}

}  // namespace

EchelonForm fraction_free_gauss_jordan(ExactMatrix m) {
  Ring r = m.ring();
  Scalar prev = Scalar::one(r);
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t i = pivot_row; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        found = i;
        break;
      }
    if (found == m.rows()) continue;
    if (found != pivot_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(found, j), m.at(pivot_row, j));
    Scalar p = m.at(pivot_row, col);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row) continue;
      Scalar factor = m.at(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == col) continue;
        Scalar v = p * m.at(i, j);
        if (!factor.is_zero() && !m.at(pivot_row, j).is_zero()) v -= factor * m.at(pivot_row, j);
        m.at(i, j) = v.is_zero() || prev.is_one() ? v : divide_exactly(v, prev);
      }
      m.at(i, col) = Scalar::zero(r);
    }
    pivots.push_back(col);
    prev = p;
    ++pivot_row;
  }
  return EchelonForm{std::move(m), std::move(pivots), prev};
}

std::size_t rank_over_fractions(const ExactMatrix& m) { return fraction_free_gauss_jordan(m).pivot_columns.size(); }

std::vector<Vec> kernel_basis(const ExactMatrix& m) {
  Ring r = m.ring();
  EchelonForm ef = fraction_free_gauss_jordan(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), Scalar::zero(r));
    v[f] = ef.pivot;
    for (std::size_t i = 0; i < ef.pivot_columns.size(); ++i) v[ef.pivot_columns[i]] = -ef.reduced.at(i, f);
    if (r->is_field()) {
      Scalar inv = *ef.pivot.try_invert();
      for (auto& x : v) x *= inv;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> solve_homogeneous_system(Ring r, std::size_t width, const std::vector<Vec>& constraints) {
  Subspace rows(r, width);
  for (const Vec& c : constraints) {
    if (c.size() != width) throw std::invalid_argument("solve_homogeneous_system: row width mismatch");
    if (rows.dimension() == width) break;
    rows.add(c);
  }
  return kernel_basis(ExactMatrix::from_rows(r, width, rows.basis()));
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Ring r, std::size_t ambient) : ring_(r), ambient_(ambient) {}

Subspace::Subspace(Ring r, std::size_t ambient, const std::vector<Vec>& vectors) : Subspace(r, ambient) {
  for (const Vec& v : vectors) add(v);
}

void Subspace::reduce(Vec& v, Vec& combo, Scalar& s) const {
  bool field = ring_->is_field();
  for (const Row& row : rows_) {
    Scalar f = v[row.pivot];
    if (f.is_zero()) continue;
    const Scalar& p = row.v[row.pivot];
    if (field) {
      // rows over a field are monic at the pivot
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!row.v[j].is_zero()) v[j] -= f * row.v[j];
      for (std::size_t j = 0; j < row.combo.size(); ++j)
        if (!row.combo[j].is_zero()) combo[j] -= f * row.combo[j];
    } else {
      for (std::size_t j = 0; j < ambient_; ++j) v[j] = p * v[j] - f * row.v[j];
      for (std::size_t j = 0; j < combo.size(); ++j)
        combo[j] = p * combo[j] - (j < row.combo.size() ? f * row.combo[j] : Scalar::zero(ring_));
      s *= p;
    }
  }
}

bool Subspace::add(const Vec& v) {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::add: dimension mismatch");
  Vec cur = v;
  Vec combo(basis_.size(), Scalar::zero(ring_));
  Scalar s = Scalar::one(ring_);
  reduce(cur, combo, s);
  std::size_t pivot = ambient_;
  for (std::size_t j = 0; j < ambient_; ++j)
    if (!cur[j].is_zero()) {
      pivot = j;
      break;
    }
  if (pivot == ambient_) return false;
  combo.push_back(s);
  if (ring_->is_field()) {
    Scalar inv = *cur[pivot].try_invert();
    for (auto& x : cur) x *= inv;
    for (auto& x : combo) x *= inv;
  }
  for (Row& row : rows_) row.combo.push_back(Scalar::zero(ring_));
  rows_.push_back(Row{std::move(cur), std::move(combo), pivot});
  basis_.push_back(v);
  return true;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  Vec cur = v;
  Vec combo(basis_.size(), Scalar::zero(ring_));
  Scalar s = Scalar::one(ring_);
  reduce(cur, combo, s);
  return is_zero_vec(cur);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  Vec cur = v;
  Vec combo(basis_.size(), Scalar::zero(ring_));
  Scalar s = Scalar::one(ring_);
  reduce(cur, combo, s);
  if (!is_zero_vec(cur)) return std::nullopt;
  // Now s*v + sum combo_i basis_i = 0.
  Vec out;
  out.reserve(combo.size());
  for (const Scalar& c : combo) {
    if (c.is_zero()) {
      out.push_back(c);
      continue;
    }
    auto q = (-c).exact_div(s);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

bool Subspace::contains_all(const Subspace& other) const {
  for (const Vec& v : other.basis())
    if (!contains(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Vec zero_vec(Ring r, std::size_t n) { return Vec(n, Scalar::zero(r)); }

Vec unit_vec(Ring r, std::size_t n, std::size_t i) {
  Vec v = zero_vec(r, n);
  v.at(i) = Scalar::one(r);
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const Scalar& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scale(const Scalar& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  if (a.empty()) throw std::invalid_argument("dot of empty vectors");
  Scalar out = Scalar::zero(a[0].ring());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  return out;
}

}  // namespace compforms
