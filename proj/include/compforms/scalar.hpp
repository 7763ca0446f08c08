#pragma once

// Exact scalars over a small tower of commutative rings: Q, F_p, univariate
// polynomial and Laurent rings, quadratic extensions and multivariate
// polynomial rings. Ring descriptors are interned, so two rings are equal
// iff their descriptor pointers are equal.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace compforms {

enum class RingKind { rationals, prime_field, poly, laurent, quad_ext, multi_poly };

class Scalar;
class RingDescriptor;
using Ring = const RingDescriptor*;

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised where an element must be a unit (d!, mu, a Laurent specialization point).
class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an active TermBudget runs out.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// While alive, caps the number of monomial products formed by multivariate
/// polynomial multiplication on the current thread. Budgets nest; the
/// innermost one is charged.
class TermBudget {
 public:
  explicit TermBudget(std::uint64_t limit);
  ~TermBudget();
  TermBudget(const TermBudget&) = delete;
  TermBudget& operator=(const TermBudget&) = delete;
  std::uint64_t used() const;

 private:
  bool prev_active_;
  std::uint64_t prev_limit_, prev_used_;
};

class RingDescriptor {
 public:
  RingKind kind() const { return kind_; }
  std::uint64_t prime() const { return prime_; }
  Ring base() const { return base_; }
  const std::string& variable() const { return variable_; }
  std::size_t variable_count() const { return nvars_; }
  const Scalar& quad_c() const { return *quad_c_; }
  const std::string& name() const { return name_; }

  bool is_polynomial_kind() const {
    return kind_ == RingKind::poly || kind_ == RingKind::laurent ||
           kind_ == RingKind::multi_poly;
  }
  bool is_field() const;
  /// Number of poly/Laurent/quadratic layers above the prime ring.
  int height() const;
  /// Name of the i-th variable (0-based) of a polynomial-kind ring.
  std::string variable_name(std::size_t i) const;

 private:
  friend struct RingFactory;
  RingKind kind_ = RingKind::rationals;
  std::uint64_t prime_ = 0;
  Ring base_ = nullptr;
  std::string variable_;
  std::size_t nvars_ = 0;
  std::unique_ptr<Scalar> quad_c_;
  std::string name_;
};

Ring rationals();
Ring prime_field(std::uint64_t p);
Ring poly_ring(Ring base, std::string variable = "t");
Ring laurent_ring(Ring base, std::string variable = "t");
/// Q(sqrt c) style extension of c.ring(); c must be a non-square unit
/// (verified for Q and F_p bases, trusted otherwise).
Ring quad_ext(const Scalar& c);
Ring multi_poly_ring(Ring base, std::size_t nvars, std::string prefix = "z");
/// Inverse of RingDescriptor::name(): "Q", "F7", "Q[t]", "Q[t,1/t]",
/// "Q(sqrt(5))", "Q[x1..x8]" and nestings thereof.
Ring parse_ring(std::string_view text);

/// Tower contains `sub` (sub is reachable from r through base()).
bool ring_contains(Ring r, Ring sub);

using Exponents = std::vector<std::int32_t>;

struct Term;
struct QuadPair;

class Scalar {
 public:
  /// Zero of Q.
  Scalar();

  static Scalar zero(Ring r);
  static Scalar one(Ring r);
  static Scalar integer(Ring r, long long v);
  static Scalar from_mpz(Ring r, const mpz_class& v);
  /// p/q embedded into r; throws NotAUnit when q is not invertible in r.
  static Scalar rational(Ring r, const mpq_class& v);
  /// The i-th variable of a polynomial-kind ring.
  static Scalar variable(Ring r, std::size_t i = 0);
  static Scalar monomial(Ring r, Exponents exps, const Scalar& coeff);
  /// Builds a canonical polynomial from arbitrary (unsorted, repeated, zero) terms.
  static Scalar from_terms(Ring r, std::vector<Term> terms);
  static Scalar quad(Ring r, Scalar a, Scalar b);

  Ring ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational_value() const;
  std::uint64_t residue() const;
  /// Terms of a polynomial-kind scalar, sorted descending in graded-lex order.
  std::span<const Term> terms() const;
  const Scalar& quad_a() const;
  const Scalar& quad_b() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(unsigned e) const;
  std::optional<Scalar> try_invert() const;
  /// a / b when b divides a in the ring; nullopt otherwise.
  std::optional<Scalar> exact_div(const Scalar& b) const;

  /// Deterministic text form, parseable by parse_scalar.
  std::string to_string() const;

  /// Largest total degree of a polynomial-kind scalar (0 for constants, -inf unused).
  int total_degree() const;

 private:
  using PolyData = std::shared_ptr<const std::vector<Term>>;
  using QuadData = std::shared_ptr<const QuadPair>;
  Scalar(Ring r, mpq_class q);
  Scalar(Ring r, std::uint64_t residue);
  Scalar(Ring r, PolyData p);
  Scalar(Ring r, QuadData q);

  Ring ring_;
  std::variant<mpq_class, std::uint64_t, PolyData, QuadData> payload_;
};

struct Term {
  Exponents exps;
  Scalar coeff;
};

struct QuadPair {
  Scalar a;
  Scalar b;
};

/// Descending graded-lex: true when x comes before y.
bool grlex_before(const Exponents& x, const Exponents& y);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar parse_scalar(Ring r, std::string_view text);

/// Image of s in `target`, whose tower must contain s.ring().
Scalar embed(const Scalar& s, Ring target);

/// Inverse of d! in r, or nullopt when d! is not a unit.
std::optional<Scalar> factorial_unit(unsigned d, Ring r);
mpz_class binomial_integer(long long n, long long k);
Scalar binomial(Ring r, long long n, long long k);

/// Evaluates the outermost polynomial layer of `a` at the assigned values
/// (keyed by variable name, values in the base ring). Throws
/// std::invalid_argument for a missing variable and NotAUnit for a non-unit
/// assigned to a Laurent variable.
Scalar specialize(const Scalar& a, const std::map<std::string, Scalar>& assignment);

/// Ring obtained from r by specializing its outermost polynomial layer.
Ring specialized_ring(Ring r);

/// Substitutes values[i] for the i-th variable of the multi_poly scalar p.
/// Coefficients of p are embedded into `target`, which must also be the
/// ring of every value.
Scalar substitute(const Scalar& p, std::span<const Scalar> values, Ring target);

/// Applies f to every coefficient of a polynomial-kind scalar, yielding a
/// polynomial over `target` (a polynomial-kind ring of the same shape).
template <class F>
Scalar map_coefficients(const Scalar& p, Ring target, F&& f) {
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const Term& t : p.terms()) out.push_back(Term{t.exps, f(t.coeff)});
  return Scalar::from_terms(target, std::move(out));
}

}  // namespace compforms
