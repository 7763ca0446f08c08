#include "compforms/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace compforms {

// ---------------------------------------------------------------------------
// Ring descriptors

namespace {

constexpr int kMaxTowerHeight = 3;

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_compound(Ring r) {
  return r->kind() != RingKind::rationals && r->kind() != RingKind::prime_field;
}

}  // namespace

struct RingFactory {
  std::mutex mutex;
  std::unordered_map<std::string, std::unique_ptr<RingDescriptor>> rings;

  static RingFactory& instance() {
    static RingFactory f;
    return f;
  }

  Ring intern(std::unique_ptr<RingDescriptor> d) {
    std::lock_guard lock(mutex);
    auto it = rings.find(d->name_);
    if (it != rings.end()) return it->second.get();
    Ring r = d.get();
    rings.emplace(d->name_, std::move(d));
    return r;
  }

  static std::unique_ptr<RingDescriptor> make(RingKind kind) {
    auto d = std::unique_ptr<RingDescriptor>(new RingDescriptor());
    d->kind_ = kind;
    return d;
  }

  static void set_name(RingDescriptor& d, std::string name) { d.name_ = std::move(name); }
  static void set_prime(RingDescriptor& d, std::uint64_t p) { d.prime_ = p; }
  static void set_base(RingDescriptor& d, Ring b) { d.base_ = b; }
  static void set_variable(RingDescriptor& d, std::string v, std::size_t n) {
    d.variable_ = std::move(v);
    d.nvars_ = n;
  }
  static void set_quad(RingDescriptor& d, const Scalar& c) { d.quad_c_ = std::make_unique<Scalar>(c); }
};

bool RingDescriptor::is_field() const {
  switch (kind_) {
    case RingKind::rationals:
    case RingKind::prime_field:
      return true;
    case RingKind::quad_ext:
      return base_->is_field();
    default:
      return false;
  }
}

int RingDescriptor::height() const {
  switch (kind_) {
    case RingKind::rationals:
    case RingKind::prime_field:
      return 0;
    case RingKind::multi_poly:
      return base_->height();
    default:
      return base_->height() + 1;
  }
}

std::string RingDescriptor::variable_name(std::size_t i) const {
  if (kind_ == RingKind::multi_poly) return variable_ + std::to_string(i + 1);
  return variable_;
}

Ring rationals() {
  static Ring q = [] {
    auto d = RingFactory::make(RingKind::rationals);
    RingFactory::set_name(*d, "Q");
    return RingFactory::instance().intern(std::move(d));
  }();
  return q;
}

Ring prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("prime_field: modulus too large");
  auto d = RingFactory::make(RingKind::prime_field);
  RingFactory::set_prime(*d, p);
  RingFactory::set_name(*d, "F" + std::to_string(p));
  return RingFactory::instance().intern(std::move(d));
}

namespace {

void check_variable_name(const std::string& v) {
  if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
    throw std::invalid_argument("ring variable names must start with a letter: '" + v + "'");
  for (char ch : v)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      throw std::invalid_argument("invalid ring variable name '" + v + "'");
}

void check_height(Ring base) {
  if (base->kind() == RingKind::multi_poly)
    throw std::invalid_argument("multivariate polynomial rings cannot serve as a base ring");
  if (base->height() + 1 > kMaxTowerHeight)
    throw std::invalid_argument("ring tower height exceeds " + std::to_string(kMaxTowerHeight));
}

}  // namespace

Ring poly_ring(Ring base, std::string variable) {
  check_variable_name(variable);
  check_height(base);
  auto d = RingFactory::make(RingKind::poly);
  RingFactory::set_base(*d, base);
  RingFactory::set_name(*d, base->name() + "[" + variable + "]");
  RingFactory::set_variable(*d, std::move(variable), 1);
  return RingFactory::instance().intern(std::move(d));
}

Ring laurent_ring(Ring base, std::string variable) {
  check_variable_name(variable);
  check_height(base);
  auto d = RingFactory::make(RingKind::laurent);
  RingFactory::set_base(*d, base);
  RingFactory::set_name(*d, base->name() + "[" + variable + ",1/" + variable + "]");
  RingFactory::set_variable(*d, std::move(variable), 1);
  return RingFactory::instance().intern(std::move(d));
}

Ring quad_ext(const Scalar& c) {
  Ring base = c.ring();
  check_height(base);
  if (c.is_zero() || !c.try_invert()) throw std::invalid_argument("quad_ext: c must be a unit");
  if (base->kind() == RingKind::rationals) {
    const mpq_class& q = c.rational_value();
    if (sgn(q) > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t()))
      throw std::invalid_argument("quad_ext: " + c.to_string() + " is a square in Q");
  } else if (base->kind() == RingKind::prime_field) {
    std::uint64_t p = base->prime();
    if (p == 2 || pow_mod(c.residue(), (p - 1) / 2, p) == 1)
      throw std::invalid_argument("quad_ext: " + c.to_string() + " is a square in " + base->name());
  }
  auto d = RingFactory::make(RingKind::quad_ext);
  RingFactory::set_base(*d, base);
  RingFactory::set_quad(*d, c);
  RingFactory::set_name(*d, base->name() + "(sqrt(" + c.to_string() + "))");
  return RingFactory::instance().intern(std::move(d));
}

Ring multi_poly_ring(Ring base, std::size_t nvars, std::string prefix) {
  check_variable_name(prefix);
  if (base->kind() == RingKind::multi_poly)
    throw std::invalid_argument("multi_poly_ring: nested multivariate rings are not supported");
  if (nvars == 0) throw std::invalid_argument("multi_poly_ring: need at least one variable");
  auto d = RingFactory::make(RingKind::multi_poly);
  RingFactory::set_base(*d, base);
  RingFactory::set_name(*d, base->name() + "[" + prefix + "1.." + prefix + std::to_string(nvars) + "]");
  RingFactory::set_variable(*d, std::move(prefix), nvars);
  return RingFactory::instance().intern(std::move(d));
}

bool ring_contains(Ring r, Ring sub) {
  for (Ring cur = r; cur != nullptr; cur = cur->base())
    if (cur == sub) return true;
  return false;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Index of the parenthesis matching the '(' at `open`, or npos.
std::size_t matching_paren(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  return std::string_view::npos;
}

// Splits on `sep` occurring outside parentheses and brackets.
std::vector<std::string_view> split_top(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && s.substr(i, sep.size()) == sep) {
      parts.push_back(s.substr(start, i - start));
      i += sep.size() - 1;
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

bool wrapped_in_parens(std::string_view s) {
  return !s.empty() && s.front() == '(' && matching_paren(s, 0) == s.size() - 1;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s.empty()) throw std::invalid_argument(std::string("expected ") + std::string(what));
  std::uint64_t v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

}  // namespace

Ring parse_ring(std::string_view text) {
  text = trim(text);
  Ring r = nullptr;
  std::size_t pos = 0;
  if (!text.empty() && text[0] == 'Q') {
    r = rationals();
    pos = 1;
  } else if (!text.empty() && text[0] == 'F') {
    std::size_t end = 1;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    r = prime_field(parse_uint(text.substr(1, end - 1), "prime"));
    pos = end;
  } else {
    throw std::invalid_argument("unknown ring '" + std::string(text) + "'");
  }
  while (pos < text.size()) {
    if (text[pos] == '[') {
      std::size_t close = text.find(']', pos);
      if (close == std::string_view::npos) throw std::invalid_argument("unterminated '[' in ring");
      std::string inner(text.substr(pos + 1, close - pos - 1));
      if (auto dots = inner.find(".."); dots != std::string::npos) {
        std::string first = inner.substr(0, dots);
        std::string last = inner.substr(dots + 2);
        std::size_t split = first.size();
        while (split > 0 && std::isdigit(static_cast<unsigned char>(first[split - 1]))) --split;
        std::string prefix = first.substr(0, split);
        if (first.substr(split) != "1" || last.substr(0, prefix.size()) != prefix)
          throw std::invalid_argument("malformed multivariate ring '" + inner + "'");
        r = multi_poly_ring(r, parse_uint(last.substr(prefix.size()), "variable count"), prefix);
      } else if (auto comma = inner.find(','); comma != std::string::npos) {
        std::string var = inner.substr(0, comma);
        if (inner.substr(comma + 1) != "1/" + var)
          throw std::invalid_argument("malformed Laurent ring '" + inner + "'");
        r = laurent_ring(r, var);
      } else {
        r = poly_ring(r, inner);
      }
      pos = close + 1;
    } else if (text.substr(pos, 6) == "(sqrt(") {
      std::size_t close = matching_paren(text, pos);
      if (close == std::string_view::npos) throw std::invalid_argument("unterminated '(' in ring");
      std::string_view inner = text.substr(pos + 6, close - pos - 7);
      r = quad_ext(parse_scalar(r, inner));
      pos = close + 1;
    } else {
      throw std::invalid_argument("unexpected text in ring '" + std::string(text.substr(pos)) + "'");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Term budget

namespace {

struct BudgetState {
  bool active = false;
  std::uint64_t limit = 0;
  std::uint64_t used = 0;
};

thread_local BudgetState budget_state;

void charge_budget(std::uint64_t products) {
  if (!budget_state.active) return;
  budget_state.used += products;
  if (budget_state.used > budget_state.limit)
    throw BudgetExceeded("symbolic expansion exceeded " + std::to_string(budget_state.limit) + " monomial products");
}

}  // namespace

TermBudget::TermBudget(std::uint64_t limit)
    : prev_active_(budget_state.active), prev_limit_(budget_state.limit), prev_used_(budget_state.used) {
  budget_state = BudgetState{true, limit, 0};
}

TermBudget::~TermBudget() { budget_state = BudgetState{prev_active_, prev_limit_, prev_used_}; }

std::uint64_t TermBudget::used() const { return budget_state.used; }

// ---------------------------------------------------------------------------
// Scalars

bool grlex_before(const Exponents& x, const Exponents& y) {
  long dx = std::accumulate(x.begin(), x.end(), 0L);
  long dy = std::accumulate(y.begin(), y.end(), 0L);
  if (dx != dy) return dx > dy;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return x[i] > y[i];
  return false;
}

Scalar::Scalar() : ring_(rationals()), payload_(mpq_class(0)) {}
Scalar::Scalar(Ring r, mpq_class q) : ring_(r), payload_(std::move(q)) {}
Scalar::Scalar(Ring r, std::uint64_t residue) : ring_(r), payload_(residue) {}
Scalar::Scalar(Ring r, PolyData p) : ring_(r), payload_(std::move(p)) {}
Scalar::Scalar(Ring r, QuadData q) : ring_(r), payload_(std::move(q)) {}

Scalar Scalar::zero(Ring r) { return integer(r, 0); }
Scalar Scalar::one(Ring r) { return integer(r, 1); }

Scalar Scalar::integer(Ring r, long long v) { return from_mpz(r, mpz_class(static_cast<long>(v))); }

Scalar Scalar::from_mpz(Ring r, const mpz_class& v) {
  switch (r->kind()) {
    case RingKind::rationals:
      return Scalar(r, mpq_class(v));
    case RingKind::prime_field: {
      mpz_class m = v % mpz_class(static_cast<unsigned long>(r->prime()));
      if (m < 0) m += static_cast<unsigned long>(r->prime());
      return Scalar(r, static_cast<std::uint64_t>(m.get_ui()));
    }
    case RingKind::quad_ext:
      return Scalar(r, std::make_shared<const QuadPair>(QuadPair{from_mpz(r->base(), v), zero(r->base())}));
    default: {
      if (v == 0) return Scalar(r, PolyData{});
      Exponents e(r->variable_count(), 0);
      return Scalar(r, std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{e, from_mpz(r->base(), v)}}));
    }
  }
}

Scalar Scalar::rational(Ring r, const mpq_class& v) {
  Scalar num = from_mpz(r, v.get_num());
  if (v.get_den() == 1) return num;
  auto inv = from_mpz(r, v.get_den()).try_invert();
  if (!inv) throw NotAUnit("denominator " + v.get_den().get_str() + " is not a unit in " + r->name());
  return num * *inv;
}

Scalar Scalar::variable(Ring r, std::size_t i) {
  if (!r->is_polynomial_kind()) throw std::invalid_argument(r->name() + " has no variables");
  if (i >= r->variable_count()) throw std::out_of_range("variable index out of range");
  Exponents e(r->variable_count(), 0);
  e[i] = 1;
  return monomial(r, std::move(e), one(r->base()));
}

Scalar Scalar::monomial(Ring r, Exponents exps, const Scalar& coeff) {
  if (!r->is_polynomial_kind()) throw std::invalid_argument(r->name() + " is not a polynomial ring");
  if (coeff.ring() != r->base()) throw RingMismatch("monomial coefficient not in base ring");
  if (exps.size() != r->variable_count()) throw std::invalid_argument("exponent length mismatch");
  if (r->kind() != RingKind::laurent)
    for (auto e : exps)
      if (e < 0) throw std::invalid_argument("negative exponent outside a Laurent ring");
  if (coeff.is_zero()) return Scalar(r, PolyData{});
  return Scalar(r, std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{std::move(exps), coeff}}));
}

namespace {

// Sorts, merges equal monomials, drops zeros.
std::vector<Term> canonical_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_before(a.exps, b.exps); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return out;
}

}  // namespace

Scalar Scalar::from_terms(Ring r, std::vector<Term> terms) {
  if (!r->is_polynomial_kind()) throw std::invalid_argument(r->name() + " is not a polynomial ring");
  for (const Term& t : terms) {
    if (t.coeff.ring() != r->base()) throw RingMismatch("term coefficient not in " + r->base()->name());
    if (t.exps.size() != r->variable_count()) throw std::invalid_argument("exponent length mismatch");
    if (r->kind() != RingKind::laurent)
      for (auto e : t.exps)
        if (e < 0) throw std::invalid_argument("negative exponent outside a Laurent ring");
  }
  auto out = canonical_terms(std::move(terms));
  if (out.empty()) return Scalar(r, PolyData{});
  return Scalar(r, std::make_shared<const std::vector<Term>>(std::move(out)));
}

Scalar Scalar::quad(Ring r, Scalar a, Scalar b) {
  if (r->kind() != RingKind::quad_ext) throw std::invalid_argument(r->name() + " is not a quadratic extension");
  if (a.ring() != r->base() || b.ring() != r->base()) throw RingMismatch("quadratic components not in base ring");
  return Scalar(r, std::make_shared<const QuadPair>(QuadPair{std::move(a), std::move(b)}));
}

bool Scalar::is_zero() const {
  switch (ring_->kind()) {
    case RingKind::rationals:
      return sgn(std::get<mpq_class>(payload_)) == 0;
    case RingKind::prime_field:
      return std::get<std::uint64_t>(payload_) == 0;
    case RingKind::quad_ext: {
      const auto& q = std::get<QuadData>(payload_);
      return q->a.is_zero() && q->b.is_zero();
    }
    default: {
      const auto& p = std::get<PolyData>(payload_);
      return !p || p->empty();
    }
  }
}

bool Scalar::is_one() const { return *this == one(ring_); }

const mpq_class& Scalar::rational_value() const {
  if (ring_->kind() != RingKind::rationals) throw std::logic_error("not a rational scalar");
  return std::get<mpq_class>(payload_);
}

std::uint64_t Scalar::residue() const {
  if (ring_->kind() != RingKind::prime_field) throw std::logic_error("not a prime-field scalar");
  return std::get<std::uint64_t>(payload_);
}

std::span<const Term> Scalar::terms() const {
  if (!ring_->is_polynomial_kind()) throw std::logic_error("not a polynomial scalar");
  const auto& p = std::get<PolyData>(payload_);
  if (!p) return {};
  return {p->data(), p->size()};
}

const Scalar& Scalar::quad_a() const {
  if (ring_->kind() != RingKind::quad_ext) throw std::logic_error("not a quadratic scalar");
  return std::get<QuadData>(payload_)->a;
}

const Scalar& Scalar::quad_b() const {
  if (ring_->kind() != RingKind::quad_ext) throw std::logic_error("not a quadratic scalar");
  return std::get<QuadData>(payload_)->b;
}

namespace {

void require_same_ring(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring())
    throw RingMismatch("ring mismatch: " + a.ring()->name() + " vs " + b.ring()->name());
}

}  // namespace

Scalar Scalar::operator-() const {
  switch (ring_->kind()) {
    case RingKind::rationals:
      return Scalar(ring_, mpq_class(-std::get<mpq_class>(payload_)));
    case RingKind::prime_field: {
      std::uint64_t v = std::get<std::uint64_t>(payload_);
      return Scalar(ring_, v == 0 ? std::uint64_t{0} : ring_->prime() - v);
    }
    case RingKind::quad_ext:
      return quad(ring_, -quad_a(), -quad_b());
    default: {
      std::vector<Term> out;
      out.reserve(terms().size());
      for (const Term& t : terms()) out.push_back(Term{t.exps, -t.coeff});
      if (out.empty()) return *this;
      return Scalar(ring_, std::make_shared<const std::vector<Term>>(std::move(out)));
    }
  }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  Ring r = a.ring();
  switch (r->kind()) {
    case RingKind::rationals:
      return Scalar(r, mpq_class(a.rational_value() + b.rational_value()));
    case RingKind::prime_field: {
      std::uint64_t s = a.residue() + b.residue();
      if (s >= r->prime()) s -= r->prime();
      return Scalar(r, s);
    }
    case RingKind::quad_ext:
      return Scalar::quad(r, a.quad_a() + b.quad_a(), a.quad_b() + b.quad_b());
    default: {
      auto x = a.terms();
      auto y = b.terms();
      if (x.empty()) return b;
      if (y.empty()) return a;
      std::vector<Term> out;
      out.reserve(x.size() + y.size());
      std::size_t i = 0, j = 0;
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && grlex_before(x[i].exps, y[j].exps))) {
          out.push_back(x[i++]);
        } else if (i == x.size() || grlex_before(y[j].exps, x[i].exps)) {
          out.push_back(y[j++]);
        } else {
          Scalar c = x[i].coeff + y[j].coeff;
          if (!c.is_zero()) out.push_back(Term{x[i].exps, std::move(c)});
          ++i;
          ++j;
        }
      }
      if (out.empty()) return Scalar(r, Scalar::PolyData{});
      return Scalar(r, std::make_shared<const std::vector<Term>>(std::move(out)));
    }
  }
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  Ring r = a.ring();
  switch (r->kind()) {
    case RingKind::rationals:
      return Scalar(r, mpq_class(a.rational_value() * b.rational_value()));
    case RingKind::prime_field:
      return Scalar(r, mul_mod(a.residue(), b.residue(), r->prime()));
    case RingKind::quad_ext: {
      const Scalar& c = r->quad_c();
      return Scalar::quad(r, a.quad_a() * b.quad_a() + c * a.quad_b() * b.quad_b(),
                          a.quad_a() * b.quad_b() + a.quad_b() * b.quad_a());
    }
    default: {
      auto x = a.terms();
      auto y = b.terms();
      if (x.empty() || y.empty()) return Scalar(r, Scalar::PolyData{});
      if (r->kind() == RingKind::multi_poly) charge_budget(x.size() * y.size());
      std::vector<Term> prods;
      prods.reserve(x.size() * y.size());
      for (const Term& s : x) {
        for (const Term& t : y) {
          Scalar c = s.coeff * t.coeff;
          if (c.is_zero()) continue;
          Exponents e(s.exps.size());
          for (std::size_t k = 0; k < e.size(); ++k) e[k] = s.exps[k] + t.exps[k];
          prods.push_back(Term{std::move(e), std::move(c)});
        }
      }
      // A single factor term keeps the other operand's order; no re-sort needed.
      std::vector<Term> out = (x.size() == 1 || y.size() == 1) ? std::move(prods) : canonical_terms(std::move(prods));
      if (out.empty()) return Scalar(r, Scalar::PolyData{});
      return Scalar(r, std::make_shared<const std::vector<Term>>(std::move(out)));
    }
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring()) return false;
  switch (a.ring()->kind()) {
    case RingKind::rationals:
      return a.rational_value() == b.rational_value();
    case RingKind::prime_field:
      return a.residue() == b.residue();
    case RingKind::quad_ext:
      return a.quad_a() == b.quad_a() && a.quad_b() == b.quad_b();
    default: {
      auto x = a.terms();
      auto y = b.terms();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].exps != y[i].exps || x[i].coeff != y[i].coeff) return false;
      return true;
    }
  }
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result = one(ring_);
  Scalar base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::optional<Scalar> Scalar::try_invert() const {
  if (is_zero()) return std::nullopt;
  switch (ring_->kind()) {
    case RingKind::rationals:
      return Scalar(ring_, mpq_class(1 / rational_value()));
    case RingKind::prime_field:
      return Scalar(ring_, pow_mod(residue(), ring_->prime() - 2, ring_->prime()));
    case RingKind::quad_ext: {
      const Scalar& c = ring_->quad_c();
      Scalar norm = quad_a() * quad_a() - c * quad_b() * quad_b();
      auto inv = norm.try_invert();
      if (!inv) return std::nullopt;
      return quad(ring_, quad_a() * *inv, -quad_b() * *inv);
    }
    default: {
      auto ts = terms();
      if (ts.size() != 1) return std::nullopt;
      auto inv = ts[0].coeff.try_invert();
      if (!inv) return std::nullopt;
      Exponents e = ts[0].exps;
      if (ring_->kind() == RingKind::laurent) {
        for (auto& x : e) x = -x;
      } else {
        for (auto x : e)
          if (x != 0) return std::nullopt;
      }
      return monomial(ring_, std::move(e), *inv);
    }
  }
}

namespace {

Scalar shift_exponent(const Scalar& p, std::int32_t by) {
  std::vector<Term> out(p.terms().begin(), p.terms().end());
  for (auto& t : out) t.exps[0] += by;
  return Scalar::from_terms(p.ring(), std::move(out));
}

// Leading-term division for non-negative exponents.
std::optional<Scalar> divide_polynomial(const Scalar& a, const Scalar& b) {
  Ring r = a.ring();
  Scalar rem = a;
  std::vector<Term> quotient;
  const Term& lead_b = b.terms().front();
  while (!rem.is_zero()) {
    const Term& lead_r = rem.terms().front();
    Exponents e(lead_r.exps.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lead_r.exps[i] - lead_b.exps[i];
      if (e[i] < 0) return std::nullopt;
    }
    auto c = lead_r.coeff.exact_div(lead_b.coeff);
    if (!c) return std::nullopt;
    Scalar m = Scalar::monomial(r, e, *c);
    quotient.push_back(Term{std::move(e), std::move(*c)});
    rem = rem - m * b;
  }
  return Scalar::from_terms(r, std::move(quotient));
}

}  // namespace

std::optional<Scalar> Scalar::exact_div(const Scalar& b) const {
  require_same_ring(*this, b);
  if (b.is_zero()) return std::nullopt;
  if (is_zero()) return *this;
  switch (ring_->kind()) {
    case RingKind::rationals:
    case RingKind::prime_field:
      return *this * *b.try_invert();
    case RingKind::quad_ext: {
      const Scalar& c = ring_->quad_c();
      Scalar norm = b.quad_a() * b.quad_a() - c * b.quad_b() * b.quad_b();
      Scalar num = *this * quad(ring_, b.quad_a(), -b.quad_b());
      auto qa = num.quad_a().exact_div(norm);
      auto qb = num.quad_b().exact_div(norm);
      if (!qa || !qb) return std::nullopt;
      return quad(ring_, *qa, *qb);
    }
    case RingKind::laurent: {
      std::int32_t low_a = terms().back().exps[0];
      std::int32_t low_b = b.terms().back().exps[0];
      auto q = divide_polynomial(shift_exponent(*this, -low_a), shift_exponent(b, -low_b));
      if (!q) return std::nullopt;
      return shift_exponent(*q, low_a - low_b);
    }
    default:
      return divide_polynomial(*this, b);
  }
}

int Scalar::total_degree() const {
  if (!ring_->is_polynomial_kind()) return 0;
  int deg = 0;
  for (const Term& t : terms()) deg = std::max(deg, std::accumulate(t.exps.begin(), t.exps.end(), 0));
  return deg;
}

std::string Scalar::to_string() const {
  switch (ring_->kind()) {
    case RingKind::rationals:
      return rational_value().get_str();
    case RingKind::prime_field:
      return std::to_string(residue());
    case RingKind::quad_ext: {
      auto wrap = [&](const Scalar& s) {
        return is_compound(ring_->base()) ? "(" + s.to_string() + ")" : s.to_string();
      };
      std::string root = "*sqrt(" + ring_->quad_c().to_string() + ")";
      if (quad_b().is_zero()) return wrap(quad_a());
      if (quad_a().is_zero()) return wrap(quad_b()) + root;
      return wrap(quad_a()) + " + " + wrap(quad_b()) + root;
    }
    default: {
      auto ts = terms();
      if (ts.empty()) return "0";
      std::string out;
      bool compound = is_compound(ring_->base());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += " + ";
        out += compound ? "(" + ts[i].coeff.to_string() + ")" : ts[i].coeff.to_string();
        for (std::size_t v = 0; v < ts[i].exps.size(); ++v)
          if (ts[i].exps[v] != 0) out += "*" + ring_->variable_name(v) + "^" + std::to_string(ts[i].exps[v]);
      }
      return out;
    }
  }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {

long long parse_int(std::string_view s) {
  s = trim(s);
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s.remove_prefix(1);
  auto v = static_cast<long long>(parse_uint(s, "integer"));
  return neg ? -v : v;
}

std::size_t variable_index(Ring r, std::string_view name) {
  if (r->kind() == RingKind::multi_poly) {
    const std::string& prefix = r->variable();
    if (name.substr(0, prefix.size()) == prefix) {
      auto idx = parse_uint(name.substr(prefix.size()), "variable index");
      if (idx >= 1 && idx <= r->variable_count()) return idx - 1;
    }
  } else if (name == r->variable()) {
    return 0;
  }
  throw std::invalid_argument("unknown variable '" + std::string(name) + "' in " + r->name());
}

}  // namespace

Scalar parse_scalar(Ring r, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar text");
  switch (r->kind()) {
    case RingKind::rationals: {
      mpq_class q;
      if (q.set_str(std::string(text), 10) != 0) throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
      q.canonicalize();
      return Scalar::rational(r, q);
    }
    case RingKind::prime_field:
      return Scalar::integer(r, parse_int(text));
    case RingKind::quad_ext: {
      Ring base = r->base();
      auto unwrap = [&](std::string_view s) {
        s = trim(s);
        if (wrapped_in_parens(s)) s = s.substr(1, s.size() - 2);
        return parse_scalar(base, s);
      };
      Scalar a = Scalar::zero(base), b = Scalar::zero(base);
      for (auto part : split_top(text, " + ")) {
        part = trim(part);
        auto root = split_top(part, "*sqrt(");
        if (root.size() == 2) {
          b += unwrap(root[0]);
        } else {
          a += unwrap(part);
        }
      }
      return Scalar::quad(r, a, b);
    }
    default: {
      Ring base = r->base();
      if (text == "0") return Scalar::zero(r);
      std::vector<Term> terms;
      for (auto part : split_top(text, " + ")) {
        part = trim(part);
        std::string_view coeff_text, rest;
        if (!part.empty() && part[0] == '(') {
          std::size_t close = matching_paren(part, 0);
          if (close == std::string_view::npos) throw std::invalid_argument("unbalanced parentheses");
          coeff_text = part.substr(1, close - 1);
          rest = part.substr(close + 1);
        } else {
          std::size_t star = part.find('*');
          coeff_text = part.substr(0, star);
          rest = star == std::string_view::npos ? std::string_view{} : part.substr(star);
        }
        Exponents e(r->variable_count(), 0);
        while (!rest.empty()) {
          if (rest[0] != '*') throw std::invalid_argument("malformed monomial '" + std::string(part) + "'");
          rest.remove_prefix(1);
          std::size_t next = rest.find('*');
          std::string_view factor = rest.substr(0, next);
          rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next);
          std::size_t caret = factor.find('^');
          std::size_t idx = variable_index(r, factor.substr(0, caret));
          e[idx] += caret == std::string_view::npos ? 1 : static_cast<std::int32_t>(parse_int(factor.substr(caret + 1)));
        }
        terms.push_back(Term{std::move(e), parse_scalar(base, coeff_text)});
      }
      return Scalar::from_terms(r, std::move(terms));
    }
  }
}

Scalar embed(const Scalar& s, Ring target) {
  if (s.ring() == target) return s;
  if (target->kind() == RingKind::rationals || target->kind() == RingKind::prime_field || !ring_contains(target, s.ring()))
    throw RingMismatch("cannot embed " + s.ring()->name() + " into " + target->name());
  Scalar inner = embed(s, target->base());
  if (target->kind() == RingKind::quad_ext) return Scalar::quad(target, inner, Scalar::zero(target->base()));
  return Scalar::monomial(target, Exponents(target->variable_count(), 0), inner);
}

mpz_class binomial_integer(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Scalar binomial(Ring r, long long n, long long k) { return Scalar::from_mpz(r, binomial_integer(n, k)); }

std::optional<Scalar> factorial_unit(unsigned d, Ring r) {
  if (d == 0) throw std::invalid_argument("factorial_unit: d must be positive");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), d);
  return Scalar::from_mpz(r, f).try_invert();
}

Ring specialized_ring(Ring r) {
  if (!r->is_polynomial_kind()) throw std::invalid_argument(r->name() + " has no polynomial layer to specialize");
  return r->base();
}

Scalar specialize(const Scalar& a, const std::map<std::string, Scalar>& assignment) {
  Ring r = a.ring();
  if (r->kind() == RingKind::quad_ext) {
    Scalar c = specialize(r->quad_c(), assignment);
    Ring target = quad_ext(c);
    return Scalar::quad(target, specialize(a.quad_a(), assignment), specialize(a.quad_b(), assignment));
  }
  if (!r->is_polynomial_kind()) throw std::invalid_argument("specialize: " + r->name() + " has no variables");
  Ring base = r->base();
  std::vector<std::optional<Scalar>> values(r->variable_count());
  std::vector<std::optional<Scalar>> inverses(r->variable_count());
  auto value_of = [&](std::size_t i) -> const Scalar& {
    if (!values[i]) {
      auto it = assignment.find(r->variable_name(i));
      if (it == assignment.end())
        throw std::invalid_argument("specialize: no value for variable " + r->variable_name(i));
      values[i] = embed(it->second, base);
    }
    return *values[i];
  };
  Scalar out = Scalar::zero(base);
  for (const Term& t : a.terms()) {
    Scalar m = t.coeff;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      std::int32_t e = t.exps[i];
      if (e == 0) continue;
      if (e > 0) {
        m *= value_of(i).pow(static_cast<unsigned>(e));
      } else {
        if (!inverses[i]) {
          inverses[i] = value_of(i).try_invert();
          if (!inverses[i])
            throw NotAUnit("specialize: " + r->variable_name(i) + " = " + value_of(i).to_string() + " is not a unit");
        }
        m *= inverses[i]->pow(static_cast<unsigned>(-e));
      }
    }
    out += m;
  }
  return out;
}

Scalar substitute(const Scalar& p, std::span<const Scalar> values, Ring target) {
  Ring r = p.ring();
  if (r->kind() != RingKind::multi_poly) throw std::invalid_argument("substitute: expected a multivariate polynomial");
  if (values.size() != r->variable_count()) throw std::invalid_argument("substitute: wrong number of values");
  for (const Scalar& v : values)
    if (v.ring() != target) throw RingMismatch("substitute: value not in " + target->name());
  std::vector<std::vector<Scalar>> powers(values.size());
  auto power = [&](std::size_t i, std::int32_t e) -> const Scalar& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Scalar::one(target));
    while (static_cast<std::int32_t>(cache.size()) <= e) cache.push_back(cache.back() * values[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  Scalar out = Scalar::zero(target);
  for (const Term& t : p.terms()) {
    Scalar m = embed(t.coeff, target);
    for (std::size_t i = 0; i < t.exps.size() && !m.is_zero(); ++i)
      if (t.exps[i] != 0) m *= power(i, t.exps[i]);
    out += m;
  }
  return out;
}

}  // namespace compforms
