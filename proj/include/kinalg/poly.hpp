#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kinalg/error.hpp"
#include "kinalg/monomial.hpp"
#include "kinalg/num.hpp"
#include "kinalg/order.hpp"

namespace kinalg {

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse polynomial over Q. Terms are stored sorted by descending plain
/// exponent-vector lex with no zero coefficients, so equal polynomials have
/// identical term vectors.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Universe u) : u_(std::move(u)) {}
  Polynomial(Universe u, const Rational& c) : u_(std::move(u)) {
    if (!c.is_zero()) terms_.push_back({Monomial(u_->size()), c});
  }
  Polynomial(Universe u, const Monomial& m, const Rational& c = 1)
      : u_(std::move(u)) {
    if (m.size() != u_->size()) throw UniverseMismatch("monomial width mismatch");
    if (!c.is_zero()) terms_.push_back({m, c});
  }

  static Polynomial variable(const Universe& u, std::string_view name) {
    return Polynomial(u, Monomial::variable(u->size(), u->index(name)));
  }
  static Polynomial variable(const Universe& u, std::size_t i) {
    return Polynomial(u, Monomial::variable(u->size(), i));
  }
  /// Builds from arbitrary terms; merges duplicates and drops zeros.
  static Polynomial from_terms(Universe u, std::vector<Term> terms) {
    Polynomial p(std::move(u));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }
  static Polynomial parse(std::string_view text, const Universe& u);

  const Universe& universe() const { return u_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return Rational(0);
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }
  /// Bitmask of variables that occur.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (auto& t : terms_) s |= t.mono.support();
    return s;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.mono > k; });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return Rational(0);
  }

  /// Terms sorted strictly decreasing under `order`.
  std::vector<Term> sorted_terms(const MonomialOrder& order) const {
    auto t = terms_;
    std::sort(t.begin(), t.end(), [&](const Term& x, const Term& y) {
      return order.greater(x.mono, y.mono);
    });
    return t;
  }
  const Term& leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw InvalidArgument("leading term of zero polynomial");
    const Term* best = &terms_[0];
    for (auto& t : terms_)
      if (order.greater(t.mono, best->mono)) best = &t;
    return *best;
  }
  const Monomial& leading_monomial(const MonomialOrder& order) const {
    return leading_term(order).mono;
  }
  const Rational& leading_coefficient(const MonomialOrder& order) const {
    return leading_term(order).coef;
  }
  Polynomial monic(const MonomialOrder& order) const {
    if (is_zero()) return *this;
    return *this * leading_coefficient(order).inverse();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    return merge(f, g, Rational(1));
  }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    return merge(f, g, Rational(-1));
  }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_same(f, g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.u_);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(f.size() * g.size());
    for (auto& a : f.terms_)
      for (auto& b : g.terms_) acc[a.mono * b.mono] += a.coef * b.coef;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) out.push_back({m, c});
    std::sort(out.begin(), out.end(),
              [](const Term& x, const Term& y) { return x.mono > y.mono; });
    Polynomial r(f.u_);
    r.terms_ = std::move(out);
    return r;
  }
  friend Polynomial operator*(const Polynomial& f, const Rational& c) {
    if (c.is_zero()) return Polynomial(f.u_);
    Polynomial r = f;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& f) { return f * c; }
  friend Polynomial operator+(const Polynomial& f, const Rational& c) {
    return f + Polynomial(f.u_, c);
  }
  friend Polynomial operator-(const Polynomial& f, const Rational& c) {
    return f - Polynomial(f.u_, c);
  }
  friend Polynomial operator+(const Rational& c, const Polynomial& f) { return f + c; }
  friend Polynomial operator-(const Rational& c, const Polynomial& f) {
    return Polynomial(f.u_, c) - f;
  }
  Polynomial operator/(const Rational& c) const { return *this * c.inverse(); }
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  /// Multiplies by c * m.
  Polynomial mul_term(const Monomial& m, const Rational& c) const {
    if (c.is_zero()) return Polynomial(u_);
    Polynomial r(u_);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;  // multiplication by a monomial preserves lex order
  }

  Polynomial pow(unsigned e) const {
    Polynomial r(u_, Rational(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
      if (!(f.terms_[i].mono == g.terms_[i].mono) ||
          !(f.terms_[i].coef == g.terms_[i].coef))
        return false;
    return f.terms_.empty() || same_universe(f.u_, g.u_);
  }

  Polynomial partial_derivative(std::size_t var) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
      unsigned e = t.mono[var];
      if (!e) continue;
      Monomial m = t.mono;
      m.set(var, e - 1);
      out.push_back({m, t.coef * Rational(static_cast<long>(e))});
    }
    return from_terms(u_, std::move(out));
  }
  Polynomial partial_derivative(std::string_view var) const {
    return partial_derivative(u_->index(var));
  }

  /// Replaces each bound variable by its image and maps every other variable
  /// by name into `target`. An unbound variable missing from `target` is an
  /// error.
  Polynomial substitute(const std::map<std::string, Polynomial>& bindings,
                        const Universe& target) const {
    const std::size_t n = u_->size();
    std::vector<const Polynomial*> image(n, nullptr);
    std::vector<Polynomial> owned(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = bindings.find(u_->name(i));
      if (it != bindings.end()) {
        if (!it->second.is_zero() && !same_universe(it->second.universe(), target))
          throw UniverseMismatch("binding for '" + u_->name(i) +
                                 "' lives in a different universe");
        owned[i] = it->second.is_zero() ? Polynomial(target) : it->second;
      } else {
        auto j = target->find(u_->name(i));
        if (!j) {
          if (degree_in(i) == 0) continue;
          throw InvalidArgument("variable '" + u_->name(i) +
                                "' is unbound and absent from the target universe");
        }
        owned[i] = variable(target, *j);
      }
      image[i] = &owned[i];
    }
    // cache powers per variable
    std::vector<std::vector<Polynomial>> powers(n);
    auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
      auto& pv = powers[i];
      if (pv.empty()) pv.push_back(Polynomial(target, Rational(1)));
      while (pv.size() <= e) pv.push_back(pv.back() * *image[i]);
      return pv[e];
    };
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (auto& t : terms_) {
      Polynomial prod(target, t.coef);
      for (std::size_t i = 0; i < n && !prod.is_zero(); ++i)
        if (t.mono[i]) prod = prod * power(i, t.mono[i]);
      for (auto& pt : prod.terms_) acc[pt.mono] += pt.coef;
    }
    std::vector<Term> out;
    for (auto& [m, c] : acc)
      if (!c.is_zero()) out.push_back({m, c});
    return from_terms(target, std::move(out));
  }
  Polynomial substitute(const std::map<std::string, Polynomial>& bindings) const {
    return substitute(bindings, u_);
  }
  Polynomial substitute(const std::map<std::string, Rational>& values) const {
    std::map<std::string, Polynomial> b;
    for (auto& [k, v] : values) b.emplace(k, Polynomial(u_, v));
    return substitute(b, u_);
  }

  /// Renames into another universe by variable name.
  Polynomial embed(const Universe& target) const {
    if (same_universe(u_, target)) {
      Polynomial r = *this;
      r.u_ = target;
      return r;
    }
    std::vector<std::size_t> map(u_->size(), kMaxVariables);
    std::uint32_t used = support();
    for (std::size_t i = 0; i < u_->size(); ++i) {
      auto j = target->find(u_->name(i));
      if (j) map[i] = *j;
      else if (used & (1u << i))
        throw UniverseMismatch("variable '" + u_->name(i) + "' not in target universe");
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      Monomial m(target->size());
      for (std::size_t i = 0; i < u_->size(); ++i)
        if (t.mono[i]) m.set(map[i], t.mono[i]);
      out.push_back({m, t.coef});
    }
    return from_terms(target, std::move(out));
  }

  /// Exact evaluation; every occurring variable must be bound.
  Rational evaluate(const std::map<std::string, Rational>& values) const {
    std::vector<const Rational*> v(u_->size(), nullptr);
    for (std::size_t i = 0; i < u_->size(); ++i) {
      auto it = values.find(u_->name(i));
      if (it != values.end()) v[i] = &it->second;
    }
    Rational sum(0);
    for (auto& t : terms_) {
      Rational p = t.coef;
      for (std::size_t i = 0; i < u_->size(); ++i) {
        if (!t.mono[i]) continue;
        if (!v[i]) throw InvalidArgument("unbound variable '" + u_->name(i) + "'");
        p *= v[i]->pow(t.mono[i]);
      }
      sum += p;
    }
    return sum;
  }

  /// Double evaluation with exact coefficients converted at use.
  double evaluate(const std::map<std::string, double>& values) const {
    std::vector<double> v(u_->size(), std::nan(""));
    std::vector<bool> bound(u_->size(), false);
    for (std::size_t i = 0; i < u_->size(); ++i) {
      auto it = values.find(u_->name(i));
      if (it != values.end()) {
        v[i] = it->second;
        bound[i] = true;
      }
    }
    double sum = 0;
    for (auto& t : terms_) {
      double p = t.coef.to_double();
      for (std::size_t i = 0; i < u_->size(); ++i) {
        if (!t.mono[i]) continue;
        if (!bound[i]) throw InvalidArgument("unbound variable '" + u_->name(i) + "'");
        p *= std::pow(v[i], static_cast<int>(t.mono[i]));
      }
      sum += p;
    }
    return sum;
  }

  /// Written with terms in degrevlex-descending order, e.g. "2*a2^2 + 2*a0^2 - 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    return to_string(MonomialOrder::degrevlex(u_->size()));
  }
  std::string to_string(const MonomialOrder& order) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : sorted_terms(order)) {
      Rational c = t.coef;
      if (first) {
        if (c.sign() < 0) os << '-';
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      c = c.abs();
      bool mono_one = t.mono.is_one();
      if (!c.is_one() || mono_one) {
        os << c.to_string();
        if (!mono_one) os << '*';
      }
      bool need_star = false;
      for (std::size_t i = 0; i < u_->size(); ++i) {
        unsigned e = t.mono[i];
        if (!e) continue;
        if (need_star) os << '*';
        os << u_->name(i);
        if (e > 1) os << '^' << e;
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << p.to_string();
  }

 private:
  static void check_same(const Polynomial& f, const Polynomial& g) {
    if (!same_universe(f.u_, g.u_))
      throw UniverseMismatch("polynomials live in different universes");
  }

  static Polynomial merge(const Polynomial& f, const Polynomial& g, const Rational& s) {
    check_same(f, g);
    Polynomial r(f.u_ ? f.u_ : g.u_);
    r.terms_.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
      if (j == g.size() || (i < f.size() && f.terms_[i].mono > g.terms_[j].mono)) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (i == f.size() || g.terms_[j].mono > f.terms_[i].mono) {
        r.terms_.push_back({g.terms_[j].mono, s * g.terms_[j].coef});
        ++j;
      } else {
        Rational c = f.terms_[i].coef + s * g.terms_[j].coef;
        if (!c.is_zero()) r.terms_.push_back({f.terms_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    for (auto& t : terms_)
      if (t.mono.size() != u_->size())
        throw UniverseMismatch("monomial width mismatch");
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.mono > y.mono; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) out.back().coef += t.coef;
      else out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coef.is_zero(); });
    terms_ = std::move(out);
  }

  Universe u_;
  std::vector<Term> terms_;
};

namespace detail {

// Recursive-descent parser for + - * / ^ ( ) over integers and identifiers.
// Division is only allowed by a nonzero constant.
class PolyParser {
 public:
  PolyParser(std::string_view s, Universe u) : s_(s), u_(std::move(u)) {}

  Polynomial run() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (eat('+')) p = p + term();
      else if (eat('-')) p = p - term();
      else return p;
    }
  }
  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        p = p * d.constant_term().inverse();
      } else {
        return p;
      }
    }
  }
  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Polynomial power() {
    Polynomial b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      if (st == pos_) fail("expected exponent");
      if (pos_ - st > 4) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(st, pos_ - st)))));
    }
    return b;
  }
  Polynomial atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (is_digit(c)) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        fail("decimal numbers are not accepted; use p/q");
      return Polynomial(u_, Rational(BigInteger::parse(s_.substr(st, pos_ - st))));
    }
    if (c == '.') fail("decimal numbers are not accepted; use p/q");
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(st, pos_ - st);
      auto idx = u_->find(name);
      if (!idx) {
        pos_ = st;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(u_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  Universe u_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text, const Universe& u) {
  return detail::PolyParser(text, u).run();
}

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Standard multivariate division: f = sum q_i d_i + r with no term of r
/// divisible by any leading monomial of the divisors.
inline DivisionResult multivariate_divide(const Polynomial& f,
                                          const std::vector<Polynomial>& divisors,
                                          const MonomialOrder& order) {
  const Universe& u = f.universe();
  std::vector<Term> lead;
  for (auto& d : divisors) {
    if (d.is_zero()) throw InvalidArgument("division by the zero polynomial");
    if (!same_universe(d.universe(), u))
      throw UniverseMismatch("divisor lives in a different universe");
    lead.push_back(d.leading_term(order));
  }
  DivisionResult res;
  std::vector<std::vector<Term>> q(divisors.size());
  std::vector<Term> rem;
  Polynomial p = f;
  while (!p.is_zero()) {
    Term lt = p.leading_term(order);
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!lead[i].mono.divides(lt.mono)) continue;
      Monomial m = Monomial::quotient(lt.mono, lead[i].mono);
      Rational c = lt.coef / lead[i].coef;
      q[i].push_back({m, c});
      p = p - divisors[i].mul_term(m, c);
      divided = true;
      break;
    }
    if (!divided) {
      rem.push_back(lt);
      p = p - Polynomial(u, lt.mono, lt.coef);
    }
  }
  for (auto& qi : q) res.quotients.push_back(Polynomial::from_terms(u, std::move(qi)));
  res.remainder = Polynomial::from_terms(u, std::move(rem));
  return res;
}

inline Polynomial poly_arith(const Polynomial& f, const Polynomial& g, ScalarOp op) {
  switch (op) {
    case ScalarOp::add: return f + g;
    case ScalarOp::sub: return f - g;
    case ScalarOp::mul: return f * g;
    case ScalarOp::div: break;
  }
  throw InvalidArgument("polynomial division is not a ring operation");
}

/// Unit multiple with coprime integer coefficients and a positive leading
/// coefficient under degrevlex.
inline Polynomial primitive(const Polynomial& f) {
  if (f.is_zero()) return f;
  mpz_class l = 1, g = 0;
  for (auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.raw().get_den_mpz_t());
  for (auto& t : f.terms()) {
    mpz_class n = t.coef.raw().get_num() * (l / t.coef.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational s{BigInteger(l), BigInteger(g)};
  if (f.leading_coefficient(MonomialOrder::degrevlex(f.universe()->size())).sign() < 0) s = -s;
  return f * s;
}

/// Convenience: parse several polynomials over one universe.
inline std::vector<Polynomial> parse_polys(const std::vector<std::string>& texts,
                                           const Universe& u) {
  std::vector<Polynomial> out;
  for (auto& t : texts) out.push_back(Polynomial::parse(t, u));
  return out;
}

}  // namespace kinalg
