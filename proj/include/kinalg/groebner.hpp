#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "kinalg/error.hpp"
#include "kinalg/poly.hpp"

namespace kinalg {

/// A finite generating set. Zero generators are dropped on construction, so
/// an empty list presents the zero ideal.
struct IdealPresentation {
  Universe universe;
  std::vector<Polynomial> generators;

  IdealPresentation() = default;
  IdealPresentation(Universe u, std::vector<Polynomial> gens) : universe(std::move(u)) {
    for (auto& g : gens) add(std::move(g));
  }
  IdealPresentation(Universe u, const std::vector<std::string>& texts)
      : universe(std::move(u)) {
    for (auto& t : texts) add(Polynomial::parse(t, universe));
  }

  void add(Polynomial g) {
    if (g.is_zero()) return;
    if (!same_universe(g.universe(), universe))
      throw UniverseMismatch("generator lives in a different universe");
    generators.push_back(std::move(g));
  }
  std::size_t size() const { return generators.size(); }

  /// I + J.
  friend IdealPresentation operator+(const IdealPresentation& a,
                                     const IdealPresentation& b) {
    if (!same_universe(a.universe, b.universe))
      throw UniverseMismatch("ideal sum across universes");
    IdealPresentation r = a;
    for (auto& g : b.generators) r.add(g);
    return r;
  }
};

struct GroebnerOptions {
  /// Maximum number of S-pair reductions per call.
  std::size_t budget = default_budget();
  /// Reduce every input generator against the result and require zero.
  bool verify_membership = true;

  /// 10^6 unless KINALG_GB_BUDGET holds a positive integer.
  static std::size_t default_budget() {
    if (const char* env = std::getenv("KINALG_GB_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
  }
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
  std::size_t zero_reductions = 0;
};
namespace detail {

struct ZTerm {
  Monomial mono;
  mpz_class coef;
};

// Integer polynomial, terms strictly decreasing under one fixed order.
struct ZPoly {
  std::vector<ZTerm> terms;
  bool empty() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().mono; }
  const mpz_class& lc() const { return terms.front().coef; }
};

// Fraction-free reduction over the integers; every polynomial handed out
// is primitive with positive leading coefficient.
class Reducer {
 public:
  explicit Reducer(const MonomialOrder& order) : order_(order) {}

  /// Primitive integer multiple scale * p.
  ZPoly make(const Polynomial& p, mpq_class* scale = nullptr) const {
    auto ts = p.sorted_terms(order_);
    mpz_class l = 1;
    for (auto& t : ts) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.raw().get_den_mpz_t());
    ZPoly z;
    z.terms.reserve(ts.size());
    for (auto& t : ts) {
      mpz_class c = l / t.coef.raw().get_den();
      c *= t.coef.raw().get_num();
      z.terms.push_back({t.mono, std::move(c)});
    }
    mpq_class s(l);
    s /= make_primitive(z);
    if (scale) *scale = s;
    return z;
  }

  /// Divides by the signed content that leaves a positive leading
  /// coefficient; returns that divisor.
  static mpz_class make_primitive(ZPoly& p) {
    if (p.empty()) return 1;
    mpz_class g = 0;
    for (auto& t : p.terms) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      if (g == 1) break;
    }
    if (sgn(p.lc()) < 0) g = -g;
    if (g != 1)
      for (auto& t : p.terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
    return g;
  }

  /// p := a*p - b*m*g where the term of p at position s cancels the leading
  /// term of m*g.
  void step(ZPoly& p, std::size_t s, const mpz_class& a, const mpz_class& b, const Monomial& m,
            const ZPoly& g) const {
    std::vector<ZTerm> r;
    r.reserve(p.terms.size() + g.terms.size());
    bool scale = a != 1;
    for (std::size_t i = 0; i < s; ++i) {
      r.push_back(std::move(p.terms[i]));
      if (scale) r.back().coef *= a;
    }
    std::size_t i = s + 1, j = 1;
    auto& P = p.terms;
    const auto& G = g.terms;
    mpz_class tmp;
    while (i < P.size() && j < G.size()) {
      Monomial gm = G[j].mono * m;
      auto c = order_.compare(P[i].mono, gm);
      if (c > 0) {
        r.push_back(std::move(P[i++]));
        if (scale) r.back().coef *= a;
      } else if (c < 0) {
        tmp = b * G[j].coef;
        r.push_back({gm, -tmp});
        ++j;
      } else {
        tmp = b * G[j].coef;
        if (scale) P[i].coef *= a;
        P[i].coef -= tmp;
        if (sgn(P[i].coef) != 0) r.push_back(std::move(P[i]));
        ++i;
        ++j;
      }
    }
    for (; i < P.size(); ++i) {
      r.push_back(std::move(P[i]));
      if (scale) r.back().coef *= a;
    }
    for (; j < G.size(); ++j) {
      tmp = b * G[j].coef;
      r.push_back({G[j].mono * m, -tmp});
    }
    p.terms = std::move(r);
  }

  /// Reduces p by basis[active]; `full` also reduces the tail. The result is
  /// primitive and equals mult * p modulo the basis.
  ZPoly reduce(ZPoly p, const std::vector<ZPoly>& basis, const std::vector<std::size_t>& active,
               bool full = true, mpq_class* mult = nullptr) const {
    mpq_class mul = 1;
    std::size_t s = 0;
    unsigned since_content = 0;
    while (s < p.terms.size()) {
      const Monomial& t = p.terms[s].mono;
      const ZPoly* div = nullptr;
      for (auto k : active) {
        if (basis[k].lm().divides(t)) {
          div = &basis[k];
          break;
        }
      }
      if (!div) {
        if (!full) break;
        ++s;
        continue;
      }
      Monomial m = Monomial::quotient(t, div->lm());
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.terms[s].coef.get_mpz_t(), div->lc().get_mpz_t());
      mpz_class a = div->lc() / g;
      mpz_class b = p.terms[s].coef / g;
      step(p, s, a, b, m, *div);
      mul *= a;
      if (++since_content >= 4) {
        since_content = 0;
        mul /= make_primitive(p);
      }
    }
    mul /= make_primitive(p);
    if (mult) *mult = mul;
    return p;
  }

 private:
  const MonomialOrder& order_;
};

inline Polynomial to_monic_polynomial(const Universe& u, const ZPoly& p) {
  std::vector<Term> ts;
  ts.reserve(p.terms.size());
  mpz_class lc = p.empty() ? mpz_class(1) : p.lc();
  for (auto& t : p.terms) ts.push_back({t.mono, Rational(mpq_class(t.coef, lc))});
  return Polynomial::from_terms(u, std::move(ts));
}

}  // namespace detail

/// Reduced monic Groebner basis, elements sorted by leading monomial descending.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(Universe u, MonomialOrder order, std::vector<Polynomial> elems)
      : u_(std::move(u)), order_(std::move(order)), elems_(std::move(elems)) {
    detail::Reducer red(order_);
    for (auto& e : elems_) zbasis_.push_back(red.make(e));
    for (std::size_t k = 0; k < zbasis_.size(); ++k) all_.push_back(k);
  }

  const Universe& universe() const { return u_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  const Polynomial& operator[](std::size_t i) const { return elems_[i]; }

  bool is_unit() const { return elems_.size() == 1 && elems_[0].is_constant(); }
  bool is_zero_ideal() const { return elems_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (auto& e : elems_) out.push_back(e.leading_monomial(order_));
    return out;
  }

  Polynomial normal_form(const Polynomial& f) const {
    if (!same_universe(f.universe(), u_))
      throw UniverseMismatch("normal form across universes");
    detail::Reducer red(order_);
    mpq_class scale, mult;
    auto r = red.reduce(red.make(f, &scale), zbasis_, all_, true, &mult);
    mpq_class k = 1 / (scale * mult);
    Rational kr(k);
    std::vector<Term> ts;
    for (auto& t : r.terms) ts.push_back({t.mono, Rational(mpq_class(t.coef)) * kr});
    return Polynomial::from_terms(u_, std::move(ts));
  }
  bool contains(const Polynomial& f) const {
    if (!same_universe(f.universe(), u_))
      throw UniverseMismatch("normal form across universes");
    detail::Reducer red(order_);
    return red.reduce(red.make(f), zbasis_, all_).empty();
  }
  bool contains(const IdealPresentation& I) const {
    for (auto& g : I.generators)
      if (!contains(g)) return false;
    return true;
  }

  IdealPresentation presentation() const { return IdealPresentation(u_, elems_); }

  /// Same ideal, compared element-wise (reduced bases are unique per order).
  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.elems_ == b.elems_;
  }

 private:
  Universe u_;
  MonomialOrder order_;
  std::vector<Polynomial> elems_;
  std::vector<detail::ZPoly> zbasis_;
  std::vector<std::size_t> all_;
};

/// Buchberger's algorithm over primitive integer polynomials. Pairs are taken
/// by lcm degree, then by the order; Gebauer-Moeller criteria prune them.
inline GroebnerBasis buchberger(const IdealPresentation& I, const MonomialOrder& order,
                                const GroebnerOptions& opts = {},
                                GroebnerStats* stats_out = nullptr) {
  using detail::ZPoly;
  const Universe& u = I.universe;
  if (order.size() != u->size())
    throw UniverseMismatch("monomial order does not match the universe");
  detail::Reducer red(order);
  GroebnerStats stats;

  std::vector<ZPoly> polys;
  std::vector<bool> alive;
  std::vector<std::size_t> active;

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;

  auto refresh_active = [&] {
    active.clear();
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (alive[k]) active.push_back(k);
  };

  auto insert = [&](ZPoly h) {
    const std::size_t hi = polys.size();
    const Monomial t = h.lm();
    polys.push_back(std::move(h));
    alive.push_back(true);

    // Pairs (h, g) for every live g, pruned by the chain criterion among
    // themselves and by coprimality.
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!alive[g]) continue;
      const Monomial& lg = polys[g].lm();
      C.push_back({g, Monomial::lcm(t, lg), Monomial::coprime(t, lg)});
    }
    std::vector<Cand> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = 0; b < C.size() && keep; ++b) {
          if (b == a) continue;
          if (C[b].lcm.divides(C[a].lcm)) {
            // equal lcms: keep only the first occurrence, preferring a
            // coprime witness so the pair is dropped below
            if (C[b].lcm == C[a].lcm) {
              if (C[b].coprime || b < a) keep = false;
            } else {
              keep = false;
            }
          }
        }
      }
      if (keep) D.push_back(C[a]);
    }
    // Old pairs made redundant by h.
    std::erase_if(pairs, [&](const Pair& p) {
      if (!t.divides(p.lcm)) return false;
      Monomial li = Monomial::lcm(polys[p.i].lm(), t);
      Monomial lj = Monomial::lcm(polys[p.j].lm(), t);
      return !(li == p.lcm) && !(lj == p.lcm);
    });
    for (auto& c : D) {
      if (c.coprime) {
        ++stats.pairs_skipped;
        continue;
      }
      pairs.push_back({c.g, hi, c.lcm});
    }
    for (std::size_t g = 0; g < hi; ++g)
      if (alive[g] && t.divides(polys[g].lm())) alive[g] = false;
    refresh_active();
  };

  auto unit_found = [&](ZPoly h) {
    polys.clear();
    alive.clear();
    pairs.clear();
    h.terms.resize(1);
    h.terms[0].coef = 1;
    insert(std::move(h));
  };

  // Seed with the inter-reduced input, smallest leading monomial first.
  std::vector<ZPoly> input;
  for (auto& g : I.generators) {
    if (!same_universe(g.universe(), u))
      throw UniverseMismatch("generator lives in a different universe");
    input.push_back(red.make(g));
  }
  std::sort(input.begin(), input.end(), [&](const ZPoly& a, const ZPoly& b) {
    return order.greater(b.lm(), a.lm());
  });
  bool unit = false;
  for (auto& g : input) {
    ZPoly h = red.reduce(std::move(g), polys, active);
    if (h.empty()) continue;
    if (h.lm().is_one()) {
      unit_found(std::move(h));
      unit = true;
      break;
    }
    insert(std::move(h));
  }

  while (!unit && !pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      auto c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    if (stats.pairs_reduced >= opts.budget) throw BudgetExhausted(stats.pairs_reduced);
    ++stats.pairs_reduced;

    const ZPoly& f = polys[p.i];
    const ZPoly& g = polys[p.j];
    Monomial mf = Monomial::quotient(p.lcm, f.lm());
    Monomial mg = Monomial::quotient(p.lcm, g.lm());
    // S = lc(g)/d * mf*f - lc(f)/d * mg*g; leading terms cancel
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());
    mpz_class cf = g.lc() / d, cg = f.lc() / d;
    ZPoly s;
    s.terms.reserve(f.terms.size() + g.terms.size());
    s.terms.push_back({p.lcm, f.lc() * cf});
    for (std::size_t k = 1; k < f.terms.size(); ++k)
      s.terms.push_back({f.terms[k].mono * mf, f.terms[k].coef * cf});
    red.step(s, 0, 1, cg, mg, g);
    ZPoly h = red.reduce(std::move(s), polys, active);
    if (h.empty()) {
      ++stats.zero_reductions;
      continue;
    }
    if (h.lm().is_one()) {
      unit_found(std::move(h));
      break;
    }
    insert(std::move(h));
  }

  // Tail-reduce each element of the minimal basis against the others.
  std::vector<ZPoly> minimal;
  for (auto k : active) minimal.push_back(polys[k]);
  std::vector<ZPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<std::size_t> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(b);
    reduced.push_back(red.reduce(minimal[a], minimal, others));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const ZPoly& a, const ZPoly& b) {
    return order.greater(a.lm(), b.lm());
  });
  std::vector<Polynomial> elems;
  for (auto& r : reduced) elems.push_back(detail::to_monic_polynomial(u, r));
  GroebnerBasis G(u, order, std::move(elems));

  if (opts.verify_membership) {
    for (auto& g : I.generators)
      if (!G.contains(g))
        throw VerificationFailure("input generator does not reduce to zero: " +
                                  g.to_string());
  }
  if (stats_out) *stats_out = stats;
  return G;
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  return G.normal_form(f);
}

/// True iff the ideal is the whole ring.
inline bool is_trivial(const IdealPresentation& I, const GroebnerOptions& opts = {}) {
  for (auto& g : I.generators)
    if (g.is_constant()) return true;
  return buchberger(I, MonomialOrder::degrevlex(I.universe->size()), opts).is_unit();
}

/// Universe holding `names` in the precedence of `u`.
inline Universe sub_universe(const Universe& u, const std::vector<std::string>& names) {
  std::vector<std::string> kept;
  for (auto& n : u->names())
    if (std::find(names.begin(), names.end(), n) != names.end()) kept.push_back(n);
  for (auto& n : names)
    if (!u->contains(n)) throw InvalidArgument("unknown variable '" + n + "'");
  return make_universe(std::move(kept));
}

/// Elimination ideal I ∩ Q[kept variables] via a block order with the
/// dropped variables first. The result is the reduced basis under
/// `keep_kind` over the kept sub-universe.
inline GroebnerBasis eliminate_basis(const IdealPresentation& I,
                                     const std::vector<std::string>& drop,
                                     OrderKind keep_kind = OrderKind::degrevlex,
                                     const GroebnerOptions& opts = {}) {
  const Universe& u = I.universe;
  std::vector<std::size_t> drop_idx;
  std::vector<std::string> keep;
  for (auto& d : drop) drop_idx.push_back(u->index(d));
  for (std::size_t i = 0; i < u->size(); ++i)
    if (std::find(drop_idx.begin(), drop_idx.end(), i) == drop_idx.end())
      keep.push_back(u->name(i));
  auto order = MonomialOrder::elimination(drop_idx, u->size(), OrderKind::degrevlex,
                                          keep_kind);
  GroebnerBasis G = buchberger(I, order, opts);
  std::uint32_t drop_mask = 0;
  for (auto i : drop_idx) drop_mask |= 1u << i;
  Universe ku = make_universe(keep);
  std::vector<Polynomial> out;
  for (auto& g : G.elements())
    if ((g.support() & drop_mask) == 0) out.push_back(g.embed(ku));
  // already reduced under the restricted order; recompute defensively cheap
  return buchberger(IdealPresentation(ku, out), MonomialOrder::of_kind(keep_kind, ku->size()),
                    opts);
}

inline IdealPresentation eliminate(const IdealPresentation& I,
                                   const std::vector<std::string>& drop,
                                   OrderKind keep_kind = OrderKind::degrevlex,
                                   const GroebnerOptions& opts = {}) {
  return eliminate_basis(I, drop, keep_kind, opts).presentation();
}

/// I ∩ J by eliminating t from t*I + (1-t)*J.
inline IdealPresentation intersect(const IdealPresentation& I, const IdealPresentation& J,
                                   const GroebnerOptions& opts = {}) {
  if (!same_universe(I.universe, J.universe))
    throw UniverseMismatch("intersection across universes");
  const Universe& u = I.universe;
  std::string aux = "_t";
  while (u->contains(aux)) aux += "_";
  std::vector<std::string> names{aux};
  for (auto& n : u->names()) names.push_back(n);
  Universe tu = make_universe(names);
  Polynomial t = Polynomial::variable(tu, 0);
  Polynomial one_minus_t = Rational(1) - t;
  IdealPresentation K(tu, std::vector<Polynomial>{});
  for (auto& g : I.generators) K.add(t * g.embed(tu));
  for (auto& g : J.generators) K.add(one_minus_t * g.embed(tu));
  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i < tu->size(); ++i) rest.push_back(i);
  auto order = MonomialOrder::block({{OrderKind::lex, {0}}, {OrderKind::degrevlex, rest}},
                                    tu->size());
  GroebnerBasis G = buchberger(K, order, opts);
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : G.elements())
    if (g.degree_in(0) == 0) out.add(g.embed(u));
  return out;
}

/// I : x^inf, via elimination of y from I + <1 - y x>.
inline IdealPresentation saturate(const IdealPresentation& I, const std::string& var,
                                  const GroebnerOptions& opts = {}) {
  const Universe& u = I.universe;
  std::string aux = "_y";
  while (u->contains(aux)) aux += "_";
  std::vector<std::string> names{aux};
  for (auto& n : u->names()) names.push_back(n);
  Universe yu = make_universe(names);
  IdealPresentation K(yu, std::vector<Polynomial>{});
  for (auto& g : I.generators) K.add(g.embed(yu));
  K.add(Rational(1) - Polynomial::variable(yu, 0) * Polynomial::variable(yu, var));
  GroebnerBasis G = buchberger(K, MonomialOrder::elimination({0}, yu->size()), opts);
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : G.elements())
    if (g.degree_in(0) == 0) out.add(g.embed(u));
  return out;
}

/// A generating subset, added by ascending degree; greedy, not always minimum.
inline IdealPresentation minimal_generators(const IdealPresentation& I,
                                            const GroebnerOptions& opts = {}) {
  auto order = MonomialOrder::degrevlex(I.universe->size());
  std::vector<Polynomial> sorted = I.generators;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.total_degree() < b.total_degree();
  });
  // build up by degree, then drop any survivor the others already generate
  std::vector<Polynomial> gens;
  for (auto& g : sorted) {
    if (!gens.empty() && buchberger(IdealPresentation(I.universe, gens), order, opts).contains(g))
      continue;
    gens.push_back(g);
  }
  for (std::size_t k = gens.size(); k-- > 0;) {
    if (gens.size() <= 1) break;
    std::vector<Polynomial> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != k) rest.push_back(gens[j]);
    if (buchberger(IdealPresentation(I.universe, rest), order, opts).contains(gens[k]))
      gens = std::move(rest);
  }
  return IdealPresentation(I.universe, gens);
}

/// Equality of ideals via reduced degrevlex bases.
inline bool ideals_equal(const IdealPresentation& I, const IdealPresentation& J,
                         const GroebnerOptions& opts = {}) {
  auto o = MonomialOrder::degrevlex(I.universe->size());
  return buchberger(I, o, opts) == buchberger(J, o, opts);
}

/// Krull dimension from leading monomials: -1 for the unit ideal, otherwise
/// the size of a largest variable set containing no leading-monomial support.
inline int ideal_dimension(const GroebnerBasis& G) {
  if (G.is_unit()) return -1;
  const std::size_t n = G.universe()->size();
  std::vector<std::uint32_t> supports;
  for (auto& m : G.leading_monomials()) supports.push_back(m.support());
  int best = -1;
  std::function<void(std::size_t, std::uint32_t, int)> rec = [&](std::size_t i,
                                                                  std::uint32_t S, int cnt) {
    if (cnt + static_cast<int>(n - i) <= best) return;
    if (i == n) {
      best = cnt;
      return;
    }
    std::uint32_t S2 = S | (1u << i);
    bool ok = true;
    for (auto s : supports)
      if ((s & (1u << i)) && (s & ~S2) == 0) {
        ok = false;
        break;
      }
    if (ok) rec(i + 1, S2, cnt + 1);
    rec(i + 1, S, cnt);
  };
  rec(0, 0, 0);
  return best;
}

/// Rectangular matrix of polynomials over one universe.
class PolynomialMatrix {
 public:
  PolynomialMatrix(Universe u, std::size_t rows, std::size_t cols)
      : u_(std::move(u)), rows_(rows), cols_(cols), a_(rows * cols, Polynomial(u_)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Universe& universe() const { return u_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return a_.at(r * cols_ + c); }
  const Polynomial& operator()(std::size_t r, std::size_t c) const {
    return a_.at(r * cols_ + c);
  }

  Polynomial minor(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    return det(rs, cs);
  }

 private:
  // Laplace expansion along the first row.
  Polynomial det(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    if (rs.size() == 1) return (*this)(rs[0], cs[0]);
    if (rs.size() == 2)
      return (*this)(rs[0], cs[0]) * (*this)(rs[1], cs[1]) -
             (*this)(rs[0], cs[1]) * (*this)(rs[1], cs[0]);
    Polynomial sum(u_);
    std::vector<std::size_t> sub_r(rs.begin() + 1, rs.end());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Polynomial& e = (*this)(rs[0], cs[k]);
      if (e.is_zero()) continue;
      std::vector<std::size_t> sub_c;
      for (std::size_t l = 0; l < cs.size(); ++l)
        if (l != k) sub_c.push_back(cs[l]);
      Polynomial term = e * det(sub_r, sub_c);
      sum = (k % 2) ? sum - term : sum + term;
    }
    return sum;
  }

  Universe u_;
  std::size_t rows_, cols_;
  std::vector<Polynomial> a_;
};

inline PolynomialMatrix jacobian(const std::vector<Polynomial>& gens,
                                 const std::vector<std::string>& vars, const Universe& u) {
  PolynomialMatrix J(u, gens.size(), vars.size());
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t c = 0; c < vars.size(); ++c)
      J(r, c) = gens[r].partial_derivative(vars[c]);
  return J;
}
inline PolynomialMatrix jacobian(const IdealPresentation& I,
                                 const std::vector<std::string>& vars) {
  return jacobian(I.generators, vars, I.universe);
}
inline PolynomialMatrix jacobian(const IdealPresentation& I) {
  return jacobian(I.generators, I.universe->names(), I.universe);
}

namespace detail {
inline void combinations(std::size_t n, std::size_t k,
                         const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}
}  // namespace detail

/// Ideal of all m x m minors.
inline IdealPresentation fitting_ideal(const PolynomialMatrix& M, std::size_t m) {
  if (m < 1 || m > std::min(M.rows(), M.cols()))
    throw InvalidArgument("minor size " + std::to_string(m) + " out of range for a " +
                          std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                          " matrix");
  IdealPresentation I(M.universe(), std::vector<Polynomial>{});
  detail::combinations(M.rows(), m, [&](const std::vector<std::size_t>& rs) {
    detail::combinations(M.cols(), m, [&](const std::vector<std::size_t>& cs) {
      I.add(M.minor(rs, cs));
    });
  });
  return I;
}

struct RegularityReport {
  int dimension = -1;
  int codim = 0;
  bool is_regular = false;
  std::string note;
};

/// Jacobian criterion: with m = n - dim, the variety is regular when
/// I + F_m(J) is the unit ideal. Valid when I is prime.
inline RegularityReport regularity_check(const IdealPresentation& I, const MonomialOrder& order,
                                         const GroebnerOptions& opts = {}) {
  RegularityReport rep;
  rep.note = "criterion assumes the ideal is prime";
  GroebnerBasis G = buchberger(I, order, opts);
  rep.dimension = ideal_dimension(G);
  const int n = static_cast<int>(I.universe->size());
  if (rep.dimension < 0) {
    rep.codim = n + 1;
    rep.note = "unit ideal: empty variety";
    return rep;
  }
  rep.codim = n - rep.dimension;
  if (rep.codim == 0) {
    rep.is_regular = true;
    return rep;
  }
  PolynomialMatrix J = jacobian(I);
  if (static_cast<std::size_t>(rep.codim) > std::min(J.rows(), J.cols())) {
    rep.note = "fewer generators than the codimension";
    return rep;
  }
  IdealPresentation sum = I + fitting_ideal(J, static_cast<std::size_t>(rep.codim));
  rep.is_regular = is_trivial(sum, opts);
  return rep;
}
inline RegularityReport regularity_check(const IdealPresentation& I,
                                         const GroebnerOptions& opts = {}) {
  return regularity_check(I, MonomialOrder::degrevlex(I.universe->size()), opts);
}

/// Generator count equals codimension.
inline bool is_complete_intersection(const IdealPresentation& I, const GroebnerOptions& opts = {}) {
  GroebnerBasis G = buchberger(I, MonomialOrder::degrevlex(I.universe->size()), opts);
  int dim = ideal_dimension(G);
  if (dim < 0) return false;
  return static_cast<int>(I.size()) == static_cast<int>(I.universe->size()) - dim;
}

// ---- text format ---------------------------------------------------------
//
//   universe: a3, a1, b3, ...
//   order: lex
//   2*a2^2 + 2*a0^2 - 1
//   ...
// Blank lines and lines starting with '#' are ignored.

struct IdealFile {
  IdealPresentation ideal;
  std::optional<MonomialOrder> order;
};

inline IdealFile parse_ideal_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Universe u;
  std::optional<std::string> order_text;
  std::size_t order_line = 0;
  std::vector<std::pair<std::string, std::size_t>> body;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.rfind("universe:", 0) == 0) {
      std::vector<std::string> names;
      std::string rest = s.substr(9);
      std::stringstream ss(rest);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) names.push_back(tok);
      }
      try {
        u = make_universe(names);
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      continue;
    }
    if (s.rfind("order:", 0) == 0) {
      order_text = trim(s.substr(6));
      order_line = lineno;
      continue;
    }
    body.emplace_back(s, lineno);
  }
  if (!u) throw ParseError("missing 'universe:' header", lineno ? lineno : 1, 1);
  IdealFile f;
  f.ideal = IdealPresentation(u, std::vector<Polynomial>{});
  for (auto& [s, ln] : body) {
    try {
      f.ideal.add(Polynomial::parse(s, u));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), ln,
                       e.column);
    }
  }
  if (order_text) {
    try {
      f.order = MonomialOrder::parse(*order_text, *u);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), order_line, 1);
    }
  }
  return f;
}

inline IdealFile read_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ideal_text(ss.str());
}

inline std::string format_ideal(const IdealPresentation& I,
                                const std::optional<MonomialOrder>& order = std::nullopt) {
  std::ostringstream os;
  os << "universe: ";
  for (std::size_t i = 0; i < I.universe->size(); ++i)
    os << (i ? ", " : "") << I.universe->name(i);
  os << '\n';
  if (order) os << "order: " << order->describe(*I.universe) << '\n';
  for (auto& g : I.generators)
    os << (order ? g.to_string(*order) : g.to_string()) << '\n';
  return os.str();
}

inline std::string format_basis(const GroebnerBasis& G) {
  return format_ideal(G.presentation(), G.order());
}

/// Reduced bases of two ideals compared element by element under `order`.
struct BasisDiff {
  std::vector<std::string> missing;  // in the reference basis only
  std::vector<std::string> extra;    // in the computed basis only
  bool empty() const { return missing.empty() && extra.empty(); }
};

inline BasisDiff basis_diff(const IdealPresentation& computed, const IdealPresentation& reference,
                            const MonomialOrder& order, const GroebnerOptions& opts = {}) {
  IdealPresentation ref(computed.universe, std::vector<Polynomial>{});
  for (auto& g : reference.generators) ref.add(g.embed(computed.universe));
  auto A = buchberger(computed, order, opts);
  auto B = buchberger(ref, order, opts);
  std::set<std::string> a, b;
  for (auto& g : A.elements()) a.insert(g.to_string(order));
  for (auto& g : B.elements()) b.insert(g.to_string(order));
  BasisDiff d;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.missing));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.extra));
  return d;
}

}  // namespace kinalg
