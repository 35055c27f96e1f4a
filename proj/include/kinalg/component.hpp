#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinalg/groebner.hpp"

namespace kinalg {

// Relations over a set of kept ("essential") variables, read off a Groebner
// basis by linear algebra on normal forms, and the component of a curve
// through a rational point.

namespace detail {

/// Monomials of degree <= D in the listed variables, largest first under
/// degrevlex on those variables.
inline std::vector<Monomial> monomials_upto(const Universe& u, const std::vector<std::size_t>& vars,
                                            unsigned D) {
  std::vector<Monomial> out;
  Monomial m(u->size());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
    if (k == vars.size()) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.set(vars[k], e);
      rec(k + 1, left - e);
    }
    m.set(vars[k], 0);
  };
  rec(0, D);
  auto order = MonomialOrder::degrevlex(u->size());
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return out;
}

/// Row space in reduced echelon form over Q; columns are dense indices.
struct QMatrix {
  std::vector<std::vector<Rational>> rows;
  std::size_t cols = 0;

  /// Reduces in place; returns pivot column per row.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t k = r;
      while (k < rows.size() && rows[k][c].is_zero()) ++k;
      if (k == rows.size()) continue;
      std::swap(rows[r], rows[k]);
      Rational inv = rows[r][c].inverse();
      for (auto& x : rows[r]) x *= inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c].is_zero()) continue;
        Rational f = rows[i][c];
        for (std::size_t j = c; j < cols; ++j)
          if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
      piv.push_back(c);
      ++r;
    }
    rows.resize(r);
    return piv;
  }
};

/// Kernel of the column map c -> sum c_j v_j, as reduced echelon rows.
inline std::vector<std::vector<Rational>> kernel_rref(
    const std::vector<std::map<Monomial, Rational>>& columns) {
  std::map<Monomial, std::size_t> rowix;
  for (auto& col : columns)
    for (auto& [m, c] : col) rowix.emplace(m, rowix.size());
  const std::size_t n = columns.size();
  QMatrix A;
  A.cols = n;
  A.rows.assign(rowix.size(), std::vector<Rational>(n, Rational(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (auto& [m, c] : columns[j]) A.rows[rowix[m]][j] = c;
  auto piv = A.rref();
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  QMatrix K;
  K.cols = n;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A.rows[r][f];
    K.rows.push_back(std::move(v));
  }
  K.rref();
  return K.rows;
}

inline std::map<Monomial, Rational> as_map(const Polynomial& p) {
  std::map<Monomial, Rational> out;
  for (auto& t : p.terms()) out.emplace(t.mono, t.coef);
  return out;
}

inline Polynomial combine(const Universe& u, const std::vector<Monomial>& monos,
                          const std::vector<Rational>& coefs, std::size_t offset = 0) {
  std::vector<Term> ts;
  for (std::size_t j = 0; j < monos.size(); ++j)
    if (!coefs[offset + j].is_zero()) ts.push_back({monos[j], coefs[offset + j]});
  return Polynomial::from_terms(u, std::move(ts));
}

inline std::vector<std::size_t> indices_of(const Universe& u, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (auto& n : names) out.push_back(u->index(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Polynomials in the kept variables of degree <= D lying in the ideal of G,
/// as a reduced echelon basis (leading monomial largest).
inline std::vector<Polynomial> kept_relations(const GroebnerBasis& G,
                                              const std::vector<std::string>& keep, unsigned D) {
  const Universe& u = G.universe();
  auto monos = detail::monomials_upto(u, detail::indices_of(u, keep), D);
  std::vector<std::map<Monomial, Rational>> cols;
  for (auto& m : monos) cols.push_back(detail::as_map(G.normal_form(Polynomial(u, m))));
  std::vector<Polynomial> out;
  for (auto& row : detail::kernel_rref(cols)) out.push_back(detail::combine(u, monos, row));
  return out;
}

/// L of degree <= D in the kept variables with target - L in the ideal, if any.
/// L is the solution supported off the pivots of the kept relations.
inline std::optional<Polynomial> relation_over(const GroebnerBasis& G, const Polynomial& target,
                                               const std::vector<std::string>& keep, unsigned D) {
  const Universe& u = G.universe();
  auto monos = detail::monomials_upto(u, detail::indices_of(u, keep), D);
  std::vector<std::map<Monomial, Rational>> cols;
  cols.push_back(detail::as_map(G.normal_form(target)));
  for (auto& m : monos) cols.push_back(detail::as_map(G.normal_form(Polynomial(u, m))));
  for (auto& row : detail::kernel_rref(cols)) {
    if (row[0].is_zero()) continue;
    std::vector<Rational> c(row.begin() + 1, row.end());
    return -detail::combine(u, monos, c);  // target = L
  }
  return std::nullopt;
}

// ---- certified lift structure -------------------------------------------------------

/// Every variable outside `keep` equals a polynomial in `keep` modulo the
/// elimination ideal.
struct LiftStructure {
  Universe keep_universe;
  GroebnerBasis elimination;                // degrevlex over keep_universe
  std::map<std::string, Polynomial> value;  // over keep_universe, reduced
};

/// Checks that <x - value(x), elimination> contains every generator of I
/// and that the point lies on it.
inline bool certify_lift(const IdealPresentation& I, const LiftStructure& L,
                         const std::map<std::string, Rational>& point) {
  std::map<std::string, Polynomial> bind = L.value;
  for (auto& n : L.keep_universe->names()) bind.emplace(n, Polynomial::variable(L.keep_universe, n));
  for (auto& g : I.generators) {
    auto s = g.substitute(bind, L.keep_universe);
    if (!L.elimination.contains(s)) return false;
  }
  for (auto& g : L.elimination.elements())
    if (!g.evaluate(point).is_zero()) return false;
  for (auto& [x, v] : L.value)
    if (!(v.evaluate(point) == point.at(x))) return false;
  return true;
}

/// The lift structure read from a basis of I by normal-form linear algebra,
/// trying degrees 1..max_degree. Empty when some variable is not a
/// polynomial in `keep` on V(I), or the certificate fails.
inline std::optional<LiftStructure> lift_structure(const GroebnerBasis& G,
                                                   const std::vector<std::string>& keep,
                                                   const std::map<std::string, Rational>& point,
                                                   unsigned max_degree = 6,
                                                   const GroebnerOptions& opts = {}) {
  const Universe& u = G.universe();
  Universe ku = sub_universe(u, keep);
  for (unsigned D = 1; D <= max_degree; ++D) {
    auto rels = kept_relations(G, keep, D);
    IdealPresentation J(ku, std::vector<Polynomial>{});
    for (auto& r : rels) J.add(r.embed(ku));
    LiftStructure L{ku, buchberger(J, MonomialOrder::degrevlex(ku->size()), opts), {}};
    bool ok = true;
    for (auto& n : u->names()) {
      if (ku->contains(n)) continue;
      auto r = relation_over(G, Polynomial::variable(u, n), keep, D);
      if (!r) {
        ok = false;
        break;
      }
      L.value[n] = L.elimination.normal_form(r->embed(ku));
    }
    if (ok && certify_lift(G.presentation(), L, point)) return L;
  }
  return std::nullopt;
}

// ---- local branch through a rational point ---------------------------------------

namespace detail::modp {

using u64 = std::uint64_t;
inline u64 mul(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
inline u64 add(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 sub(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
inline u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }
inline std::optional<u64> of(const Rational& q, u64 p) {
  unsigned long n = mpz_fdiv_ui(q.raw().get_num_mpz_t(), p);
  unsigned long d = mpz_fdiv_ui(q.raw().get_den_mpz_t(), p);
  if (d == 0) return std::nullopt;
  return mul(n, inv(d, p), p);
}

inline std::vector<u64> primes(std::size_t k) {
  std::vector<u64> out;
  mpz_class x = mpz_class(1) << 61;
  for (std::size_t i = 0; i < k; ++i) {
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    out.push_back(x.get_ui());
  }
  return out;
}

/// Rank-revealing elimination; returns row echelon of [A | I] style inverse
/// of the selected rows. A is m x n, rank n expected.
struct Solver {
  std::vector<std::size_t> rows;        // chosen rows of A
  std::vector<std::vector<u64>> inv;    // n x n inverse of A[rows]
};

inline std::optional<Solver> make_solver(const std::vector<std::vector<u64>>& A, std::size_t n,
                                         u64 p) {
  // pick independent rows greedily
  std::vector<std::vector<u64>> basis;  // reduced copies
  std::vector<std::size_t> pivcol;
  Solver s;
  for (std::size_t r = 0; r < A.size() && s.rows.size() < n; ++r) {
    auto v = A[r];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      u64 f = v[pivcol[k]];
      if (!f) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = sub(v[j], mul(f, basis[k][j], p), p);
    }
    std::size_t c = 0;
    while (c < n && !v[c]) ++c;
    if (c == n) continue;
    u64 iv = inv(v[c], p);
    for (auto& x : v) x = mul(x, iv, p);
    basis.push_back(v);
    pivcol.push_back(c);
    s.rows.push_back(r);
  }
  if (s.rows.size() < n) return std::nullopt;
  // invert the square matrix A[rows]
  std::vector<std::vector<u64>> M(n, std::vector<u64>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M[i][j] = A[s.rows[i]][j];
    M[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t k = c;
    while (k < n && !M[k][c]) ++k;
    if (k == n) return std::nullopt;
    std::swap(M[c], M[k]);
    u64 iv = inv(M[c][c], p);
    for (auto& x : M[c]) x = mul(x, iv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || !M[i][c]) continue;
      u64 f = M[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) M[i][j] = sub(M[i][j], mul(f, M[c][j], p), p);
    }
  }
  s.inv.assign(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.inv[i][j] = M[i][n + j];
  return s;
}

struct ModPoly {
  std::vector<std::pair<u64, Monomial>> terms;
};

using Series = std::vector<u64>;

inline Series smul(const Series& a, const Series& b, std::size_t len, u64 p) {
  Series r(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j)
      if (b[j]) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
  }
  return r;
}

inline Series eval(const ModPoly& f, const std::vector<Series>& x, std::size_t len, u64 p) {
  Series out(len, 0);
  for (auto& [c, m] : f.terms) {
    Series t(len, 0);
    t[0] = c;
    for (std::size_t v = 0; v < x.size(); ++v)
      for (unsigned e = 0; e < m[v]; ++e) t = smul(t, x[v], len, p);
    for (std::size_t i = 0; i < len; ++i) out[i] = add(out[i], t[i], p);
  }
  return out;
}

/// Kernel of an N x M matrix over F_p in reduced echelon form (rows of length M).
inline std::vector<std::vector<u64>> kernel_rref(std::vector<std::vector<u64>> A, std::size_t M,
                                                 u64 p) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M && r < A.size(); ++c) {
    std::size_t k = r;
    while (k < A.size() && !A[k][c]) ++k;
    if (k == A.size()) continue;
    std::swap(A[r], A[k]);
    u64 iv = inv(A[r][c], p);
    for (auto& x : A[r]) x = mul(x, iv, p);
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == r || !A[i][c]) continue;
      u64 f = A[i][c];
      for (std::size_t j = 0; j < M; ++j) A[i][j] = sub(A[i][j], mul(f, A[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(M, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<u64>> K;
  for (std::size_t f = 0; f < M; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(M, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = sub(0, A[i][f], p);
    K.push_back(std::move(v));
  }
  // reduced echelon of the kernel rows
  std::size_t rr = 0;
  for (std::size_t c = 0; c < M && rr < K.size(); ++c) {
    std::size_t k = rr;
    while (k < K.size() && !K[k][c]) ++k;
    if (k == K.size()) continue;
    std::swap(K[rr], K[k]);
    u64 iv = inv(K[rr][c], p);
    for (auto& x : K[rr]) x = mul(x, iv, p);
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (i == rr || !K[i][c]) continue;
      u64 f = K[i][c];
      for (std::size_t j = 0; j < M; ++j) K[i][j] = sub(K[i][j], mul(f, K[rr][j], p), p);
    }
    ++rr;
  }
  return K;
}

inline std::optional<Rational> reconstruct(const mpz_class& a, const mpz_class& m) {
  // find r/s with r = s a mod m, |r|, s <= sqrt(m/2)
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpq_class v(r1, s1);
  v.canonicalize();
  return Rational(v);
}

}  // namespace detail::modp

/// The component of V(I) through a rational point on a curve, read from a
/// power-series branch at that point: kept relations and lift values found
/// modulo several primes, reconstructed over Q and certified exactly.
/// `I` must be one-dimensional and smooth at the point.
inline std::optional<LiftStructure> branch_lift_structure(
    const IdealPresentation& I, const std::vector<std::string>& keep,
    const std::map<std::string, Rational>& point, unsigned max_degree = 5,
    const GroebnerOptions& opts = {}) {
  using namespace detail::modp;
  const Universe& u = I.universe;
  const std::size_t n = u->size();
  Universe ku = sub_universe(u, keep);
  auto keep_idx = detail::indices_of(u, keep);
  auto primes_list = primes(24);
  for (unsigned D = 2; D <= max_degree; ++D) {
    auto monos = detail::monomials_upto(u, keep_idx, D);
    const std::size_t M = monos.size();
    const std::size_t N = std::max<std::size_t>(2 * M + 16, 10 * D + 20);
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i)
      if (!std::binary_search(keep_idx.begin(), keep_idx.end(), i)) others.push_back(i);

    // per prime: J rows (over monos) and one row per other variable
    struct PrimeResult {
      u64 p;
      std::vector<std::vector<u64>> J;
      std::vector<std::vector<u64>> L;  // [other][M]
    };
    std::vector<PrimeResult> results;
    std::vector<mpz_class> crt;  // flattened
    mpz_class modulus = 1;
    std::optional<std::vector<std::size_t>> shape;
    std::optional<LiftStructure> last;

    for (u64 p : primes_list) {
      // point mod p
      std::vector<u64> x0(n);
      bool bad = false;
      for (std::size_t i = 0; i < n; ++i) {
        auto v = of(point.at(u->name(i)), p);
        if (!v) bad = true;
        else x0[i] = *v;
      }
      std::vector<ModPoly> F;
      for (auto& g : I.generators) {
        ModPoly f;
        for (auto& t : g.terms()) {
          auto c = of(t.coef, p);
          if (!c) bad = true;
          else if (*c) f.terms.push_back({*c, t.mono});
        }
        F.push_back(std::move(f));
      }
      if (bad) continue;
      // Jacobian at the point
      std::vector<std::vector<u64>> Jac(F.size(), std::vector<u64>(n, 0));
      for (std::size_t r = 0; r < F.size(); ++r)
        for (auto& [c, m] : F[r].terms)
          for (std::size_t v = 0; v < n; ++v) {
            if (!m[v]) continue;
            u64 val = mul(c, m[v] % p, p);
            for (std::size_t w = 0; w < n; ++w) {
              unsigned e = m[w] - (w == v ? 1 : 0);
              if (e) val = mul(val, pow(x0[w], e, p), p);
            }
            Jac[r][v] = add(Jac[r][v], val, p);
          }
      // parameter: first kept variable whose removal leaves full rank
      std::optional<Solver> S;
      std::size_t tvar = n;
      std::vector<std::size_t> cols;
      for (auto t : keep_idx) {
        cols.clear();
        for (std::size_t i = 0; i < n; ++i)
          if (i != t) cols.push_back(i);
        std::vector<std::vector<u64>> A(F.size(), std::vector<u64>(n - 1));
        for (std::size_t r = 0; r < F.size(); ++r)
          for (std::size_t j = 0; j < n - 1; ++j) A[r][j] = Jac[r][cols[j]];
        S = make_solver(A, n - 1, p);
        if (S) {
          tvar = t;
          break;
        }
      }
      if (!S) return std::nullopt;  // singular point or wrong dimension
      std::vector<Series> x(n, Series(N, 0));
      for (std::size_t i = 0; i < n; ++i) x[i][0] = x0[i];
      x[tvar][1] = 1;
      for (std::size_t k = 1; k < N; ++k) {
        std::vector<u64> rhs(n - 1);
        for (std::size_t i = 0; i < n - 1; ++i) rhs[i] = eval(F[S->rows[i]], x, k + 1, p)[k];
        for (std::size_t j = 0; j < n - 1; ++j) {
          u64 acc = 0;
          for (std::size_t i = 0; i < n - 1; ++i) acc = add(acc, mul(S->inv[j][i], rhs[i], p), p);
          x[cols[j]][k] = sub(x[cols[j]][k], acc, p);
        }
      }
      // monomial series
      std::vector<Series> ms;
      for (auto& m : monos) {
        ModPoly f;
        f.terms.push_back({1, m});
        ms.push_back(eval(f, x, N, p));
      }
      PrimeResult pr{p, {}, {}};
      {
        std::vector<std::vector<u64>> A(N, std::vector<u64>(M));
        for (std::size_t r = 0; r < N; ++r)
          for (std::size_t j = 0; j < M; ++j) A[r][j] = ms[j][r];
        pr.J = kernel_rref(A, M, p);
      }
      bool complete = true;
      for (auto o : others) {
        std::vector<std::vector<u64>> A(N, std::vector<u64>(M + 1));
        for (std::size_t r = 0; r < N; ++r) {
          A[r][0] = x[o][r];
          for (std::size_t j = 0; j < M; ++j) A[r][j + 1] = ms[j][r];
        }
        auto K = kernel_rref(A, M + 1, p);
        if (K.empty() || K[0][0] != 1) {
          complete = false;
          break;
        }
        pr.L.push_back(std::vector<u64>(K[0].begin() + 1, K[0].end()));
      }
      if (!complete) break;  // raise the degree

      // shape: pivot positions of J, to reject unlucky primes
      std::vector<std::size_t> sh;
      for (auto& row : pr.J) {
        std::size_t c = 0;
        while (!row[c]) ++c;
        sh.push_back(c);
      }
      if (!shape) shape = sh;
      else if (*shape != sh) continue;

      // CRT accumulate
      std::vector<u64> flat;
      for (auto& row : pr.J) flat.insert(flat.end(), row.begin(), row.end());
      for (auto& row : pr.L) flat.insert(flat.end(), row.begin(), row.end());
      if (crt.empty()) {
        for (auto v : flat) crt.push_back(mpz_class(static_cast<unsigned long>(v)));
        modulus = mpz_class(static_cast<unsigned long>(p));
      } else {
        mpz_class P(static_cast<unsigned long>(p));
        mpz_class minv;
        mpz_class mm = modulus % P;
        mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), P.get_mpz_t());
        for (std::size_t i = 0; i < flat.size(); ++i) {
          mpz_class a = crt[i] % P;
          mpz_class d = (mpz_class(static_cast<unsigned long>(flat[i])) - a) % P;
          if (d < 0) d += P;
          mpz_class t = (d * minv) % P;
          crt[i] += modulus * t;
        }
        modulus *= P;
      }
      // reconstruct and certify
      std::vector<Rational> q;
      bool ok = true;
      for (auto& a : crt) {
        auto r = reconstruct(a, modulus);
        if (!r) {
          ok = false;
          break;
        }
        q.push_back(*r);
      }
      if (!ok) continue;
      std::size_t pos = 0;
      IdealPresentation J(ku, std::vector<Polynomial>{});
      for (std::size_t r = 0; r < pr.J.size(); ++r, pos += M)
        J.add(detail::combine(u, monos, q, pos).embed(ku));
      LiftStructure L{ku, buchberger(J, MonomialOrder::degrevlex(ku->size()), opts), {}};
      for (auto o : others) {
        L.value[u->name(o)] =
            L.elimination.normal_form(-detail::combine(u, monos, q, pos).embed(ku));
        pos += M;
      }
      if (certify_lift(I, L, point)) return L;
    }
  }
  return std::nullopt;
}

}  // namespace kinalg
