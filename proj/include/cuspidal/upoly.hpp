#ifndef CUSPIDAL_UPOLY_HPP
#define CUSPIDAL_UPOLY_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

// Dense univariate polynomial over Z, low degree first, no high zero coefficients.
using ZCoeffs = std::vector<mpz_class>;

inline void ztrim(ZCoeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}
inline int zdeg(const ZCoeffs& c) { return static_cast<int>(c.size()) - 1; }

inline ZCoeffs zderiv(const ZCoeffs& p) {
  ZCoeffs d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  ztrim(d);
  return d;
}

inline mpz_class zcontent(const ZCoeffs& p) {
  mpz_class g(0);
  for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline void zdivexact_scalar(ZCoeffs& p, const mpz_class& d) {
  for (auto& c : p) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (r != 0) throw std::logic_error("zdivexact_scalar: not divisible");
    c = q;
  }
}

inline ZCoeffs zprimitive(ZCoeffs p) {
  ztrim(p);
  if (p.empty()) return p;
  mpz_class g = zcontent(p);
  if (sgn(p.back()) < 0) g = -g;
  zdivexact_scalar(p, g);
  return p;
}

// Remainder of a by b up to multiplication by powers of lc(b); content is
// stripped by the callers, so the exact scaling is irrelevant here.
inline ZCoeffs zprem(ZCoeffs a, const ZCoeffs& b) {
  int db = zdeg(b);
  if (db < 0) throw std::logic_error("zprem: zero divisor");
  const mpz_class& l = b.back();
  ztrim(a);
  while (zdeg(a) >= db) {
    int shift = zdeg(a) - db;
    mpz_class top = a.back();
    for (auto& c : a) c *= l;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(shift + j)] -= top * b[static_cast<size_t>(j)];
    ztrim(a);
  }
  return a;
}

// gcd via primitive Euclidean PRS; result primitive with positive lead.
inline ZCoeffs zgcd(ZCoeffs a, ZCoeffs b) {
  a = zprimitive(std::move(a));
  b = zprimitive(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (zdeg(a) < zdeg(b)) std::swap(a, b);
  while (!b.empty()) {
    ZCoeffs r = zprem(a, b);
    r = zprimitive(std::move(r));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Exact quotient a / b (throws if not exact), over Q scaled back to Z content-free.
inline ZCoeffs zdivexact(const ZCoeffs& a, const ZCoeffs& b) {
  if (b.empty()) throw std::logic_error("zdivexact: zero divisor");
  if (a.empty()) return {};
  int da = zdeg(a), db = zdeg(b);
  if (da < db) throw std::logic_error("zdivexact: not divisible");
  std::vector<Rational> rest(a.size());
  for (size_t i = 0; i < a.size(); ++i) rest[i] = Rational(mpz_class(a[i]));
  std::vector<Rational> q(static_cast<size_t>(da - db + 1), Rational(0));
  Rational lb{mpz_class(b.back())};
  for (int k = da - db; k >= 0; --k) {
    Rational c = rest[static_cast<size_t>(k + db)] / lb;
    q[static_cast<size_t>(k)] = c;
    if (!c.is_zero())
      for (int j = 0; j <= db; ++j)
        rest[static_cast<size_t>(k + j)] -= c * Rational(mpz_class(b[static_cast<size_t>(j)]));
  }
  for (int j = 0; j < db; ++j)
    if (!rest[static_cast<size_t>(j)].is_zero()) throw std::logic_error("zdivexact: remainder");
  // clear denominators (exactness of the division over Z is the caller's contract)
  mpz_class l(1);
  for (auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  ZCoeffs out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    Rational v = q[i] * Rational(l);
    if (!v.is_integer()) throw std::logic_error("zdivexact: non-integer quotient");
    out[i] = v.num();
  }
  if (l != 1) throw std::logic_error("zdivexact: quotient not integral");
  ztrim(out);
  return out;
}

inline ZCoeffs zsquarefree(const ZCoeffs& p0) {
  ZCoeffs p = zprimitive(p0);
  if (zdeg(p) <= 0) throw std::invalid_argument("squarefree: zero or constant");
  ZCoeffs g = zgcd(p, zderiv(p));
  if (zdeg(g) == 0) return p;
  return zprimitive(zdivexact(p, g));
}

inline Rational zeval(const ZCoeffs& p, const Rational& x) {
  Rational acc(0);
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + Rational(mpz_class(p[k]));
  return acc;
}

inline int zsign_at(const ZCoeffs& p, const Rational& x) { return zeval(p, x).sign(); }

// Clear denominators of a rational coefficient vector (low first).
inline ZCoeffs to_integer_coeffs(const RatVec& c) {
  mpz_class l(1);
  for (auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.den().get_mpz_t());
  ZCoeffs out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = mpz_class(c[i].num() * (l / c[i].den()));
  ztrim(out);
  return out;
}

namespace detail {

// Coefficients of p(x+1).
inline ZCoeffs taylor_shift1(ZCoeffs p) {
  int n = zdeg(p);
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) p[static_cast<size_t>(j)] += p[static_cast<size_t>(j) + 1];
  return p;
}

inline int sign_variations(const ZCoeffs& p) {
  int v = 0, last = 0;
  for (auto& c : p) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) {
      if (++v >= 2) return v;  // callers only distinguish 0, 1, many
    }
    last = s;
  }
  return v;
}

// Descartes bound for the number of roots in (0,1): variations of (x+1)^n p(1/(x+1)).
inline int descartes01(const ZCoeffs& p) {
  ZCoeffs r(p.rbegin(), p.rend());
  ztrim(r);
  return sign_variations(taylor_shift1(std::move(r)));
}

// p(x/2) * 2^n and p((x+1)/2) * 2^n.
inline ZCoeffs half_left(const ZCoeffs& p) {
  ZCoeffs q = p;
  int n = zdeg(q);
  mpz_class f(1);
  for (int k = n; k >= 0; --k) {
    q[static_cast<size_t>(k)] *= f;
    f <<= 1;
  }
  ztrim(q);
  return q;
}
inline ZCoeffs half_right(const ZCoeffs& p) { return taylor_shift1(half_left(p)); }

}  // namespace detail

// Synthetic division by (x - r) for a known rational root r.
inline ZCoeffs deflate_rational_root(const ZCoeffs& p, const Rational& r) {
  RatVec q(p.size() > 0 ? p.size() - 1 : 0, Rational(0));
  Rational carry(0);
  for (size_t k = p.size(); k-- > 1;) {
    carry = Rational(mpz_class(p[k])) + carry * r;
    q[k - 1] = carry;
  }
  if (!(Rational(mpz_class(p[0])) + carry * r).is_zero())
    throw std::logic_error("deflate_rational_root: not a root");
  return to_integer_coeffs(q);
}

/// Isolating intervals for all real roots of a squarefree integer polynomial.
/// Intervals are open with dyadic endpoints at which p is nonzero, or exact
/// points of width zero; sorted increasingly; each contains exactly one root;
/// width at most 1/4.
inline std::vector<Interval> isolate_roots(const ZCoeffs& poly) {
  std::vector<Interval> out;
  ZCoeffs p = poly;
  ztrim(p);
  if (p.empty()) throw std::invalid_argument("isolate_roots: zero polynomial");
  if (zdeg(p) == 0) return out;

  // split off a root at zero
  size_t tz = 0;
  while (tz < p.size() && p[tz] == 0) ++tz;
  bool root_at_zero = tz > 0;
  if (root_at_zero) p.erase(p.begin(), p.begin() + static_cast<long>(tz));

  // Cauchy bound, rounded up to a power of two
  Rational maxr(0);
  Rational lead{mpz_class(p.back())};
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rational r = Rational(mpz_class(p[i])).abs() / lead.abs();
    if (r > maxr) maxr = r;
  }
  Rational bound = pow2_above(maxr + Rational(1));

  struct Node {
    ZCoeffs q;  // p mapped from (a,b) onto (0,1)
    Rational a, b;
  };

  auto isolate_side = [&](bool positive) {
    // map (0, bound) to (0,1): q(x) = p(bound * x), then flip for the negative side
    ZCoeffs q = p;
    Rational scale = bound;
    mpz_class bnum = scale.num();  // power of two, denominator 1
    mpz_class f(1);
    for (size_t k = 0; k < q.size(); ++k) {
      q[k] *= f;
      f *= bnum;
    }
    if (!positive) {
      for (size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
    }
    ztrim(q);
    std::vector<Node> stack;
    stack.push_back({std::move(q), Rational(0), bound});
    std::vector<Interval> side;
    while (!stack.empty()) {
      Node nd = std::move(stack.back());
      stack.pop_back();
      int v = detail::descartes01(nd.q);
      if (v == 0) continue;
      if (v == 1) {
        side.push_back(positive ? Interval(nd.a, nd.b) : Interval(-nd.b, -nd.a));
        continue;
      }
      ZCoeffs ql = detail::half_left(nd.q);
      ZCoeffs qr = detail::half_right(nd.q);
      Rational m = (nd.a + nd.b) * Rational(1, 2);
      if (!qr.empty() && qr[0] == 0) {
        side.push_back(Interval(positive ? m : -m));
        qr.erase(qr.begin());
        // the shared endpoint root also heads ql's high end; strip it
        ql = zdivexact(ql, ZCoeffs{mpz_class(-1), mpz_class(1)});  // divide by (x - 1)
      }
      ztrim(qr);
      ztrim(ql);
      if (!ql.empty() && zdeg(ql) > 0) stack.push_back({std::move(ql), nd.a, m});
      if (!qr.empty() && zdeg(qr) > 0) stack.push_back({std::move(qr), m, nd.b});
    }
    return side;
  };

  std::vector<Interval> pos = isolate_side(true);
  std::vector<Interval> neg = isolate_side(false);
  for (auto& iv : neg) out.push_back(iv);
  if (root_at_zero) out.push_back(Interval(Rational(0)));
  for (auto& iv : pos) out.push_back(iv);
  std::sort(out.begin(), out.end(),
            [](const Interval& x, const Interval& y) { return x.mid() < y.mid(); });

  // Subdivision midpoints that are themselves roots can end up as endpoints of
  // neighbouring intervals; shrink those away and tighten everything to 1/4.
  const ZCoeffs& orig = poly;
  Rational target(1, 4);
  for (auto& iv : out) {
    if (iv.is_point()) continue;
    ZCoeffs q = p;
    if (zsign_at(q, iv.lo) == 0) q = deflate_rational_root(q, iv.lo);
    if (zdeg(q) > 0 && zsign_at(q, iv.hi) == 0) q = deflate_rational_root(q, iv.hi);
    while (iv.width() > target || zsign_at(orig, iv.lo) == 0 || zsign_at(orig, iv.hi) == 0) {
      Rational m = iv.mid();
      int sm = zsign_at(q, m);
      if (sm == 0) {
        iv = Interval(m);
        break;
      }
      if (sm == zsign_at(q, iv.lo))
        iv.lo = m;
      else
        iv.hi = m;
    }
  }
  return out;
}

/// Bisect an isolating interval until its width is below `width`.
/// Requires: exactly one root inside; sign change across nonzero-width intervals.
inline Interval refine_root(const ZCoeffs& p, Interval iv, const Rational& width) {
  if (iv.is_point()) return iv;
  int slo = zsign_at(p, iv.lo);
  int shi = zsign_at(p, iv.hi);
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::logic_error("refine_root: endpoints do not bracket");
  while (iv.width() >= width) {
    Rational m = iv.mid();
    int sm = zsign_at(p, m);
    if (sm == 0) return Interval(m);
    if (sm == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

/// Number of real roots of p (not necessarily squarefree) in the closed interval [a, b].
inline int count_roots_closed(const ZCoeffs& p0, const Rational& a, const Rational& b) {
  if (a > b) throw std::invalid_argument("count_roots_closed: empty interval");
  ZCoeffs p = zprimitive(p0);
  if (p.empty()) throw std::invalid_argument("count_roots_closed: zero polynomial");
  if (zdeg(p) == 0) return 0;
  ZCoeffs sf = zsquarefree(p);
  int count = 0;
  if (zsign_at(sf, a) == 0) {
    ++count;
    sf = deflate_rational_root(sf, a);
  }
  if (a != b && zdeg(sf) > 0 && zsign_at(sf, b) == 0) {
    ++count;
    sf = deflate_rational_root(sf, b);
  }
  if (a == b || zdeg(sf) <= 0) return count;
  for (auto iv : isolate_roots(sf)) {
    // shrink until strictly inside or strictly outside (a, b); terminates since
    // sf no longer vanishes at a or b
    while (!(iv.hi < a || iv.lo > b || (a < iv.lo && iv.hi < b))) {
      if (iv.is_point()) break;
      Rational m = iv.mid();
      int sm = zsign_at(sf, m);
      if (sm == 0) {
        iv = Interval(m);
        break;
      }
      if (sm == zsign_at(sf, iv.lo))
        iv.lo = m;
      else
        iv.hi = m;
    }
    if (iv.is_point()) {
      if (a < iv.lo && iv.lo < b) ++count;
    } else if (a < iv.lo && iv.hi < b) {
      ++count;
    }
  }
  return count;
}

}  // namespace cuspidal

#endif
