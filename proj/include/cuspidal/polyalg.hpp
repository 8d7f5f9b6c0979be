#ifndef CUSPIDAL_POLYALG_HPP
#define CUSPIDAL_POLYALG_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuspidal/poly.hpp"
#include "cuspidal/upoly.hpp"

namespace cuspidal {

/// Quotient p / d when the division is exact, std::nullopt otherwise.
inline std::optional<Poly> try_divide_exact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("try_divide_exact: zero divisor");
  if (d.is_constant()) {
    Rational inv = Rational(1) / d.constant_value();
    return p * inv;
  }
  Poly r = p + d - d;  // merged context
  Poly dd = d.with_context(r.vars());
  const Expo& ed = dd.leading_expo();
  Rational ld = dd.leading_coeff();
  Poly q(r.vars());
  while (!r.is_zero()) {
    const Expo& er = r.leading_expo();
    Expo t(er.size());
    for (size_t i = 0; i < er.size(); ++i) {
      t[i] = er[i] - ed[i];
      if (t[i] < 0) return std::nullopt;
    }
    Poly mono(r.vars());
    mono.set_term(t, r.leading_coeff() / ld);
    q += mono;
    r -= mono * dd;
  }
  return q;
}

inline Poly divide_exact(const Poly& p, const Poly& d) {
  auto q = try_divide_exact(p, d);
  if (!q) throw std::logic_error("divide_exact: not divisible");
  return *q;
}

namespace detail {

// Pseudo-remainder of a by b w.r.t. variable idx: lc(b)^(da-db+1)*a mod b.
inline Poly poly_prem(const Poly& a, const Poly& b, size_t idx) {
  int db = b.degree_in(idx);
  std::vector<Poly> ca = a.coeffs_in(idx);
  std::vector<Poly> cb = b.coeffs_in(idx);
  const Poly& lb = cb.back();
  int da = static_cast<int>(ca.size()) - 1;
  int steps = da - db + 1;
  for (int s = 0; s < steps; ++s) {
    int dr = static_cast<int>(ca.size()) - 1;
    Poly top = ca.back();
    for (auto& c : ca) c *= lb;
    if (!top.is_zero()) {
      for (int j = 0; j <= db; ++j)
        ca[static_cast<size_t>(dr - db + j)] -= top * cb[static_cast<size_t>(j)];
    }
    while (!ca.empty() && ca.back().is_zero()) ca.pop_back();
    if (static_cast<int>(ca.size()) - 1 < db) {
      // scale the remaining steps so the full lc^(da-db+1) factor is applied
      for (int s2 = s + 1; s2 < steps; ++s2)
        for (auto& c : ca) c *= lb;
      break;
    }
  }
  return Poly::from_coeffs_in(idx, ca, a.vars());
}

}  // namespace detail

/// Resultant of p and q w.r.t. the named variable, via a subresultant PRS.
/// Exact (standard Sylvester convention, including sign).
inline Poly resultant(Poly p, Poly q, const std::string& var) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant: zero input");
  // align the two contexts
  Poly zero_ctx = p + q - q;  // merged context carrier
  p = p.with_context(zero_ctx.vars());
  q = q.with_context(zero_ctx.vars());
  size_t idx = Poly::index_of(p.vars(), var);
  int dp = p.degree_in(idx), dq = q.degree_in(idx);
  if (dp <= 0 && dq <= 0) throw std::invalid_argument("resultant: both inputs constant in " + var);

  Poly A = p, B = q;
  int dA = dp, dB = dq;
  bool negate = false;
  if (dA < dB) {
    std::swap(A, B);
    std::swap(dA, dB);
    if ((dp * dq) % 2 != 0) negate = !negate;
  }

  // multiplicative corrections: res(p,q) = sign * prod(factor^exp) * core
  std::vector<std::pair<Poly, long>> corrections;
  Poly g = Poly::constant(p.vars(), Rational(1));
  Poly h = g;
  bool first = true;
  Poly core(p.vars());
  while (true) {
    if (B.is_zero()) return Poly(p.vars());  // resultant 0
    if (dB == 0) {
      core = B.pow(static_cast<unsigned>(dA));
      break;
    }
    Poly R = detail::poly_prem(A, B, idx);
    if (R.is_zero()) return Poly(p.vars());
    int delta = dA - dB;
    Poly divisor = first ? Poly::constant(p.vars(), Rational(1)) : g * h.pow(static_cast<unsigned>(delta));
    Poly Rt = divide_exact(R, divisor);
    int dR = Rt.degree_in(idx);
    // res(A,B) = (-1)^(dA*dB) * lcB^(dA - dR - (dA-dB+1)*dB) * divisor^dB * res(B,Rt)
    if ((dA * dB) % 2 != 0) negate = !negate;
    Poly lcB = B.coeffs_in(idx).back();
    long e = static_cast<long>(dA) - dR - static_cast<long>(dA - dB + 1) * dB;
    if (e != 0) corrections.push_back({lcB, e});
    if (!divisor.is_constant() || !divisor.constant_value().is_one())
      corrections.push_back({divisor, dB});
    // subresultant bookkeeping for the next divisor
    g = lcB;
    if (delta > 0) {
      Poly gp = g.pow(static_cast<unsigned>(delta));
      h = delta == 1 ? g : divide_exact(gp, h.pow(static_cast<unsigned>(delta - 1)));
    }
    A = std::move(B);
    B = std::move(Rt);
    dA = dB;
    dB = dR;
    first = false;
  }

  Poly num = core;
  Poly den = Poly::constant(p.vars(), Rational(1));
  for (auto& [f, e] : corrections) {
    if (e > 0)
      num *= f.pow(static_cast<unsigned>(e));
    else
      den *= f.pow(static_cast<unsigned>(-e));
  }
  Poly res = divide_exact(num, den);
  return negate ? -res : res;
}

/// Monic squarefree part of a univariate polynomial.
inline Poly squarefree(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree: zero polynomial");
  size_t idx = 0;
  int nactive = 0;
  for (size_t i = 0; i < p.vars().size(); ++i)
    if (p.depends_on(i)) {
      idx = i;
      ++nactive;
    }
  if (nactive > 1) throw std::invalid_argument("squarefree: not univariate");
  if (p.is_constant()) return Poly::constant(p.vars(), Rational(1));
  ZCoeffs z = to_integer_coeffs(p.univariate_coeffs());
  ZCoeffs sf = zsquarefree(z);
  RatVec cs(sf.size());
  Rational lead{mpz_class(sf.back())};
  for (size_t k = 0; k < sf.size(); ++k) cs[k] = Rational(mpz_class(sf[k])) / lead;
  std::vector<Poly> polys(cs.size());
  for (size_t k = 0; k < cs.size(); ++k) polys[k] = Poly::constant(p.vars(), cs[k]);
  return Poly::from_coeffs_in(idx, polys, p.vars());
}

/// Isolating intervals for the real roots of a squarefree univariate polynomial,
/// ordered by midpoint.
inline std::vector<Interval> isolate_real_roots(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  int nactive = 0;
  for (size_t i = 0; i < p.vars().size(); ++i)
    if (p.depends_on(i)) ++nactive;
  if (nactive > 1) throw std::invalid_argument("isolate_real_roots: not univariate");
  if (p.is_constant()) return {};
  ZCoeffs z = to_integer_coeffs(p.univariate_coeffs());
  if (zgcd(z, zderiv(z)).size() > 1)
    throw std::invalid_argument("isolate_real_roots: input is not squarefree");
  return isolate_roots(z);
}

/// Monic gcd of two univariate polynomials in the same variable.
inline Poly univariate_gcd(const Poly& a, const Poly& b, const std::string& var) {
  size_t idx = Poly::index_of(a.vars(), var);
  ZCoeffs g = zgcd(to_integer_coeffs(a.univariate_coeffs()),
                   to_integer_coeffs(b.univariate_coeffs()));
  if (g.empty()) return Poly(a.vars());
  Rational lead{mpz_class(g.back())};
  std::vector<Poly> cs(g.size());
  for (size_t k = 0; k < g.size(); ++k)
    cs[k] = Poly::constant(a.vars(), Rational(mpz_class(g[k])) / lead);
  return Poly::from_coeffs_in(idx, cs, a.vars());
}

}  // namespace cuspidal

#endif
