#ifndef CUSPIDAL_STURM_HABICHT_HPP
#define CUSPIDAL_STURM_HABICHT_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "cuspidal/poly.hpp"
#include "cuspidal/polyalg.hpp"
#include "cuspidal/upoly.hpp"

namespace cuspidal {

/// A real algebraic abscissa: root of a squarefree integer polynomial inside a
/// refinable isolating interval. Sign evaluation of integer univariate
/// polynomials at the point is exact.
struct AlgebraicPoint {
  ZCoeffs minpoly;
  Interval iv;

  void refine() {
    if (!iv.is_point()) iv = refine_root(minpoly, iv, iv.width() * Rational(1, 4));
  }

  static Interval interval_eval(const ZCoeffs& u, const Interval& x) {
    Interval acc{Rational(0)};
    for (size_t k = u.size(); k-- > 0;) acc = acc * x + Interval(Rational(mpz_class(u[k])));
    return acc;
  }

  bool is_root_of(const ZCoeffs& u) {
    if (u.empty()) return true;
    if (zdeg(u) == 0) return false;
    if (iv.is_point()) return zsign_at(u, iv.lo) == 0;
    ZCoeffs g = zgcd(minpoly, u);
    if (zdeg(g) < 1) return false;
    for (auto giv : isolate_roots(g)) {
      while (true) {
        if (giv.hi < iv.lo || iv.hi < giv.lo) break;  // different roots
        if (iv.lo <= giv.lo && giv.hi <= iv.hi) return true;  // same root
        // shrink both
        if (!giv.is_point()) {
          Rational m = giv.mid();
          int sm = zsign_at(g, m);
          if (sm == 0)
            giv = Interval(m);
          else if (sm == zsign_at(g, giv.lo))
            giv.lo = m;
          else
            giv.hi = m;
        }
        refine();
        if (iv.is_point()) return zsign_at(u, iv.lo) == 0;
      }
    }
    return false;
  }

  int sign_of(const ZCoeffs& u) {
    if (u.empty()) return 0;
    if (zdeg(u) == 0) return sgn(u[0]);
    if (is_root_of(u)) return 0;
    while (true) {
      Interval val = interval_eval(u, iv);
      if (val.sign() != 0) return val.sign();
      refine();
      if (iv.is_point()) return zsign_at(u, iv.lo);
    }
  }

  int sign_of_poly(const Poly& p) {
    if (p.is_zero()) return 0;
    if (p.is_constant()) return p.constant_value().sign();
    return sign_of(to_integer_coeffs(p.univariate_coeffs()));
  }
};

/// Sturm chain of (P, dP/dy) for a bivariate P: content-stripped members plus
/// per-member sign-correction factors, so that evaluating at a regular
/// abscissa x0 yields exact Sturm-sequence signs for P(x0, .).
class SturmYChain {
 public:
  SturmYChain(const Poly& P, size_t yidx) : yidx_(yidx) {
    if (P.is_zero()) throw std::invalid_argument("SturmYChain: zero polynomial");
    members_.push_back(scalar_normalize(P));
    factors_.push_back({});
    Poly dP = P.diff(yidx_);
    if (dP.is_zero()) return;
    members_.push_back(scalar_normalize(dP));
    factors_.push_back({});
    while (true) {
      const Poly& A = members_[members_.size() - 2];
      const Poly& B = members_.back();
      int db = B.degree_in(yidx_);
      if (db <= 0) break;
      Poly R = -prem_even(A, B);
      if (R.is_zero()) break;
      Poly cont = y_content(R);
      Poly S = scalar_normalize(divide_exact(R, cont));
      std::vector<Poly> fac = factors_[factors_.size() - 2];
      if (!cont.is_constant()) fac.push_back(cont);
      members_.push_back(std::move(S));
      factors_.push_back(std::move(fac));
    }
  }

  size_t size() const { return members_.size(); }
  const Poly& member(size_t i) const { return members_[i]; }

  /// Per-abscissa sign corrections. A member whose content factor vanishes at
  /// x0 is zero there and gets sigma 0 (skipped in the variation count; the
  /// proportional tail it induces only shifts both counts by a constant).
  /// nullopt only for a genuine degeneracy: a nonvanishing divisor member
  /// whose leading y-coefficient vanishes at x0.
  std::optional<std::vector<int>> corrections(AlgebraicPoint& x0) const {
    std::vector<int> sigma(members_.size(), 1);
    bool dead = false;
    for (size_t i = 0; i < members_.size(); ++i) {
      if (dead) {
        sigma[i] = 0;
        continue;
      }
      int sg = 1;
      bool vanished = false;
      for (auto& f : factors_[i]) {
        int s = x0.sign_of_poly(f);
        if (s == 0) {
          vanished = true;
          break;
        }
        sg *= s;
      }
      int lcsign = 1;
      if (members_[i].degree_in(yidx_) > 0) {
        Poly lc = members_[i].coeffs_in(yidx_).back();
        lcsign = x0.sign_of_poly(lc);
      }
      if (vanished) {
        sigma[i] = 0;
        if (lcsign == 0) dead = true;  // the rest of the chain vanishes too
        continue;
      }
      sigma[i] = sg;
      bool is_divisor = i + 1 < members_.size();
      if ((is_divisor || i == 0) && members_[i].degree_in(yidx_) > 0 && lcsign == 0)
        return std::nullopt;
    }
    return sigma;
  }

  // Sturm variations of the corrected chain at height t over the abscissa x0.
  int variations(AlgebraicPoint& x0, const std::vector<int>& sigma, const Rational& t) const {
    int v = 0, last = 0;
    for (size_t i = 0; i < members_.size(); ++i) {
      Poly b = members_[i].bind({{yidx_, t}});
      int s = x0.sign_of_poly(b) * sigma[i];
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }

  /// Distinct real roots of P(x0, .) strictly between a and b (both non-roots).
  int count(AlgebraicPoint& x0, const std::vector<int>& sigma, const Rational& a,
            const Rational& b) const {
    return variations(x0, sigma, a) - variations(x0, sigma, b);
  }

 private:
  static Poly scalar_normalize(const Poly& p) {
    if (p.is_zero()) return p;
    Rational c = p.rational_content();  // positive, sign-neutral
    return p * (Rational(1) / c);
  }

  Poly prem_even(const Poly& A, const Poly& B) const {
    std::vector<Poly> ca = A.coeffs_in(yidx_);
    std::vector<Poly> cb = B.coeffs_in(yidx_);
    const Poly& lb = cb.back();
    int db = static_cast<int>(cb.size()) - 1;
    int da = static_cast<int>(ca.size()) - 1;
    int e = da - db + 1;
    if (e < 0) e = 0;
    if (e % 2 != 0) ++e;
    int applied = 0;
    while (static_cast<int>(ca.size()) - 1 >= db && !ca.empty()) {
      int dr = static_cast<int>(ca.size()) - 1;
      Poly top = ca.back();
      for (auto& c : ca) c *= lb;
      ++applied;
      for (int j = 0; j <= db; ++j)
        ca[static_cast<size_t>(dr - db + j)] -= top * cb[static_cast<size_t>(j)];
      while (!ca.empty() && ca.back().is_zero()) ca.pop_back();
    }
    Poly r = Poly::from_coeffs_in(yidx_, ca, A.vars());
    for (; applied < e; ++applied) r *= lb;
    return r;
  }

  // gcd (primitive, positive leading sign) of the y-coefficients
  Poly y_content(const Poly& p) const {
    size_t xidx = yidx_ == 0 ? 1 : 0;
    auto cs = p.coeffs_in(yidx_);
    Poly g(p.vars());
    for (auto& c : cs) {
      if (c.is_zero()) continue;
      if (g.is_zero()) {
        g = c.primitive_part();
        continue;
      }
      if (g.is_constant()) break;
      ZCoeffs zg = zgcd(to_integer_coeffs(g.univariate_coeffs()),
                        to_integer_coeffs(c.univariate_coeffs()));
      if (zdeg(zg) <= 0) return Poly::constant(p.vars(), Rational(1));
      std::vector<Poly> nc(zg.size());
      for (size_t k = 0; k < zg.size(); ++k)
        nc[k] = Poly::constant(p.vars(), Rational(mpz_class(zg[k])));
      g = Poly::from_coeffs_in(xidx, nc, p.vars());
    }
    if (g.is_zero() || g.is_constant()) return Poly::constant(p.vars(), Rational(1));
    return g;
  }

  size_t yidx_;
  std::vector<Poly> members_;
  std::vector<std::vector<Poly>> factors_;
};

}  // namespace cuspidal

#endif
