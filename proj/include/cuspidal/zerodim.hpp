#ifndef CUSPIDAL_ZERODIM_HPP
#define CUSPIDAL_ZERODIM_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspidal/groebner.hpp"
#include "cuspidal/poly.hpp"
#include "cuspidal/polyalg.hpp"
#include "cuspidal/upoly.hpp"
#include "cuspidal/varieties.hpp"

namespace cuspidal {

// Dense univariate helpers over Q, low degree first.
namespace uq {

inline void trim(RatVec& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline int deg(const RatVec& p) { return static_cast<int>(p.size()) - 1; }

inline RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}
inline RatVec mul(const RatVec& a, const RatVec& b) {
  if (a.empty() || b.empty()) return {};
  RatVec r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}
inline RatVec scale(RatVec a, const Rational& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}
inline RatVec deriv(const RatVec& p) {
  RatVec d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

// Remainder of a modulo m (m nonzero, treated over Q).
inline RatVec mod(RatVec a, const RatVec& m) {
  trim(a);
  int dm = deg(m);
  if (dm < 0) throw std::logic_error("uq::mod by zero");
  while (deg(a) >= dm) {
    Rational f = a.back() / m.back();
    size_t shift = a.size() - m.size();
    for (size_t j = 0; j < m.size(); ++j) a[shift + j] -= f * m[j];
    trim(a);
  }
  return a;
}
inline RatVec mulmod(const RatVec& a, const RatVec& b, const RatVec& m) {
  return mod(mul(a, b), m);
}

inline RatVec monic(RatVec p) {
  trim(p);
  if (p.empty()) return p;
  Rational l = p.back();
  for (auto& c : p) c /= l;
  return p;
}

// Monic gcd over Q (via the integer primitive PRS for size control).
inline RatVec gcd(const RatVec& a, const RatVec& b) {
  ZCoeffs g = zgcd(to_integer_coeffs(a), to_integer_coeffs(b));
  RatVec r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = Rational(mpz_class(g[i]));
  return monic(std::move(r));
}

// Exact quotient (throws when not exact).
inline RatVec divexact(RatVec a, const RatVec& b) {
  trim(a);
  int db = deg(b);
  if (db < 0) throw std::logic_error("uq::divexact by zero");
  RatVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (deg(a) >= db) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("uq::divexact: remainder");
  trim(q);
  return q;
}

// Inverse of a modulo m; throws when a is not invertible. Solved as the
// linear system (mult-by-a) x = 1 over the quotient basis, which keeps
// coefficient growth far tamer than a rational extended Euclid.
inline RatVec invmod(const RatVec& a, const RatVec& m) {
  int dm = deg(m);
  if (dm <= 0) throw std::domain_error("uq::invmod: degenerate modulus");
  size_t n = static_cast<size_t>(dm);
  // columns of multiplication by a: col_j = u^j * a mod m
  std::vector<RatVec> col(n);
  RatVec cur = mod(a, m);
  for (size_t j = 0; j < n; ++j) {
    col[j] = cur;
    col[j].resize(n, Rational(0));
    cur.insert(cur.begin(), Rational(0));  // multiply by u
    cur = mod(std::move(cur), m);
  }
  // augmented solve col * x = e0, partial pivoting, exact rationals
  std::vector<RatVec> A(n, RatVec(n + 1, Rational(0)));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) A[r][c] = col[c][r];
  A[0][n] = Rational(1);
  std::vector<size_t> perm(n);
  for (size_t r = 0, c = 0; c < n && r < n; ++c) {
    size_t piv = r;
    while (piv < n && A[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("uq::invmod: not invertible");
    std::swap(A[piv], A[r]);
    Rational inv = Rational(1) / A[r][c];
    for (size_t k = c; k <= n; ++k) A[r][k] *= inv;
    for (size_t rr = 0; rr < n; ++rr) {
      if (rr == r || A[rr][c].is_zero()) continue;
      Rational f = A[rr][c];
      for (size_t k = c; k <= n; ++k) A[rr][k] -= f * A[r][k];
    }
    ++r;
  }
  RatVec x(n, Rational(0));
  for (size_t r = 0; r < n; ++r) {
    size_t lead = n;
    for (size_t c = 0; c < n; ++c)
      if (!A[r][c].is_zero()) {
        lead = c;
        break;
      }
    if (lead < n) x[lead] = A[r][n];
  }
  trim(x);
  // exactness check
  RatVec probe = sub(mulmod(x, mod(a, m), m), {Rational(1)});
  if (!probe.empty()) throw std::domain_error("uq::invmod: not invertible");
  return x;
}

inline Rational eval(const RatVec& p, const Rational& x) {
  Rational acc(0);
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}
inline Interval eval(const RatVec& p, const Interval& x) {
  Interval acc{Rational(0)};
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + Interval(p[k]);
  return acc;
}

inline bool squarefree_check(const RatVec& p) {
  if (deg(p) <= 0) return true;
  ZCoeffs z = to_integer_coeffs(p);
  return zdeg(zgcd(z, zderiv(z))) == 0;
}

}  // namespace uq

/// Univariate encoding (omega, rho_1..rho_n, lambda) of a finite point set:
/// roots theta of omega correspond to points (rho_i(theta)/omega'(theta))_i,
/// and lambda_1 rho_1 + ... + lambda_n rho_n = u * omega' (mod omega).
class ZeroDimParam {
 public:
  ZeroDimParam() = default;

  ZeroDimParam(std::vector<std::string> vars, RatVec omega, std::vector<RatVec> rhos,
               RatVec lambda)
      : vars_(std::move(vars)),
        omega_(std::move(omega)),
        rhos_(std::move(rhos)),
        lambda_(std::move(lambda)) {
    uq::trim(omega_);
    if (omega_.empty()) throw std::invalid_argument("ZeroDimParam: omega is zero");
    if (!omega_.back().is_one()) throw std::invalid_argument("ZeroDimParam: omega not monic");
    if (!uq::squarefree_check(omega_))
      throw std::invalid_argument("ZeroDimParam: omega not squarefree");
    if (rhos_.size() != vars_.size() || lambda_.size() != vars_.size())
      throw std::invalid_argument("ZeroDimParam: arity mismatch");
    for (auto& r : rhos_) {
      uq::trim(r);
      if (uq::deg(r) >= uq::deg(omega_) && uq::deg(omega_) >= 0 && !(uq::deg(omega_) == 0))
        throw std::invalid_argument("ZeroDimParam: deg rho >= deg omega");
      if (uq::deg(omega_) == 0 && !r.empty())
        throw std::invalid_argument("ZeroDimParam: nonzero rho for the empty set");
    }
    verify_identity();
    ++identity_checks();
  }

  static ZeroDimParam empty_set(std::vector<std::string> vars) {
    size_t n = vars.size();
    RatVec lambda(n, Rational(0));
    if (n > 0) lambda.back() = Rational(1);
    return ZeroDimParam(std::move(vars), {Rational(1)}, std::vector<RatVec>(n), lambda);
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const RatVec& omega() const { return omega_; }
  const std::vector<RatVec>& rhos() const { return rhos_; }
  const RatVec& lambda() const { return lambda_; }
  int degree() const { return uq::deg(omega_); }
  bool empty() const { return degree() == 0; }

  // Coordinate value polynomials v_i = rho_i * inv(omega') mod omega.
  std::vector<RatVec> value_polys() const {
    std::vector<RatVec> vals(rhos_.size());
    if (degree() == 0) return vals;
    RatVec winv = uq::invmod(uq::deriv(omega_), omega_);
    for (size_t i = 0; i < rhos_.size(); ++i) vals[i] = uq::mulmod(rhos_[i], winv, omega_);
    return vals;
  }

  // Global counter: the defining identity is re-verified on every construction.
  static long& identity_checks() {
    static long n = 0;
    return n;
  }

 private:
  void verify_identity() const {
    RatVec lhs;
    for (size_t i = 0; i < rhos_.size(); ++i)
      lhs = uq::add(lhs, uq::scale(rhos_[i], lambda_[i]));
    RatVec rhs = uq::mulmod({Rational(0), Rational(1)}, uq::deriv(omega_), omega_);
    if (!uq::sub(uq::mod(lhs, omega_), rhs).empty())
      throw std::logic_error("ZeroDimParam: defining identity violated");
  }

  std::vector<std::string> vars_;
  RatVec omega_;
  std::vector<RatVec> rhos_;
  RatVec lambda_;
};

/// A certified box around one real point of a parametrized set.
struct RealPointBox {
  std::vector<Interval> coords;
  Interval root;      // isolating interval of the omega-root
  size_t root_index;  // position in the sorted real-root list
};

namespace detail {

// Sum over roots of a(theta)/omega'(theta) = coefficient of u^(delta-1) of a mod omega.
inline Rational weighted_powersum(const RatVec& a, const RatVec& omega) {
  RatVec r = uq::mod(a, omega);
  size_t top = omega.size() - 2;  // delta-1
  return r.size() > top ? r[top] : Rational(0);
}

// Characteristic polynomial (monic, degree delta) of the multiset {h(theta)}.
inline RatVec charpoly_of_value(const RatVec& h, const RatVec& omega) {
  int delta = uq::deg(omega);
  RatVec wp = uq::deriv(omega);
  std::vector<Rational> p(static_cast<size_t>(delta) + 1, Rational(0));  // power sums
  RatVec hk = {Rational(1)};
  std::vector<RatVec> powers;  // h^k mod omega
  powers.push_back(hk);
  for (int k = 1; k <= delta; ++k) {
    hk = uq::mulmod(hk, h, omega);
    powers.push_back(hk);
    p[static_cast<size_t>(k)] = weighted_powersum(uq::mul(hk, wp), omega);
  }
  // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
  std::vector<Rational> e(static_cast<size_t>(delta) + 1, Rational(0));
  e[0] = Rational(1);
  for (int k = 1; k <= delta; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k; ++i) {
      Rational term = e[static_cast<size_t>(k - i)] * p[static_cast<size_t>(i)];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[static_cast<size_t>(k)] = acc / Rational(k);
  }
  RatVec W(static_cast<size_t>(delta) + 1, Rational(0));
  for (int k = 0; k <= delta; ++k) {
    Rational c = e[static_cast<size_t>(k)];
    if (k % 2 != 0) c = -c;
    W[static_cast<size_t>(delta - k)] = c;
  }
  return W;
}

}  // namespace detail

/// Re-express the same point set with a new linear form; std::nullopt when the
/// form does not separate the points.
inline std::optional<ZeroDimParam> reparametrize(const ZeroDimParam& P, const RatVec& mu) {
  if (mu.size() != P.vars().size()) throw std::invalid_argument("reparametrize: arity");
  if (P.empty()) return ZeroDimParam::empty_set(P.vars());
  int delta = P.degree();
  const RatVec& omega = P.omega();
  RatVec wp = uq::deriv(omega);
  RatVec winv = uq::invmod(wp, omega);
  RatVec num;
  for (size_t i = 0; i < mu.size(); ++i) num = uq::add(num, uq::scale(P.rhos()[i], mu[i]));
  RatVec h = uq::mulmod(num, winv, omega);

  RatVec W = detail::charpoly_of_value(h, omega);
  if (!uq::squarefree_check(W)) return std::nullopt;

  // powers of h mod omega
  std::vector<RatVec> hp(static_cast<size_t>(delta));
  hp[0] = {Rational(1)};
  for (int k = 1; k < delta; ++k) hp[static_cast<size_t>(k)] = uq::mulmod(hp[k - 1], h, omega);

  std::vector<RatVec> new_rhos(P.vars().size());
  for (size_t i = 0; i < P.vars().size(); ++i) {
    // sigma_m = sum_theta c_i(theta) h(theta)^m
    RatVec sigma(static_cast<size_t>(delta), Rational(0));
    for (int m = 0; m < delta; ++m)
      sigma[static_cast<size_t>(m)] =
          detail::weighted_powersum(uq::mul(P.rhos()[i], hp[static_cast<size_t>(m)]), omega);
    RatVec r(static_cast<size_t>(delta), Rational(0));
    for (int j = 0; j < delta; ++j) {
      Rational acc(0);
      for (int l = j + 1; l <= delta; ++l)
        acc += W[static_cast<size_t>(l)] * sigma[static_cast<size_t>(l - 1 - j)];
      r[static_cast<size_t>(j)] = acc;
    }
    uq::trim(r);
    new_rhos[i] = std::move(r);
  }
  return ZeroDimParam(P.vars(), W, std::move(new_rhos), mu);
}

namespace detail {

inline RatVec unit_lambda(size_t n, size_t idx) {
  RatVec l(n, Rational(0));
  l[idx] = Rational(1);
  return l;
}

inline RatVec family_lambda(size_t n, long k) {
  RatVec l(n, Rational(0));
  Rational f(1);
  for (size_t i = 0; i < n; ++i) {
    l[i] = f;
    f *= Rational(k);
  }
  return l;
}

}  // namespace detail

/// Z(result) = Z(P1) union Z(P2); shared points are deduplicated, so the degree
/// is additive exactly when the sets are disjoint.
inline ZeroDimParam union_params(const ZeroDimParam& P1, const ZeroDimParam& P2) {
  if (P1.vars() != P2.vars()) throw std::invalid_argument("union_params: variable contexts differ");
  if (P1.empty()) return P2;
  if (P2.empty()) return P1;
  size_t n = P1.vars().size();

  std::vector<RatVec> candidates = {P1.lambda(), P2.lambda(), detail::unit_lambda(n, n - 1)};
  for (long k = 1; k <= 64; ++k) candidates.push_back(detail::family_lambda(n, k));

  for (auto& mu : candidates) {
    auto A = reparametrize(P1, mu);
    if (!A) continue;
    auto B = reparametrize(P2, mu);
    if (!B) continue;
    RatVec g = uq::gcd(A->omega(), B->omega());
    if (uq::deg(g) > 0) {
      // shared values must mean shared points, else mu is not separating
      RatVec wa = uq::deriv(A->omega());
      RatVec wb = uq::deriv(B->omega());
      bool match = true;
      for (size_t i = 0; i < n && match; ++i) {
        RatVec lhs = uq::mod(uq::mul(A->rhos()[i], wb), g);
        RatVec rhs = uq::mod(uq::mul(B->rhos()[i], wa), g);
        if (!uq::sub(lhs, rhs).empty()) match = false;
      }
      if (!match) continue;
    }
    RatVec h2 = uq::divexact(B->omega(), g);
    if (uq::deg(h2) == 0) return *A;  // P2 contained in P1
    RatVec omega = uq::mul(A->omega(), h2);
    RatVec ginv = uq::deg(g) == 0 ? RatVec{Rational(1)} : uq::invmod(g, h2);
    std::vector<RatVec> rhos(n);
    for (size_t i = 0; i < n; ++i) {
      RatVec second = uq::mul(uq::mod(uq::mul(B->rhos()[i], ginv), h2), A->omega());
      rhos[i] = uq::add(uq::mul(A->rhos()[i], h2), second);
    }
    return ZeroDimParam(P1.vars(), omega, std::move(rhos), mu);
  }
  throw std::runtime_error("union_params: separating form search exhausted");
}

/// Certified boxes around the real points, refined below `width`, pairwise disjoint.
inline std::vector<RealPointBox> real_points(const ZeroDimParam& P, const Rational& width) {
  if (width.sign() <= 0) throw std::invalid_argument("real_points: width must be positive");
  std::vector<RealPointBox> out;
  if (P.empty()) return out;
  ZCoeffs z = to_integer_coeffs(P.omega());
  RatVec wp = uq::deriv(P.omega());
  auto roots = isolate_roots(z);
  for (size_t r = 0; r < roots.size(); ++r) {
    Interval iv = roots[r];
    Rational target = width;
    while (true) {
      iv = refine_root(z, iv, target);
      Interval dw = uq::eval(wp, iv);
      if (dw.sign() != 0) {
        std::vector<Interval> coords;
        Rational maxw(0);
        for (auto& rho : P.rhos()) {
          Interval nu = uq::eval(rho, iv);
          // interval division nu / dw with 0 not in dw
          Rational c[4] = {nu.lo / dw.lo, nu.lo / dw.hi, nu.hi / dw.lo, nu.hi / dw.hi};
          Rational lo = c[0], hi = c[0];
          for (int i = 1; i < 4; ++i) {
            if (c[i] < lo) lo = c[i];
            if (c[i] > hi) hi = c[i];
          }
          coords.emplace_back(lo, hi);
          if (coords.back().width() > maxw) maxw = coords.back().width();
        }
        if (maxw < width) {
          out.push_back({std::move(coords), iv, r});
          break;
        }
      }
      target = target * Rational(1, 4);
      if (iv.is_point() && dw.sign() == 0)
        throw std::logic_error("real_points: derivative vanishes at an exact root");
    }
  }
  // refine until boxes are pairwise disjoint in at least one coordinate
  bool again = true;
  Rational w = width;
  while (again) {
    again = false;
    for (size_t i = 0; i < out.size() && !again; ++i) {
      for (size_t j = i + 1; j < out.size() && !again; ++j) {
        bool all_overlap = true;
        for (size_t k = 0; k < out[i].coords.size(); ++k)
          if (out[i].coords[k].disjoint(out[j].coords[k])) {
            all_overlap = false;
            break;
          }
        if (all_overlap) again = true;
      }
    }
    if (again) {
      w = w * Rational(1, 4);
      auto finer = real_points(P, w);
      return finer;
    }
  }
  return out;
}

struct ZeroDimOptions {
  GroebnerBudget budget;
  long max_family_k = 64;
  long max_quotient_dim = 4096;
};

namespace detail {

// Quotient-ring view of a zero-dimensional ideal: staircase basis and
// multiplication matrices of the variables.
struct QuotientRing {
  std::vector<std::string> vars;
  std::vector<Expo> basis;                             // standard monomials
  std::vector<std::vector<RatVec>> mul;                // mul[i]: columns of M_{x_i}
  size_t dim() const { return basis.size(); }

  static QuotientRing build(const std::vector<Poly>& gb, const MonomialOrder& ord,
                            long max_dim) {
    QuotientRing Q;
    Q.vars = gb.front().vars();
    size_t n = Q.vars.size();
    std::vector<Expo> leads;
    for (auto& g : gb) leads.push_back(to_gpoly(g, ord).lead());
    std::vector<int> cap(n, 0);
    for (auto& l : leads) {
      int support = -1;
      bool pure = true;
      for (size_t i = 0; i < n; ++i)
        if (l[i] > 0) {
          if (support >= 0) pure = false;
          support = static_cast<int>(i);
        }
      if (pure && support >= 0) cap[static_cast<size_t>(support)] = l[static_cast<size_t>(support)];
    }
    Expo e(n, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (static_cast<long>(Q.basis.size()) > max_dim)
        throw BudgetExceeded("quotient dimension exceeds limit");
      if (i == n) {
        for (auto& l : leads)
          if (divides(l, e)) return;
        Q.basis.push_back(e);
        return;
      }
      for (int k = 0; k < std::max(cap[i], 1); ++k) {
        e[i] = k;
        rec(i + 1);
      }
      e[i] = 0;
    };
    rec(0);
    std::sort(Q.basis.begin(), Q.basis.end(),
              [&](const Expo& a, const Expo& b) { return ord.less(a, b); });

    std::map<Expo, size_t> index;
    for (size_t k = 0; k < Q.basis.size(); ++k) index[Q.basis[k]] = k;
    Q.mul.assign(n, std::vector<RatVec>(Q.dim()));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < Q.dim(); ++k) {
        Poly m(Q.vars);
        Expo me = Q.basis[k];
        me[i] += 1;
        m.set_term(me, Rational(1));
        Poly nf = normal_form(m, gb, ord);
        RatVec col(Q.dim(), Rational(0));
        for (auto& [ex, c] : nf.terms()) {
          auto it = index.find(ex);
          if (it == index.end())
            throw std::logic_error("QuotientRing: normal form left the staircase");
          col[it->second] = c;
        }
        Q.mul[i][k] = std::move(col);
      }
    }
    return Q;
  }

  // column application: y = M_lambda * x for the linear form lambda
  std::vector<RatVec> lambda_matrix(const RatVec& lam) const {
    std::vector<RatVec> M(dim(), RatVec(dim(), Rational(0)));
    for (size_t i = 0; i < vars.size(); ++i) {
      if (lam[i].is_zero()) continue;
      for (size_t k = 0; k < dim(); ++k)
        for (size_t r = 0; r < dim(); ++r) M[k][r] += lam[i] * mul[i][k][r];
    }
    return M;
  }
};

// columns-of-matrix product: (A*B)[col k] = A * B[col k]
inline std::vector<RatVec> mat_mul_cols(const std::vector<RatVec>& A,
                                        const std::vector<RatVec>& B) {
  size_t d = A.size();
  std::vector<RatVec> C(d, RatVec(d, Rational(0)));
  for (size_t k = 0; k < d; ++k)
    for (size_t j = 0; j < d; ++j) {
      const Rational& b = B[k][j];
      if (b.is_zero()) continue;
      for (size_t r = 0; r < d; ++r)
        if (!A[j][r].is_zero()) C[k][r] += b * A[j][r];
    }
  return C;
}

inline Rational mat_trace(const std::vector<RatVec>& A) {
  Rational t(0);
  for (size_t k = 0; k < A.size(); ++k) t += A[k][k];
  return t;
}
inline Rational mat_trace_product(const std::vector<RatVec>& A, const std::vector<RatVec>& B) {
  // tr(A*B) = sum_kr A[k][r] * B[r][k] with column-major storage M[col][row]
  Rational t(0);
  for (size_t k = 0; k < A.size(); ++k)
    for (size_t r = 0; r < A.size(); ++r)
      if (!A[k][r].is_zero()) t += A[k][r] * B[r][k];
  return t;
}

// Monic charpoly (over the quotient) of the linear form's multiplication matrix,
// plus the weighted sums needed for the parametrization.
inline std::optional<ZeroDimParam> shape_from_quotient(const QuotientRing& Q, const RatVec& lam) {
  size_t delta = Q.dim();
  size_t n = Q.vars.size();
  auto M = Q.lambda_matrix(lam);
  // power sums p_k = tr(M^k), keeping the running power
  std::vector<std::vector<RatVec>> pow;
  pow.reserve(delta + 1);
  std::vector<RatVec> I(delta, RatVec(delta, Rational(0)));
  for (size_t k = 0; k < delta; ++k) I[k][k] = Rational(1);
  pow.push_back(I);
  std::vector<Rational> p(delta + 1, Rational(0));
  for (size_t k = 1; k <= delta; ++k) {
    pow.push_back(mat_mul_cols(M, pow.back()));
    p[k] = mat_trace(pow.back());
  }
  std::vector<Rational> e(delta + 1, Rational(0));
  e[0] = Rational(1);
  for (size_t k = 1; k <= delta; ++k) {
    Rational acc(0);
    for (size_t i = 1; i <= k; ++i) {
      Rational term = e[k - i] * p[i];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[k] = acc / Rational(static_cast<long>(k));
  }
  RatVec W(delta + 1, Rational(0));
  for (size_t k = 0; k <= delta; ++k) {
    Rational c = e[k];
    if (k % 2 != 0) c = -c;
    W[delta - k] = c;
  }
  if (!uq::squarefree_check(W)) return std::nullopt;  // non-separating or non-radical

  std::vector<RatVec> rhos(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rational> sigma(delta, Rational(0));
    for (size_t m = 0; m < delta; ++m)
      sigma[m] = mat_trace_product(Q.mul[i], pow[m]);
    RatVec r(delta, Rational(0));
    for (size_t j = 0; j < delta; ++j) {
      Rational acc(0);
      for (size_t l = j + 1; l <= delta; ++l) acc += W[l] * sigma[l - 1 - j];
      r[j] = acc;
    }
    uq::trim(r);
    rhos[i] = std::move(r);
  }
  return ZeroDimParam(Q.vars, W, std::move(rhos), lam);
}

// Squarefree part of the charpoly of M_{x_i}: a univariate polynomial that the
// i-th coordinate satisfies on every solution.
inline RatVec variable_minpoly(const QuotientRing& Q, size_t i) {
  size_t delta = Q.dim();
  std::vector<RatVec> P = Q.mul[i];
  std::vector<Rational> p(delta + 1, Rational(0));
  std::vector<RatVec> cur(delta, RatVec(delta, Rational(0)));
  for (size_t k = 0; k < delta; ++k) cur[k][k] = Rational(1);
  for (size_t k = 1; k <= delta; ++k) {
    cur = mat_mul_cols(P, cur);
    p[k] = mat_trace(cur);
  }
  std::vector<Rational> e(delta + 1, Rational(0));
  e[0] = Rational(1);
  for (size_t k = 1; k <= delta; ++k) {
    Rational acc(0);
    for (size_t m = 1; m <= k; ++m) {
      Rational term = e[k - m] * p[m];
      if (m % 2 == 0) term = -term;
      acc += term;
    }
    e[k] = acc / Rational(static_cast<long>(k));
  }
  RatVec W(delta + 1, Rational(0));
  for (size_t k = 0; k <= delta; ++k) {
    Rational c = e[k];
    if (k % 2 != 0) c = -c;
    W[delta - k] = c;
  }
  ZCoeffs z = zsquarefree(to_integer_coeffs(W));
  RatVec sf(z.size());
  Rational lead{mpz_class(z.back())};
  for (size_t k = 0; k < z.size(); ++k) sf[k] = Rational(mpz_class(z[k])) / lead;
  return sf;
}

}  // namespace detail

/// Zero-dimensional parametrization of the complex solution set of `polys`.
/// Throws std::domain_error("not zero-dimensional") on positive-dimensional input.
inline ZeroDimParam solve_zero_dim(std::vector<Poly> polys, const ZeroDimOptions& opt = {}) {
  if (polys.empty()) throw std::domain_error("solve_zero_dim: not zero-dimensional");
  const auto vars = polys.front().vars();
  size_t n = vars.size();
  for (auto& p : polys) p = p.with_context(vars);

  auto grev = groebner_basis(polys, MonomialOrder::grevlex(), opt.budget);
  for (auto& g : grev)
    if (!g.is_zero() && g.is_constant()) return ZeroDimParam::empty_set(vars);
  if (!is_zero_dimensional(grev, MonomialOrder::grevlex()))
    throw std::domain_error("solve_zero_dim: not zero-dimensional");

  auto attempt = [&](const std::vector<Poly>& gb) -> std::optional<ZeroDimParam> {
    auto Q = detail::QuotientRing::build(gb, MonomialOrder::grevlex(), opt.max_quotient_dim);
    if (auto r = detail::shape_from_quotient(Q, detail::unit_lambda(n, n - 1))) return r;
    for (long k = 1; k <= opt.max_family_k; ++k)
      if (auto r = detail::shape_from_quotient(Q, detail::family_lambda(n, k))) return r;
    return std::nullopt;
  };

  auto Q0 = detail::QuotientRing::build(grev, MonomialOrder::grevlex(), opt.max_quotient_dim);
  if (auto r = detail::shape_from_quotient(Q0, detail::unit_lambda(n, n - 1))) return *r;
  if (auto r = detail::shape_from_quotient(Q0, detail::family_lambda(n, 1))) return *r;

  // radicalize: adjoin the squarefree minimal polynomial of every coordinate
  std::vector<Poly> rad = polys;
  for (size_t i = 0; i < n; ++i) {
    RatVec mi = detail::variable_minpoly(Q0, i);
    if (uq::deg(mi) < 1) continue;
    std::vector<Poly> cs(mi.size());
    for (size_t k = 0; k < mi.size(); ++k) cs[k] = Poly::constant(vars, mi[k]);
    rad.push_back(Poly::from_coeffs_in(i, cs, vars));
  }
  auto grev_rad = groebner_basis(rad, MonomialOrder::grevlex(), opt.budget);
  for (auto& g : grev_rad)
    if (!g.is_zero() && g.is_constant()) return ZeroDimParam::empty_set(vars);
  if (auto r = attempt(grev_rad)) return *r;
  throw std::runtime_error("solve_zero_dim: separating-form search exhausted");
}

namespace detail {

// Integer coefficient vector with a single tracked denominator; avoids the
// per-coefficient gcd canonicalization of rational arithmetic in hot loops.
struct ZQVec {
  ZCoeffs c;
  mpz_class den = 1;

  void normalize() {
    ztrim(c);
    if (c.empty()) {
      den = 1;
      return;
    }
    mpz_class g = zcontent(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
      zdivexact_scalar(c, g);
      den /= g;
    }
    if (den < 0) {
      den = -den;
      for (auto& x : c) x = -x;
    }
  }
  static ZQVec from_rat(const RatVec& r) {
    ZQVec v;
    v.c = to_integer_coeffs(r);
    mpz_class l(1);
    for (auto& q : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.den().get_mpz_t());
    v.den = l;
    return v;
  }
  RatVec to_rat() const {
    RatVec r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = Rational(mpq_class(c[i], den));
    return r;
  }
};

// Reduce v modulo the integer form (W, with leading coefficient LW) of a monic
// rational modulus; each pseudo-reduction step scales the value by LW, which is
// absorbed into the denominator.
inline void zq_reduce(ZQVec& v, const ZCoeffs& W) {
  const mpz_class& LW = W.back();
  int dW = zdeg(W);
  ztrim(v.c);
  while (zdeg(v.c) >= dW) {
    int shift = zdeg(v.c) - dW;
    mpz_class top = v.c.back();
    for (auto& x : v.c) x *= LW;
    for (int j = 0; j <= dW; ++j)
      v.c[static_cast<size_t>(shift + j)] -= top * W[static_cast<size_t>(j)];
    v.den *= LW;
    ztrim(v.c);
  }
  v.normalize();
}

inline ZQVec zq_mulmod(const ZQVec& a, const ZQVec& b, const ZCoeffs& W) {
  ZQVec r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.den = a.den * b.den;
  zq_reduce(r, W);
  return r;
}

inline void zq_add_inplace(ZQVec& acc, const ZQVec& t) {
  if (t.c.empty()) return;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), acc.den.get_mpz_t(), t.den.get_mpz_t());
  mpz_class fa = t.den / g, ft = acc.den / g;
  if (acc.c.size() < t.c.size()) acc.c.resize(t.c.size(), mpz_class(0));
  for (auto& x : acc.c) x *= fa;
  for (size_t i = 0; i < t.c.size(); ++i) acc.c[i] += ft * t.c[i];
  acc.den *= fa;
  acc.normalize();
}

}  // namespace detail

/// p evaluated at the parametrized points, as a univariate polynomial mod omega.
inline RatVec compose_mod(const Poly& p, const std::vector<RatVec>& values, const RatVec& omega) {
  using detail::ZQVec;
  ZCoeffs W = to_integer_coeffs(omega);
  std::vector<std::vector<ZQVec>> powers(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    ZQVec one;
    one.c = {mpz_class(1)};
    powers[i].push_back(one);
    powers[i].push_back(ZQVec::from_rat(values[i]));
    detail::zq_reduce(powers[i][1], W);
  }
  ZQVec acc;
  for (auto& [e, c] : p.terms()) {
    ZQVec term;
    term.c = {c.num()};
    term.den = c.den();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      while (powers[i].size() <= static_cast<size_t>(e[i]))
        powers[i].push_back(detail::zq_mulmod(powers[i].back(), powers[i][1], W));
      term = detail::zq_mulmod(term, powers[i][static_cast<size_t>(e[i])], W);
    }
    detail::zq_add_inplace(acc, term);
  }
  detail::zq_reduce(acc, W);
  return acc.to_rat();
}

/// Parametrization of the fiber V(f) ∩ R^{-1}(q).
/// Uses the rotation-structure fast path when available; exact verification of
/// R(point) = q is part of the construction.
inline ZeroDimParam fiber(const InputSystem& sys, const RatVec& q,
                          const ZeroDimOptions& opt = {}) {
  if (q.size() != sys.d()) throw std::invalid_argument("fiber: value dimension mismatch");

  std::optional<ZeroDimParam> param;
  auto rs = detect_rotation_structure(sys);
  Rational tau = rs ? q[rs->val_a] * q[rs->val_a] + q[rs->val_b] * q[rs->val_b] : Rational(0);
  if (rs && tau.sign() != 0) {
    // reduced system in the variables other than the rotating pair
    std::vector<std::string> red;
    std::vector<size_t> redidx;
    for (size_t i = 0; i < sys.n(); ++i)
      if (i != rs->cos_idx && i != rs->sin_idx) {
        red.push_back(sys.vars[i]);
        redidx.push_back(i);
      }
    bool reducible = true;
    std::vector<Poly> gens;
    for (size_t e = 0; e < sys.equations.size(); ++e) {
      if (e == rs->circle_equation_idx) continue;
      if (sys.equations[e].depends_on(rs->cos_idx) || sys.equations[e].depends_on(rs->sin_idx)) {
        reducible = false;
        break;
      }
      gens.push_back(sys.equations[e].restricted_to(red));
    }
    if (reducible) {
      Poly t = rs->A * rs->A + rs->B * rs->B;
      gens.push_back(t.restricted_to(red) - Poly::constant(red, tau));
      for (size_t k = 0; k < sys.d(); ++k) {
        if (k == rs->val_a || k == rs->val_b) continue;
        gens.push_back(sys.map[k].restricted_to(red) - Poly::constant(red, q[k]));
      }
      ZeroDimParam sub = solve_zero_dim(gens, opt);
      if (sub.empty()) {
        param = ZeroDimParam::empty_set(sys.vars);
      } else {
        auto vals = sub.value_polys();
        const RatVec& w = sub.omega();
        RatVec va = compose_mod(rs->A.restricted_to(red), vals, w);
        RatVec vb = compose_mod(rs->B.restricted_to(red), vals, w);
        Rational inv_tau = Rational(1) / tau;
        RatVec cc = uq::scale(uq::add(uq::scale(va, q[rs->val_a]), uq::scale(vb, q[rs->val_b])),
                              inv_tau);
        RatVec ss = uq::scale(uq::sub(uq::scale(va, q[rs->val_b]), uq::scale(vb, q[rs->val_a])),
                              inv_tau);
        RatVec wp = uq::deriv(w);
        std::vector<RatVec> rhos(sys.n());
        RatVec lambda(sys.n(), Rational(0));
        for (size_t j = 0; j < redidx.size(); ++j) {
          rhos[redidx[j]] = sub.rhos()[j];
          lambda[redidx[j]] = sub.lambda()[j];
        }
        rhos[rs->cos_idx] = uq::mulmod(cc, wp, w);
        rhos[rs->sin_idx] = uq::mulmod(ss, wp, w);
        param = ZeroDimParam(sys.vars, w, std::move(rhos), std::move(lambda));
      }
    }
  }
  if (!param) {
    std::vector<Poly> gens = sys.equations;
    for (size_t k = 0; k < sys.d(); ++k)
      gens.push_back(sys.map[k] - Poly::constant(sys.vars, q[k]));
    try {
      param = solve_zero_dim(gens, opt);
    } catch (const std::domain_error&) {
      throw std::domain_error("fiber: not finite (the value appears to be atypical)");
    }
  }

  // exact verification: f(point)=0 and R(point)=q on the whole parametrization
  if (!param->empty()) {
    auto vals = param->value_polys();
    for (auto& f : sys.equations)
      if (!compose_mod(f, vals, param->omega()).empty())
        throw std::logic_error("fiber: equations not satisfied by parametrization");
    for (size_t k = 0; k < sys.d(); ++k) {
      RatVec r = compose_mod(sys.map[k], vals, param->omega());
      r = uq::sub(r, {q[k]});
      if (!r.empty()) throw std::logic_error("fiber: map value mismatch");
    }
  }
  return *param;
}

}  // namespace cuspidal

#endif
