#ifndef CUSPIDAL_CAD_HPP
#define CUSPIDAL_CAD_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cuspidal/poly.hpp"
#include "cuspidal/polyalg.hpp"
#include "cuspidal/sturm_habicht.hpp"
#include "cuspidal/upoly.hpp"
#include "cuspidal/zerodim.hpp"

namespace cuspidal {

/// Sign of H along the closed segment p0 -> p1: +1 / -1 when certified nonzero
/// of constant sign, 0 otherwise. Exact (univariate restriction + root count).
inline int segment_sign(const Poly& H, const RatVec& p0, const RatVec& p1) {
  size_t n = p0.size();
  if (H.vars().size() != n || p1.size() != n)
    throw std::invalid_argument("segment_sign: dimension mismatch");
  std::vector<RatVec> lin(n);
  for (size_t i = 0; i < n; ++i) lin[i] = {p0[i], p1[i] - p0[i]};
  RatVec acc;
  for (auto& [e, c] : H.terms()) {
    RatVec term = {c};
    for (size_t i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) term = uq::mul(term, lin[i]);
    acc = uq::add(acc, term);
  }
  if (acc.empty()) return 0;
  int s0 = uq::eval(acc, Rational(0)).sign();
  int s1 = uq::eval(acc, Rational(1)).sign();
  if (s0 == 0 || s1 == 0 || s0 != s1) return 0;
  ZCoeffs z = to_integer_coeffs(acc);
  if (zdeg(z) <= 0) return s0;
  if (count_roots_closed(z, Rational(0), Rational(1)) != 0) return 0;
  return s0;
}

/// Open cylindrical decomposition of the plane (or a rational window of it)
/// relative to one curve H(x, y) = 0, with exact cell adjacency across the
/// critical lines and the connected regions of the complement.
class PlaneCad {
 public:
  struct Stack {
    Rational lo, hi;  // outer rational bounds of the open x-interval
    bool unbounded_lo = false, unbounded_hi = false;
    Rational x;
    std::vector<Interval> branches;  // in-window curve branches at x, sorted
    std::vector<Rational> gaps;      // branch_count + 1 sample ordinates
  };

  PlaneCad(Poly curve, std::optional<Interval> window_x = std::nullopt,
           std::optional<Interval> window_y = std::nullopt)
      : wx_(std::move(window_x)), wy_(std::move(window_y)) {
    if (curve.vars().size() != 2)
      throw std::invalid_argument("PlaneCad: need a bivariate context");
    vars_ = curve.vars();
    build(std::move(curve));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const Poly& curve() const { return curve_; }
  bool curve_is_zero() const { return curve_is_zero_; }
  const std::vector<Stack>& stacks() const { return stacks_; }
  size_t critical_line_count() const { return lines_.size(); }
  const Interval& critical_interval(size_t r) const { return lines_[r].x0.iv; }

  size_t cell_count() const { return cell_offset_.empty() ? 0 : cell_offset_.back(); }
  size_t cell_id(size_t stack, size_t gap) const { return cell_offset_[stack] + gap; }
  std::pair<size_t, size_t> cell_of(size_t id) const {
    size_t s = static_cast<size_t>(std::upper_bound(cell_offset_.begin(), cell_offset_.end(), id) -
                                   cell_offset_.begin() - 1);
    return {s, id - cell_offset_[s]};
  }
  RatVec cell_sample(size_t id) const {
    auto [s, g] = cell_of(id);
    return {stacks_[s].x, stacks_[s].gaps[g]};
  }
  size_t region_of_cell(size_t id) const { return find(id); }
  size_t region_count() const {
    size_t n = 0;
    for (size_t c = 0; c < cell_count(); ++c)
      if (find(c) == c) ++n;
    return n;
  }
  std::vector<std::pair<size_t, RatVec>> region_samples() const {
    std::vector<std::pair<size_t, RatVec>> out;
    for (size_t c = 0; c < cell_count(); ++c)
      if (find(c) == c) out.push_back({c, cell_sample(c)});
    return out;
  }

  /// Locate the cell containing a rational point that is off the curve, inside
  /// the window, and not on a critical line.
  size_t locate(const RatVec& pt) const {
    if (wx_ && !(wx_->lo < pt[0] && pt[0] < wx_->hi))
      throw std::domain_error("PlaneCad::locate: outside window");
    if (wy_ && !(wy_->lo < pt[1] && pt[1] < wy_->hi))
      throw std::domain_error("PlaneCad::locate: outside window");
    if (!curve_.is_zero() && curve_.eval(pt).is_zero())
      throw std::domain_error("PlaneCad::locate: point on the curve");
    size_t s = stack_of_abscissa(pt[0]);
    size_t below = branches_below(pt[0], pt[1]);
    return cell_id(s, below);
  }

  // stack index of a rational abscissa strictly between critical lines
  size_t stack_of_abscissa(const Rational& x) const {
    if (!proj_.empty() && zdeg(proj_) > 0 && zsign_at(proj_, x) == 0)
      throw std::domain_error("PlaneCad: abscissa on a critical line");
    size_t s = 0;
    for (size_t r = 0; r < lines_.size(); ++r) {
      Interval iv = lines_[r].x0.iv;
      while (iv.contains(x) && !iv.is_point()) {
        lines_[r].x0.refine();
        iv = lines_[r].x0.iv;
      }
      if (iv.is_point() && iv.lo == x)
        throw std::domain_error("PlaneCad: abscissa on a critical line");
      if (x > iv.hi) s = r + 1;
    }
    return s;
  }

  // number of in-window curve branches strictly below y on the line x = const
  size_t branches_below(const Rational& x, const Rational& y) const {
    Poly fib = curve_.bind({{0, x}});
    if (fib.is_zero()) throw std::domain_error("PlaneCad: vertical line inside curve");
    if (fib.is_constant()) return 0;
    ZCoeffs z = to_integer_coeffs(fib.univariate_coeffs());
    size_t below = 0;
    for (auto iv : isolate_roots(z)) {
      while (iv.contains(y)) {
        if (iv.is_point()) throw std::domain_error("PlaneCad: point on the curve");
        Rational m = iv.mid();
        int sm = zsign_at(z, m);
        if (sm == 0) {
          iv = Interval(m);
          continue;
        }
        if (sm == zsign_at(z, iv.lo))
          iv.lo = m;
        else
          iv.hi = m;
      }
      if (!in_window_y(iv, z)) continue;
      if (iv.hi < y) ++below;
    }
    return below;
  }

 private:
  struct Line {
    mutable AlgebraicPoint x0;
    bool whole_line = false;             // the vertical line lies inside the curve
    size_t trim = 0;                     // top y-coefficients vanishing at x0
    std::vector<Interval> fiber;         // curve points on the line, sorted (unwindowed)
    std::vector<char> in_window;         // per fiber point (strictly inside)
  };

  void build(Poly input) {
    if (input.is_zero()) {
      curve_is_zero_ = true;
      curve_ = std::move(input);
      return;
    }
    curve_ = squarefree_bivariate(input.primitive_part());
    if (curve_.is_constant()) {
      constant_curve_ = true;
    }

    // projection polynomial
    int dy = curve_.is_constant() ? 0 : curve_.degree_in(size_t{1});
    if (!constant_curve_) {
      if (dy <= 0) {
        proj_ = zsquarefree(to_integer_coeffs(curve_.univariate_coeffs()));
        vertical_only_ = true;
      } else {
        Poly p = Poly::constant(vars_, Rational(1));
        Poly lc = curve_.coeffs_in(size_t{1}).back();
        if (!lc.is_constant()) p = p * lc;
        Poly disc = resultant(curve_, curve_.diff(size_t{1}), vars_[1]);
        if (disc.is_zero()) throw std::logic_error("PlaneCad: vanishing discriminant");
        if (!disc.is_constant()) p = p * disc;
        if (wy_) {
          for (const Rational& edge : {wy_->lo, wy_->hi}) {
            Poly slice = bind_y_avoiding_edge_factor(edge);
            if (!slice.is_zero() && !slice.is_constant()) p = p * slice;
          }
        }
        if (!p.is_constant()) proj_ = zsquarefree(to_integer_coeffs(p.univariate_coeffs()));
      }
    }

    // critical roots inside the window
    std::vector<Interval> roots;
    if (!proj_.empty() && zdeg(proj_) > 0) {
      for (auto iv : isolate_roots(proj_)) {
        if (wx_) {
          while (!(iv.hi < wx_->lo || iv.lo > wx_->hi || (wx_->lo < iv.lo && iv.hi < wx_->hi))) {
            if (iv.is_point()) break;
            Rational m = iv.mid();
            int sm = zsign_at(proj_, m);
            if (sm == 0) {
              iv = Interval(m);
              break;
            }
            if (sm == zsign_at(proj_, iv.lo))
              iv.lo = m;
            else
              iv.hi = m;
          }
          bool inside = iv.is_point() ? (wx_->lo < iv.lo && iv.lo < wx_->hi)
                                      : (wx_->lo < iv.lo && iv.hi < wx_->hi);
          if (!inside) continue;
        }
        roots.push_back(iv);
      }
      // pairwise disjoint
      bool again = true;
      while (again) {
        again = false;
        for (size_t i = 0; i + 1 < roots.size(); ++i)
          if (!(roots[i].hi < roots[i + 1].lo)) {
            again = true;
            roots[i] = refine_root(proj_, roots[i], roots[i].width() * Rational(1, 4));
            roots[i + 1] = refine_root(proj_, roots[i + 1], roots[i + 1].width() * Rational(1, 4));
          }
      }
    }
    for (auto& iv : roots) lines_.push_back(Line{AlgebraicPoint{proj_, iv}});

    build_stacks();
    if (!vertical_only_ && !constant_curve_)
      for (size_t r = 0; r < lines_.size(); ++r) analyze_line(r);
    for (size_t r = 0; r < lines_.size(); ++r)
      if (!lines_[r].whole_line && !vertical_only_) connect_across(r);
    // vertical-only curves: every line is a wall, nothing to connect
  }

  // --- projection-free helpers ---------------------------------------------

  Poly squarefree_bivariate(Poly p) const {
    Poly g = p;
    for (size_t v = 0; v < 2; ++v) {
      Poly d = p.diff(v);
      if (d.is_zero()) continue;
      g = bivariate_gcd(g, d);
    }
    if (g.is_constant()) return p;
    return divide_exact(p, g).primitive_part();
  }

  static Poly univ_from_z(const ZCoeffs& z, size_t idx, const std::vector<std::string>& vars) {
    std::vector<Poly> nc(z.size());
    for (size_t k = 0; k < z.size(); ++k)
      nc[k] = Poly::constant(vars, Rational(mpz_class(z[k])));
    return Poly::from_coeffs_in(idx, nc, vars);
  }

  static Poly content_wrt(const Poly& p, size_t yidx) {
    size_t xidx = yidx == 0 ? 1 : 0;
    auto cs = p.coeffs_in(yidx);
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
      g = univ_from_z(zg, xidx, p.vars());
    }
    return g.is_zero() || g.is_constant() ? Poly::constant(p.vars(), Rational(1)) : g;
  }

  static Poly bivariate_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const auto& vars = a.vars();
    if (a.degree_in(size_t{1}) == 0 && b.degree_in(size_t{1}) == 0) {
      if (a.is_constant() || b.is_constant()) return Poly::constant(vars, Rational(1));
      ZCoeffs zg = zgcd(to_integer_coeffs(a.univariate_coeffs()),
                        to_integer_coeffs(b.univariate_coeffs()));
      if (zdeg(zg) <= 0) return Poly::constant(vars, Rational(1));
      return univ_from_z(zg, 0, vars);
    }
    Poly ca = content_wrt(a, 1), cb = content_wrt(b, 1);
    Poly cont = bivariate_gcd(ca, cb);
    Poly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
    if (pa.degree_in(size_t{1}) < pb.degree_in(size_t{1})) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(size_t{1}) > 0) {
      Poly r = detail::poly_prem(pa, pb, 1);
      pa = pb;
      if (r.is_zero()) {
        pb = r;
        break;
      }
      pb = divide_exact(r, content_wrt(r, 1)).primitive_part();
      if (pa.degree_in(size_t{1}) < pb.degree_in(size_t{1})) std::swap(pa, pb);
    }
    Poly prim = Poly::constant(vars, Rational(1));
    if (pb.is_zero() && pa.degree_in(size_t{1}) > 0)
      prim = divide_exact(pa, content_wrt(pa, 1));
    return (cont * prim).primitive_part();
  }

  Poly bind_y_avoiding_edge_factor(const Rational& edge) const {
    Poly h = curve_;
    Poly fac = Poly::variable(vars_, 1) - Poly::constant(vars_, edge);
    while (true) {
      Poly b = h.bind({{1, edge}});
      if (!b.is_zero()) return b;
      h = divide_exact(h, fac);
    }
  }

  bool in_window_y(const Interval& iv, const ZCoeffs& z) const {
    if (!wy_) return true;
    // a root exactly on an edge is not strictly inside
    if (zsign_at(z, wy_->lo) == 0 && iv.contains(wy_->lo)) return false;
    if (zsign_at(z, wy_->hi) == 0 && iv.contains(wy_->hi)) return false;
    Interval r = iv;
    while (!(r.hi < wy_->lo || r.lo > wy_->hi || (wy_->lo < r.lo && r.hi < wy_->hi))) {
      if (r.is_point()) return wy_->lo < r.lo && r.lo < wy_->hi;
      Rational m = r.mid();
      int sm = zsign_at(z, m);
      if (sm == 0) {
        r = Interval(m);
        continue;
      }
      if (sm == zsign_at(z, r.lo))
        r.lo = m;
      else
        r.hi = m;
    }
    if (r.hi < wy_->lo || r.lo > wy_->hi) return false;
    return true;
  }

  // --- stacks ---------------------------------------------------------------

  void build_stacks() {
    stacks_.clear();
    cell_offset_.clear();
    if (curve_is_zero_) return;
    size_t k = lines_.size();
    Rational big(2);
    for (auto& ln : lines_) {
      Rational m = ln.x0.iv.lo.abs() > ln.x0.iv.hi.abs() ? ln.x0.iv.lo.abs() : ln.x0.iv.hi.abs();
      if (m > big) big = m;
    }
    big = pow2_above(big + Rational(1)) * Rational(2);

    for (size_t s = 0; s <= k; ++s) {
      Stack st;
      bool have_lo = s > 0, have_hi = s < k;
      st.lo = have_lo ? lines_[s - 1].x0.iv.hi : (wx_ ? wx_->lo : -big);
      st.hi = have_hi ? lines_[s].x0.iv.lo : (wx_ ? wx_->hi : big);
      st.unbounded_lo = !have_lo && !wx_;
      st.unbounded_hi = !have_hi && !wx_;
      st.x = (st.lo + st.hi) * Rational(1, 2);
      if (st.unbounded_lo && st.unbounded_hi) st.x = Rational(0);
      else if (st.unbounded_lo) st.x = lines_[0].x0.iv.lo - Rational(1);
      else if (st.unbounded_hi) st.x = lines_[k - 1].x0.iv.hi + Rational(1);
      if (!proj_.empty() && zdeg(proj_) > 0 && zsign_at(proj_, st.x) == 0)
        throw std::logic_error("PlaneCad: sample abscissa hit a critical value");
      build_one_stack(st);
      stacks_.push_back(std::move(st));
    }
    cell_offset_.assign(stacks_.size() + 1, 0);
    for (size_t s = 0; s < stacks_.size(); ++s)
      cell_offset_[s + 1] = cell_offset_[s] + stacks_[s].gaps.size();
    uf_parent_.assign(cell_count(), 0);
    std::iota(uf_parent_.begin(), uf_parent_.end(), size_t{0});
  }

  void build_one_stack(Stack& st) const {
    st.branches.clear();
    st.gaps.clear();
    if (constant_curve_) {
      st.gaps.push_back(wy_ ? wy_->mid() : Rational(0));
      return;
    }
    Poly fib = curve_.bind({{0, st.x}});
    if (fib.is_zero()) throw std::logic_error("PlaneCad: fiber vanished at a sample abscissa");
    std::vector<Interval> roots;
    ZCoeffs z;
    if (!fib.is_constant()) {
      z = to_integer_coeffs(fib.univariate_coeffs());
      for (auto iv : isolate_roots(z))
        if (in_window_y(iv, z)) roots.push_back(iv);
      bool again = true;
      while (again) {
        again = false;
        for (size_t i = 0; i + 1 < roots.size(); ++i)
          if (!(roots[i].hi < roots[i + 1].lo)) {
            again = true;
            roots[i] = refine_root(z, roots[i], roots[i].width() * Rational(1, 4));
            roots[i + 1] = refine_root(z, roots[i + 1], roots[i + 1].width() * Rational(1, 4));
          }
      }
      if (wy_) {
        // window boundaries may still overlap an interval endpoint; shrink away
        for (auto& iv : roots)
          while (!(wy_->lo < iv.lo && iv.hi < wy_->hi))
            iv = refine_root(z, iv, iv.width() * Rational(1, 4));
      }
    }
    st.branches = roots;
    for (size_t g = 0; g <= roots.size(); ++g) {
      Rational m;
      if (roots.empty()) {
        m = wy_ ? wy_->mid() : Rational(0);
      } else if (g == 0) {
        m = wy_ ? (wy_->lo + roots[0].lo) * Rational(1, 2) : roots[0].lo - Rational(1);
      } else if (g == roots.size()) {
        m = wy_ ? (roots.back().hi + wy_->hi) * Rational(1, 2) : roots.back().hi + Rational(1);
      } else {
        m = (roots[g - 1].hi + roots[g].lo) * Rational(1, 2);
      }
      st.gaps.push_back(m);
    }
  }

  // --- critical-line analysis ----------------------------------------------

  const SturmYChain& chain_for_trim(size_t k) const {
    while (chains_.size() <= k) chains_.push_back(nullptr);
    if (!chains_[k]) {
      auto cs = curve_.coeffs_in(size_t{1});
      std::vector<Poly> trimmed(cs.begin(), cs.end() - static_cast<long>(k));
      Poly p = Poly::from_coeffs_in(1, trimmed, vars_);
      chains_[k] = std::make_unique<SturmYChain>(p, 1);
      trims_.resize(std::max(trims_.size(), k + 1));
      trims_[k] = p;
    }
    return *chains_[k];
  }
  const Poly& trimmed_curve(size_t k) const {
    chain_for_trim(k);
    return trims_[k];
  }

  void analyze_line(size_t r) const {
    Line& ln = lines_[r];
    auto cs = curve_.coeffs_in(size_t{1});
    size_t trim = 0;
    while (trim < cs.size()) {
      Poly top = cs[cs.size() - 1 - trim];
      if (!top.is_zero() && ln.x0.sign_of_poly(top) != 0) break;
      ++trim;
    }
    if (trim >= cs.size()) {
      ln.whole_line = true;
      return;
    }
    ln.trim = trim;
    const Poly& P = trimmed_curve(trim);
    if (P.degree_in(size_t{1}) == 0) {
      // after trimming, no y-dependence at this abscissa: no curve points here
      return;
    }
    const SturmYChain& chain = chain_for_trim(trim);
    auto corr = chain.corrections(ln.x0);
    if (!corr)
      throw std::domain_error("PlaneCad: degenerate Sturm chain at a critical line");

    // root bound for P(x0, .)
    Rational B = fiber_bound(P, ln.x0);
    auto nonroot = [&](Rational t) {
      Poly b = P.bind({{1, t}});
      return !ln.x0.is_root_of(to_integer_coeffs(b.univariate_coeffs()));
    };
    // ensure non-root endpoints
    while (!nonroot(B)) B = B * Rational(2);
    Rational A = -B;
    while (!nonroot(A)) A = A * Rational(2);

    struct Seg {
      Rational a, b;
      int count;
    };
    std::vector<Interval> isolated;
    std::vector<Seg> work;
    int total = chain.count(ln.x0, *corr, A, B);
    if (total > 0) work.push_back({A, B, total});
    while (!work.empty()) {
      Seg sg = work.back();
      work.pop_back();
      if (sg.count == 1) {
        isolated.push_back(Interval(sg.a, sg.b));
        continue;
      }
      // split at a non-root dyadic point
      Rational m = (sg.a + sg.b) * Rational(1, 2);
      Rational step = (sg.b - sg.a) * Rational(1, 8);
      int tries = 0;
      while (!nonroot(m)) {
        m = m + step;
        step = step * Rational(1, 2);
        if (++tries > 64) throw std::logic_error("PlaneCad: cannot find a non-root split");
      }
      int left = chain.count(ln.x0, *corr, sg.a, m);
      if (left > 0) work.push_back({sg.a, m, left});
      if (sg.count - left > 0) work.push_back({m, sg.b, sg.count - left});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    // shrink until pairwise disjoint (bisection with exact counts)
    auto narrow = [&](Interval& iv) {
      Rational m = (iv.lo + iv.hi) * Rational(1, 2);
      Rational step = (iv.hi - iv.lo) * Rational(1, 8);
      int tries = 0;
      while (!nonroot(m)) {
        m = m + step;
        step = step * Rational(1, 2);
        if (++tries > 64) throw std::logic_error("PlaneCad: cannot narrow a fiber root");
      }
      if (chain.count(ln.x0, *corr, iv.lo, m) == 1)
        iv.hi = m;
      else
        iv.lo = m;
    };
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = 0; i + 1 < isolated.size(); ++i)
        if (!(isolated[i].hi < isolated[i + 1].lo)) {
          again = true;
          narrow(isolated[i]);
          narrow(isolated[i + 1]);
        }
    }
    ln.fiber = std::move(isolated);
    ln.in_window.assign(ln.fiber.size(), 1);
    if (wy_) {
      // clip to the open window; a fiber point exactly on an edge is excluded
      // (the sentinel encoding of the bins handles branches limiting to it)
      bool root_lo = !nonroot(wy_->lo);
      bool root_hi = !nonroot(wy_->hi);
      for (size_t i = 0; i < ln.fiber.size(); ++i) {
        Interval& f = ln.fiber[i];
        while (true) {
          if (f.hi < wy_->lo || f.lo > wy_->hi) {
            ln.in_window[i] = 0;
            break;
          }
          if (wy_->lo < f.lo && f.hi < wy_->hi) break;  // strictly inside
          // the isolated root coincides with an edge exactly when the edge is a
          // root lying inside this isolating interval
          if ((root_lo && f.contains(wy_->lo)) || (root_hi && f.contains(wy_->hi))) {
            ln.in_window[i] = 0;
            break;
          }
          narrow(f);
        }
      }
    }
  }

  Rational fiber_bound(const Poly& P, AlgebraicPoint& x0) const {
    auto cs = P.coeffs_in(size_t{1});
    // refine until the leading coefficient interval excludes zero
    Poly lc = cs.back();
    Interval lv = eval_over(lc, x0.iv);
    while (lv.sign() == 0) {
      x0.refine();
      lv = eval_over(lc, x0.iv);
    }
    Rational lmin = lv.lo.abs() < lv.hi.abs() ? lv.lo.abs() : lv.hi.abs();
    if (lv.contains_zero()) throw std::logic_error("fiber_bound: leading coefficient ambiguous");
    Rational maxr(0);
    for (size_t k = 0; k + 1 < cs.size(); ++k) {
      Interval cv = eval_over(cs[k], x0.iv);
      Rational m = cv.lo.abs() > cv.hi.abs() ? cv.lo.abs() : cv.hi.abs();
      if (m > maxr) maxr = m;
    }
    return pow2_above(maxr / lmin + Rational(2));
  }

  static Interval eval_over(const Poly& p, const Interval& x) {
    if (p.is_zero()) return Interval(Rational(0));
    if (p.is_constant()) return Interval(p.constant_value());
    RatVec c = p.univariate_coeffs();
    Interval acc{Rational(0)};
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + Interval(c[k]);
    return acc;
  }

  // --- adjacency -------------------------------------------------------------

  size_t find(size_t a) const {
    while (uf_parent_[a] != a) a = uf_parent_[a];
    return a;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      uf_parent_[b] = a;
    else
      uf_parent_[a] = b;
  }

  void connect_across(size_t r) {
    Line& ln = lines_[r];
    Stack& L = stacks_[r];
    Stack& R = stacks_[r + 1];

    // in-window fiber points in order
    std::vector<Interval> fiber;
    for (size_t i = 0; i < ln.fiber.size(); ++i)
      if (ln.in_window[i]) fiber.push_back(ln.fiber[i]);
    size_t q = fiber.size();

    const Poly& P = trimmed_curve(ln.trim);

    // cuts interleaving the fiber points; bottom/top cuts omitted when the
    // extreme fiber point sits exactly on the window edge
    std::vector<Rational> cuts;
    std::vector<int> bin_limit;
    Rational big(2);
    for (auto& f : fiber) {
      Rational m = f.lo.abs() > f.hi.abs() ? f.lo.abs() : f.hi.abs();
      if (m > big) big = m;
    }
    for (auto& b : L.branches) {
      Rational m = b.lo.abs() > b.hi.abs() ? b.lo.abs() : b.hi.abs();
      if (m > big) big = m;
    }
    for (auto& b : R.branches) {
      Rational m = b.lo.abs() > b.hi.abs() ? b.lo.abs() : b.hi.abs();
      if (m > big) big = m;
    }
    big = pow2_above(big + Rational(1)) * Rational(2);

    if (q == 0) {
      cuts = {wy_ ? wy_->mid() : Rational(0)};
      bin_limit = {0, 1};
    } else {
      cuts.push_back(wy_ ? (wy_->lo + fiber.front().lo) * Rational(1, 2) : -big);
      bin_limit.push_back(0);
      for (size_t i = 0; i + 1 < q; ++i)
        cuts.push_back((fiber[i].hi + fiber[i + 1].lo) * Rational(1, 2));
      for (size_t i = 1; i <= q; ++i) bin_limit.push_back(static_cast<int>(i));
      cuts.push_back(wy_ ? (fiber.back().hi + wy_->hi) * Rational(1, 2) : big);
      bin_limit.push_back(static_cast<int>(q) + 1);
    }

    auto limits_for = [&](Stack& S, bool left_side) {
      std::vector<int> branch_limit(S.branches.size(), 0);
      if (S.branches.empty()) return branch_limit;
      Rational a = settle_abscissa(r, cuts, left_side, S, P);
      Poly fib = curve_.bind({{0, a}});
      ZCoeffs z = to_integer_coeffs(fib.univariate_coeffs());
      std::vector<Interval> roots;
      for (auto iv : isolate_roots(z))
        if (in_window_y(iv, z)) roots.push_back(iv);
      if (roots.size() != S.branches.size())
        throw std::logic_error("PlaneCad: branch count changed inside an interval");
      for (size_t b = 0; b < roots.size(); ++b) {
        Interval iv = roots[b];
        int below = 0;
        for (auto& u : cuts) {
          while (iv.contains(u)) {
            if (iv.is_point()) throw std::logic_error("PlaneCad: branch collided with a cut");
            Rational m = iv.mid();
            int sm = zsign_at(z, m);
            if (sm == 0) {
              iv = Interval(m);
              continue;
            }
            if (sm == zsign_at(z, iv.lo))
              iv.lo = m;
            else
              iv.hi = m;
          }
          if (iv.lo > u) ++below;
        }
        branch_limit[b] = bin_limit[static_cast<size_t>(below)];
      }
      return branch_limit;
    };

    std::vector<int> lb = limits_for(L, true);
    std::vector<int> rb = limits_for(R, false);
    int top_index = static_cast<int>(q) + 1;
    const int smin = 0, smax = static_cast<int>(q);

    auto gap_limits = [&](const Stack& S, const std::vector<int>& bl, size_t g) {
      int lo = g == 0 ? 0 : bl[g - 1];
      int hi = g == S.branches.size() ? top_index : bl[g];
      return std::pair<int, int>(lo, hi);
    };
    for (size_t gl = 0; gl < L.gaps.size(); ++gl) {
      auto [llo, lhi] = gap_limits(L, lb, gl);
      for (size_t gr = 0; gr < R.gaps.size(); ++gr) {
        auto [rlo, rhi] = gap_limits(R, rb, gr);
        int s_lo = std::max({llo, rlo, smin});
        int s_hi = std::min({lhi - 1, rhi - 1, smax});
        if (s_lo <= s_hi) unite(cell_id(r, gl), cell_id(r + 1, gr));
      }
    }
  }

  Rational settle_abscissa(size_t r, const std::vector<Rational>& cuts, bool left_side,
                           const Stack& S, const Poly& P) {
    Interval rint = lines_[r].x0.iv;
    std::vector<Interval> crossings;
    for (auto& u : cuts) {
      Poly hu = curve_.bind({{1, u}});
      if (hu.is_zero()) throw std::logic_error("PlaneCad: cut line lies inside the curve");
      if (hu.is_constant()) continue;
      ZCoeffs z = zsquarefree(to_integer_coeffs(hu.univariate_coeffs()));
      for (auto iv : isolate_roots(z)) {
        while (!(iv.hi < rint.lo || iv.lo > rint.hi)) {
          if (!iv.is_point()) {
            Rational m = iv.mid();
            int sm = zsign_at(z, m);
            if (sm == 0) {
              iv = Interval(m);
              continue;
            }
            if (sm == zsign_at(z, iv.lo))
              iv.lo = m;
            else
              iv.hi = m;
          } else {
            if (rint.is_point())
              throw std::logic_error("PlaneCad: crossing equals the critical abscissa");
            lines_[r].x0.refine();
            rint = lines_[r].x0.iv;
          }
        }
        crossings.push_back(iv);
      }
    }
    lines_[r].x0.iv = rint;
    if (left_side) {
      Rational lo = S.lo;
      for (auto& c : crossings)
        if (c.hi < rint.lo && c.hi > lo) lo = c.hi;
      if (!(lo < rint.lo)) throw std::logic_error("PlaneCad: cannot settle on the left");
      return (lo + rint.lo) * Rational(1, 2);
    }
    Rational hi = S.hi;
    for (auto& c : crossings)
      if (c.lo > rint.hi && c.lo < hi) hi = c.lo;
    if (!(rint.hi < hi)) throw std::logic_error("PlaneCad: cannot settle on the right");
    return (rint.hi + hi) * Rational(1, 2);
  }

  std::vector<std::string> vars_;
  Poly curve_;
  bool curve_is_zero_ = false;
  bool constant_curve_ = false;
  bool vertical_only_ = false;
  std::optional<Interval> wx_, wy_;
  ZCoeffs proj_;
  mutable std::vector<Line> lines_;
  std::vector<Stack> stacks_;
  std::vector<size_t> cell_offset_;
  mutable std::vector<size_t> uf_parent_;
  mutable std::vector<std::unique_ptr<SturmYChain>> chains_;
  mutable std::vector<Poly> trims_;
};

}  // namespace cuspidal

#endif
