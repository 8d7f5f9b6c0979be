#ifndef CUSPIDAL_SAMPLES_HPP
#define CUSPIDAL_SAMPLES_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cuspidal/atypical.hpp"
#include "cuspidal/cad.hpp"
#include "cuspidal/poly.hpp"

namespace cuspidal {

/// Rational points meeting every connected component of the complement of the
/// generator hypersurfaces, with exact sign certificates.
struct SampleSet {
  std::vector<RatVec> points;
  std::vector<std::vector<int>> sign_vectors;  // per point, sign of each generator
};

namespace detail {

inline std::vector<Rational> line_samples(const Poly& g) {
  // univariate case: midpoints between isolated roots plus outer points
  std::vector<Rational> out;
  if (g.is_constant()) {
    out.push_back(Rational(0));
    return out;
  }
  Poly sf = squarefree(g);
  ZCoeffs z = to_integer_coeffs(sf.univariate_coeffs());
  auto roots = isolate_roots(z);
  if (roots.empty()) {
    out.push_back(Rational(0));
    return out;
  }
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
  Rational maxr(0);
  Rational lead = Rational(mpz_class(z.back())).abs();
  for (size_t i = 0; i + 1 < z.size(); ++i) {
    Rational r = Rational(mpz_class(z[i])).abs() / lead;
    if (r > maxr) maxr = r;
  }
  Rational bound = pow2_above(maxr + Rational(1));
  out.push_back(-(Rational(1) + bound));
  for (size_t i = 0; i + 1 < roots.size(); ++i)
    out.push_back((roots[i].hi + roots[i + 1].lo) * Rational(1, 2));
  out.push_back(Rational(1) + bound);
  return out;
}

inline Poly generator_product(const std::vector<Poly>& gens,
                              const std::vector<std::string>& vars) {
  Poly G = Poly::constant(vars, Rational(1));
  bool any = false;
  for (auto& g : gens) {
    if (g.is_zero()) throw std::invalid_argument("sample_complement: zero generator");
    if (g.is_constant()) continue;
    G *= g.with_context(vars);
    any = true;
  }
  return any ? G : Poly(vars);
}

}  // namespace detail

/// One rational point per connected component of R^d - V(g) (d <= 3), by an
/// open cylindrical decomposition; deterministic; every point carries the
/// exact nonzero sign of each generator.
inline SampleSet sample_complement(const ValueLocus& locus) {
  size_t d = locus.value_vars.size();
  if (d < 1 || d > 3)
    throw std::invalid_argument("sample_complement: sweep engine limited to 1 <= d <= 3");

  std::vector<RatVec> pts;
  Poly G = detail::generator_product(locus.generators, locus.value_vars);

  if (G.is_zero()) {  // no constraints: the space is one component
    pts.push_back(RatVec(d, Rational(0)));
  } else if (d == 1) {
    for (auto& x : detail::line_samples(G)) pts.push_back({x});
  } else if (d == 2) {
    PlaneCad cad(G);
    for (auto& [cell, p] : cad.region_samples()) pts.push_back(p);
  } else {
    // d == 3
    if (locus.provenance.rotation_invariant) {
      // every generator is invariant under rotations in the (val_a, val_b)
      // plane, so the slice {y_b = 0} meets every component of the complement
      size_t a = locus.provenance.val_a, b = locus.provenance.val_b;
      size_t other = 3 - a - b;
      std::vector<std::string> slice_vars = {locus.value_vars[a], locus.value_vars[other]};
      Poly Gs = G.bind({{b, Rational(0)}}).restricted_to(slice_vars);
      if (Gs.is_zero())
        throw std::logic_error("sample_complement: generator vanishes on the slice plane");
      PlaneCad cad(Gs);
      for (auto& [cell, p] : cad.region_samples()) {
        RatVec q(3, Rational(0));
        q[a] = p[0];
        q[other] = p[1];
        pts.push_back(q);
      }
    } else {
      // generic sweep: project out the last variable, then recurse on the plane
      // (where all coefficients vanish the leading one does too, so disc * lc
      // covers the content locus as well)
      size_t zi = 2;
      Poly F = G;
      Poly Fz = F.diff(zi);
      std::vector<std::string> xy = {locus.value_vars[0], locus.value_vars[1]};
      Poly proj2 = Poly::constant(locus.value_vars, Rational(1));
      if (F.degree_in(zi) == 0) {
        proj2 = F;  // no z-dependence: sample the plane arrangement of F itself
      } else {
        Poly disc = resultant(F, Fz, locus.value_vars[zi]);
        if (disc.is_zero())
          throw std::invalid_argument(
              "sample_complement: generators share a repeated factor in the sweep direction");
        if (!disc.is_constant()) proj2 *= disc;
        Poly lc = F.coeffs_in(zi).back();
        if (!lc.is_constant()) proj2 *= lc;
      }
      std::vector<RatVec> plane_pts;
      if (proj2.is_constant()) {
        plane_pts.push_back({Rational(0), Rational(0)});
      } else {
        PlaneCad cad(proj2.restricted_to(xy));
        for (auto& [cell, p] : cad.region_samples()) plane_pts.push_back(p);
      }
      for (auto& p : plane_pts) {
        Poly fz = F.bind({{0, p[0]}, {1, p[1]}});
        std::vector<Rational> zs;
        if (fz.is_zero())
          throw std::logic_error("sample_complement: vertical line inside the locus");
        if (fz.is_constant()) {
          zs.push_back(Rational(0));
        } else {
          Poly uni = fz.restricted_to({locus.value_vars[zi]});
          for (auto& x : detail::line_samples(uni)) zs.push_back(x);
        }
        for (auto& zv : zs) pts.push_back({p[0], p[1], zv});
      }
    }
  }

  // dedupe, deterministic order, exact certificates
  std::sort(pts.begin(), pts.end(), [](const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatVec& a, const RatVec& b) {
                          for (size_t i = 0; i < a.size(); ++i)
                            if (a[i] != b[i]) return false;
                          return true;
                        }),
            pts.end());

  SampleSet out;
  for (auto& p : pts) {
    std::vector<int> sv;
    for (auto& g : locus.generators) {
      int s = g.with_context(locus.value_vars).eval(p).sign();
      if (s == 0)
        throw std::logic_error("sample_complement: a sample point lies on a generator");
      sv.push_back(s);
    }
    out.points.push_back(p);
    out.sign_vectors.push_back(std::move(sv));
  }
  return out;
}

}  // namespace cuspidal

#endif
