#ifndef CUSPIDAL_ATYPICAL_HPP
#define CUSPIDAL_ATYPICAL_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/groebner.hpp"
#include "cuspidal/poly.hpp"
#include "cuspidal/varieties.hpp"

namespace cuspidal {

/// Generators (in value variables) of a proper algebraic set containing the
/// closure of the singular/atypical values.
struct ValueLocus {
  std::vector<std::string> value_vars;
  std::vector<Poly> generators;

  struct Provenance {
    std::string route;  // "rotation-reduced" or "direct"
    mpz_class degree_bound = 0;
    std::string nonproper = "not applicable";
    // populated on the rotation-reduced route: generators in (t, other values)
    // with t standing for y_a^2 + y_b^2
    bool rotation_invariant = false;
    size_t val_a = 0, val_b = 0;
    std::vector<std::string> reduced_vars;
    std::vector<Poly> reduced_generators;
  } provenance;
};

/// The degree bound delta^(n-d) * (n*delta + d*(mu-delta))^d on the atypical
/// hypersurface, with delta = max deg f and mu = max deg r.
inline mpz_class atypical_degree_bound(const InputSystem& sys) {
  long n = static_cast<long>(sys.n()), d = static_cast<long>(sys.d());
  long delta = 0, mu = 0;
  for (auto& f : sys.equations) delta = std::max(delta, static_cast<long>(f.degree()));
  for (auto& r : sys.map) mu = std::max(mu, static_cast<long>(r.degree()));
  mpz_class base(n * delta + d * (mu - delta));
  mpz_class b;
  mpz_pow_ui(b.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d));
  mpz_class lead;
  mpz_class dd(delta);
  mpz_pow_ui(lead.get_mpz_t(), dd.get_mpz_t(), static_cast<unsigned long>(n - d));
  return lead * b;
}

namespace detail {

inline std::vector<std::string> value_var_names(size_t d) {
  std::vector<std::string> v;
  for (size_t i = 1; i <= d; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

inline void sort_generators(std::vector<Poly>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
    return a.str() < b.str();
  });
}

}  // namespace detail

/// Image of the critical locus in value space: eliminates the x-variables from
/// <f, minors, y - r>. When the system carries the rotation structure and the
/// critical equations are free of the rotating pair, the elimination runs in
/// the reduced variables with t = y_a^2 + y_b^2 substituted at the end.
inline ValueLocus singular_values(const InputSystem& sys, const CritSystem& crit,
                                  const GroebnerBudget& budget = {}) {
  size_t n = sys.n(), d = sys.d();
  ValueLocus out;
  out.value_vars = detail::value_var_names(d);
  out.provenance.degree_bound = atypical_degree_bound(sys);

  // normal forms of the minors modulo the (often already reduced) basis of f
  auto fgb = groebner_basis(sys.equations, MonomialOrder::grevlex(), budget);
  std::vector<Poly> minors_nf;
  for (auto& m : crit.minors) {
    Poly nf = normal_form(m, fgb, MonomialOrder::grevlex(), budget);
    minors_nf.push_back(nf.is_zero() ? nf : nf.primitive_part());
  }

  auto rs = detect_rotation_structure(sys);
  bool reduced_ok = false;
  if (rs) {
    reduced_ok = true;
    for (auto& m : minors_nf)
      if (m.depends_on(rs->cos_idx) || m.depends_on(rs->sin_idx)) reduced_ok = false;
    for (size_t e = 0; e < sys.equations.size(); ++e) {
      if (e == rs->circle_equation_idx) continue;
      if (sys.equations[e].depends_on(rs->cos_idx) || sys.equations[e].depends_on(rs->sin_idx))
        reduced_ok = false;
    }
  }

  if (reduced_ok) {
    // reduced x-variables, then the value block (t, remaining y's)
    std::vector<std::string> xred;
    for (size_t i = 0; i < n; ++i)
      if (i != rs->cos_idx && i != rs->sin_idx) xred.push_back(sys.vars[i]);
    std::vector<std::string> vblock = {"t"};
    for (size_t k = 0; k < d; ++k)
      if (k != rs->val_a && k != rs->val_b) vblock.push_back(out.value_vars[k]);
    std::vector<std::string> ctx = xred;
    for (auto& v : vblock) ctx.push_back(v);

    std::vector<Poly> gens;
    for (size_t e = 0; e < sys.equations.size(); ++e) {
      if (e == rs->circle_equation_idx) continue;
      gens.push_back(sys.equations[e].restricted_to(xred).with_context(ctx));
    }
    for (auto& m : minors_nf)
      if (!m.is_zero()) gens.push_back(m.restricted_to(xred).with_context(ctx));
    Poly tpoly = (rs->A * rs->A + rs->B * rs->B).restricted_to(xred).with_context(ctx);
    gens.push_back(Poly::variable(ctx, xred.size()) - tpoly);
    size_t pos = xred.size() + 1;
    for (size_t k = 0; k < d; ++k) {
      if (k == rs->val_a || k == rs->val_b) continue;
      gens.push_back(Poly::variable(ctx, pos++) -
                     sys.map[k].restricted_to(xred).with_context(ctx));
    }

    auto kept = eliminate_block(gens, xred.size(), budget);
    std::vector<std::string> redvars = vblock;
    out.provenance.route = "rotation-reduced";
    out.provenance.rotation_invariant = true;
    out.provenance.val_a = rs->val_a;
    out.provenance.val_b = rs->val_b;
    out.provenance.reduced_vars = redvars;
    // substitute t -> y_a^2 + y_b^2
    Poly tsub = Poly::variable(out.value_vars, rs->val_a) * Poly::variable(out.value_vars, rs->val_a) +
                Poly::variable(out.value_vars, rs->val_b) * Poly::variable(out.value_vars, rs->val_b);
    for (auto& g : kept) {
      Poly gr = g.restricted_to(redvars);
      out.provenance.reduced_generators.push_back(gr.primitive_part());
      // rebuild over value vars: t replaced by the rotation invariant
      Poly acc(out.value_vars);
      for (auto& [e, c] : gr.terms()) {
        Poly term = Poly::constant(out.value_vars, c);
        term *= tsub.pow(static_cast<unsigned>(e[0]));
        size_t rp = 1;
        for (size_t k = 0; k < d; ++k) {
          if (k == rs->val_a || k == rs->val_b) continue;
          term *= Poly::variable(out.value_vars, k).pow(static_cast<unsigned>(e[rp]));
          ++rp;
        }
        acc += term;
      }
      if (!acc.is_zero()) out.generators.push_back(acc.primitive_part());
    }
  } else {
    std::vector<std::string> ctx = sys.vars;
    for (auto& v : out.value_vars) ctx.push_back(v);
    std::vector<Poly> gens;
    for (auto& f : sys.equations) gens.push_back(f.with_context(ctx));
    for (auto& m : minors_nf)
      if (!m.is_zero()) gens.push_back(m.with_context(ctx));
    for (size_t k = 0; k < d; ++k)
      gens.push_back(Poly::variable(ctx, n + k) - sys.map[k].with_context(ctx));
    auto kept = eliminate_block(gens, n, budget);
    out.provenance.route = "direct";
    for (auto& g : kept)
      out.generators.push_back(g.restricted_to(out.value_vars).primitive_part());
  }

  detail::sort_generators(out.generators);
  return out;
}

/// Atypical values under the boundedness precondition: the non-properness set
/// is empty, so this is exactly the singular-value locus. The degree bound is
/// asserted on every run.
inline ValueLocus atypical_values(const InputSystem& sys, const CritSystem& crit,
                                  const GroebnerBudget& budget = {}) {
  if (!sys.bounded)
    throw std::invalid_argument(
        "atypical_values: non-properness computation unsupported; the variety must be bounded "
        "(set the bounded flag or use a circle-constrained system)");
  ValueLocus locus = singular_values(sys, crit, budget);
  locus.provenance.nonproper = "empty: the variety is bounded, the map restriction is proper";
  for (auto& g : locus.generators) {
    if (mpz_class(g.degree()) > locus.provenance.degree_bound)
      throw std::logic_error("atypical_values: generator degree exceeds the admissible bound");
  }
  return locus;
}

}  // namespace cuspidal

#endif
