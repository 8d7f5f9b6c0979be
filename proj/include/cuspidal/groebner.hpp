#ifndef CUSPIDAL_GROEBNER_HPP
#define CUSPIDAL_GROEBNER_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspidal/poly.hpp"

namespace cuspidal {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Monomial order: grevlex, lex, or a two-block elimination order
/// (first `block` variables dominate; grevlex inside each block).
struct MonomialOrder {
  enum Kind { Grevlex, Lex, Block };
  Kind kind = Grevlex;
  size_t block = 0;

  static MonomialOrder grevlex() { return {Grevlex, 0}; }
  static MonomialOrder lex() { return {Lex, 0}; }
  static MonomialOrder elimination(size_t leading_block) { return {Block, leading_block}; }

  static bool grevlex_less_range(const Expo& a, const Expo& b, size_t lo, size_t hi) {
    int da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db;
    for (size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }

  bool less(const Expo& a, const Expo& b) const {
    switch (kind) {
      case Grevlex:
        return grevlex_less_range(a, b, 0, a.size());
      case Lex:
        for (size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] < b[i];
        return false;
      case Block:
        if (grevlex_less_range(a, b, 0, block)) return true;
        if (grevlex_less_range(b, a, 0, block)) return false;
        return grevlex_less_range(a, b, block, a.size());
    }
    return false;
  }
  bool equal(const Expo& a, const Expo& b) const { return a == b; }
};

namespace detail {

// Term list sorted leading-first under a fixed order, primitive integer coefficients.
struct GPoly {
  std::vector<std::pair<Expo, Rational>> t;
  int sugar = 0;

  bool zero() const { return t.empty(); }
  const Expo& lead() const { return t.front().first; }
  const Rational& lc() const { return t.front().second; }
  int degree() const {
    int d = -1;
    for (auto& [e, c] : t) d = std::max(d, total_degree(e));
    return d;
  }

  void normalize() {
    if (t.empty()) return;
    mpz_class g(0), l(1);
    for (auto& [e, c] : t) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    }
    Rational f{mpq_class(g, l)};
    if (t.front().second.sign() < 0) f = -f;
    for (auto& [e, c] : t) c /= f;
  }
};

inline GPoly to_gpoly(const Poly& p, const MonomialOrder& ord) {
  GPoly g;
  g.t.assign(p.terms().begin(), p.terms().end());
  std::sort(g.t.begin(), g.t.end(),
            [&](const auto& a, const auto& b) { return ord.less(b.first, a.first); });
  g.sugar = p.degree();
  g.normalize();
  return g;
}

inline Poly from_gpoly(const GPoly& g, const std::vector<std::string>& vars) {
  Poly p(vars);
  for (auto& [e, c] : g.t) p.set_term(e, c);
  return p;
}

inline bool divides(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

// r -= c * x^shift * g, keeping r sorted under ord.
inline void axpy_shift(GPoly& r, const Rational& c, const Expo& shift, const GPoly& g,
                       const MonomialOrder& ord) {
  std::vector<std::pair<Expo, Rational>> add;
  add.reserve(g.t.size());
  for (auto& [e, k] : g.t) {
    Expo ne(e);
    for (size_t i = 0; i < ne.size(); ++i) ne[i] += shift[i];
    add.emplace_back(std::move(ne), -(c * k));
  }
  std::vector<std::pair<Expo, Rational>> merged;
  merged.reserve(r.t.size() + add.size());
  size_t i = 0, j = 0;
  while (i < r.t.size() || j < add.size()) {
    bool take_r;
    if (i >= r.t.size())
      take_r = false;
    else if (j >= add.size())
      take_r = true;
    else if (r.t[i].first == add[j].first) {
      Rational s = r.t[i].second + add[j].second;
      if (!s.is_zero()) merged.emplace_back(r.t[i].first, std::move(s));
      ++i;
      ++j;
      continue;
    } else {
      take_r = ord.less(add[j].first, r.t[i].first);
    }
    if (take_r)
      merged.push_back(std::move(r.t[i++]));
    else
      merged.push_back(std::move(add[j++]));
  }
  r.t = std::move(merged);
}

}  // namespace detail

struct GroebnerBudget {
  long max_reductions = 2000000;  // leading-term cancellations
  long max_basis = 4000;
};

namespace detail {

struct GroebnerRun {
  const MonomialOrder ord;
  GroebnerBudget budget;
  long reductions = 0;

  void tick() {
    if (++reductions > budget.max_reductions)
      throw BudgetExceeded("groebner: reduction budget exceeded");
  }

  // Full normal form of p modulo basis. `rescale` trims coefficients to a
  // primitive integer form; callers that need the exact value pass false.
  GPoly normal_form(GPoly p, const std::vector<GPoly>& basis, bool rescale = true) {
    GPoly out;
    out.sugar = p.sugar;
    while (!p.zero()) {
      bool reduced = false;
      for (auto& g : basis) {
        if (g.zero()) continue;
        if (divides(g.lead(), p.lead())) {
          Expo shift(p.lead().size());
          for (size_t i = 0; i < shift.size(); ++i) shift[i] = p.lead()[i] - g.lead()[i];
          Rational c = p.lc() / g.lc();
          axpy_shift(p, c, shift, g, ord);
          tick();
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        out.t.push_back(std::move(p.t.front()));
        p.t.erase(p.t.begin());
      }
    }
    if (rescale) out.normalize();
    return out;
  }

  GPoly s_poly(const GPoly& f, const GPoly& g) {
    Expo l = expo_lcm(f.lead(), g.lead());
    Expo sf(l.size()), sg(l.size());
    for (size_t i = 0; i < l.size(); ++i) {
      sf[i] = l[i] - f.lead()[i];
      sg[i] = l[i] - g.lead()[i];
    }
    GPoly r;
    r.sugar = std::max(f.sugar + total_degree(sf), g.sugar + total_degree(sg));
    // r = (1/lc f) x^sf f - (1/lc g) x^sg g
    for (auto& [e, c] : f.t) {
      Expo ne(e);
      for (size_t i = 0; i < ne.size(); ++i) ne[i] += sf[i];
      r.t.emplace_back(std::move(ne), c / f.lc());
    }
    std::sort(r.t.begin(), r.t.end(),
              [&](const auto& a, const auto& b) { return ord.less(b.first, a.first); });
    axpy_shift(r, Rational(1) / g.lc(), sg, g, ord);
    return r;
  }
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens` under `ord`.
/// Deterministic; throws BudgetExceeded when the work cap is hit.
inline std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& ord,
                                        const GroebnerBudget& budget = {}) {
  using detail::GPoly;
  if (gens.empty()) return {};
  const auto& vars = gens.front().vars();
  detail::GroebnerRun run{ord, budget};

  std::vector<GPoly> basis;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    basis.push_back(detail::to_gpoly(g.with_context(vars), ord));
  }
  if (basis.empty()) return {};

  struct Pair {
    size_t i, j;
    Expo lcm;
    int sugar;
  };
  std::vector<Pair> pairs;
  auto push_pairs = [&](size_t jnew) {
    for (size_t i = 0; i < jnew; ++i) {
      if (basis[i].zero()) continue;
      Expo l = detail::expo_lcm(basis[i].lead(), basis[jnew].lead());
      int sugar = std::max(basis[i].sugar + total_degree(l) - total_degree(basis[i].lead()),
                           basis[jnew].sugar + total_degree(l) - total_degree(basis[jnew].lead()));
      pairs.push_back({i, jnew, std::move(l), sugar});
    }
  };
  for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

  auto coprime = [](const Expo& a, const Expo& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] > 0 && b[i] > 0) return false;
    return true;
  };

  while (!pairs.empty()) {
    // sugar strategy with deterministic tie-breaking
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k) {
      const Pair &a = pairs[k], &b = pairs[best];
      if (a.sugar != b.sugar ? a.sugar < b.sugar
                             : (a.lcm != b.lcm ? ord.less(a.lcm, b.lcm)
                                               : std::tie(a.i, a.j) < std::tie(b.i, b.j)))
        best = k;
    }
    Pair pr = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<long>(best));

    if (basis[pr.i].zero() || basis[pr.j].zero()) continue;
    if (coprime(basis[pr.i].lead(), basis[pr.j].lead())) continue;
    // chain criterion
    bool skip = false;
    for (size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j || basis[k].zero()) continue;
      if (!detail::divides(basis[k].lead(), pr.lcm)) continue;
      Expo lik = detail::expo_lcm(basis[pr.i].lead(), basis[k].lead());
      Expo lkj = detail::expo_lcm(basis[k].lead(), basis[pr.j].lead());
      if (lik != pr.lcm && lkj != pr.lcm) skip = true;
    }
    if (skip) continue;

    GPoly s = run.s_poly(basis[pr.i], basis[pr.j]);
    GPoly nf = run.normal_form(std::move(s), basis);
    if (nf.zero()) continue;
    basis.push_back(std::move(nf));
    if (static_cast<long>(basis.size()) > budget.max_basis)
      throw BudgetExceeded("groebner: basis size budget exceeded");
    push_pairs(basis.size() - 1);
  }

  // interreduce to the unique reduced basis: minimalize leads, then reduce tails
  std::vector<GPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || basis[j].zero()) continue;
      if (detail::divides(basis[j].lead(), basis[i].lead()) &&
          (basis[j].lead() != basis[i].lead() || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<GPoly> fin(minimal.size());
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    fin[i] = run.normal_form(minimal[i], others);
  }
  std::sort(fin.begin(), fin.end(),
            [&](const GPoly& a, const GPoly& b) { return ord.less(a.lead(), b.lead()); });
  std::vector<Poly> out;
  out.reserve(fin.size());
  for (auto& g : fin) out.push_back(detail::from_gpoly(g, vars));
  return out;
}

/// Full normal form of p modulo a (Groebner) basis; exact (value-preserving).
inline Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& ord,
                        const GroebnerBudget& budget = {}) {
  if (p.is_zero() || basis.empty()) return p;
  detail::GroebnerRun run{ord, budget};
  std::vector<detail::GPoly> b;
  for (auto& g : basis) b.push_back(detail::to_gpoly(g.with_context(p.vars()), ord));
  detail::GPoly raw;
  raw.t.assign(p.terms().begin(), p.terms().end());
  std::sort(raw.t.begin(), raw.t.end(),
            [&](const auto& x, const auto& y) { return ord.less(y.first, x.first); });
  raw.sugar = p.degree();
  detail::GPoly nf = run.normal_form(std::move(raw), b, /*rescale=*/false);
  Poly out = detail::from_gpoly(nf, p.vars());
  return out;
}

inline bool in_ideal(const Poly& p, const std::vector<Poly>& gb, const MonomialOrder& ord) {
  return normal_form(p, gb, ord).is_zero();
}

/// True when every variable has a pure-power leading monomial (finite staircase).
inline bool is_zero_dimensional(const std::vector<Poly>& gb, const MonomialOrder& ord) {
  if (gb.empty()) return false;
  size_t n = gb.front().vars().size();
  std::vector<bool> covered(n, false);
  for (auto& g : gb) {
    detail::GPoly gp = detail::to_gpoly(g, ord);
    const Expo& l = gp.lead();
    int support = -1;
    bool pure = true;
    for (size_t i = 0; i < n; ++i) {
      if (l[i] > 0) {
        if (support >= 0) pure = false;
        support = static_cast<int>(i);
      }
    }
    if (pure && support >= 0) covered[static_cast<size_t>(support)] = true;
    if (pure && support < 0) return true;  // 1 in the ideal: empty variety
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

/// Number of standard monomials (= dim of the quotient, counting multiplicity).
inline long quotient_dimension(const std::vector<Poly>& gb, const MonomialOrder& ord) {
  if (gb.empty()) throw std::invalid_argument("quotient_dimension: empty basis");
  size_t n = gb.front().vars().size();
  std::vector<Expo> leads;
  for (auto& g : gb) leads.push_back(detail::to_gpoly(g, ord).lead());
  std::vector<int> cap(n, -1);
  for (auto& l : leads) {
    int support = -1;
    bool pure = true;
    for (size_t i = 0; i < n; ++i)
      if (l[i] > 0) {
        if (support >= 0) pure = false;
        support = static_cast<int>(i);
      }
    if (pure && support >= 0)
      cap[static_cast<size_t>(support)] = l[static_cast<size_t>(support)];
    if (pure && support < 0) return 0;
  }
  for (size_t i = 0; i < n; ++i)
    if (cap[i] < 0) throw std::invalid_argument("quotient_dimension: not zero-dimensional");
  long count = 0;
  Expo e(n, 0);
  // enumerate the finite staircase box with divisibility pruning
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      for (auto& l : leads)
        if (detail::divides(l, e)) return;
      ++count;
      return;
    }
    for (int k = 0; k < cap[i]; ++k) {
      e[i] = k;
      rec(i + 1);
    }
    e[i] = 0;
  };
  rec(0);
  return count;
}

/// Krull dimension of R/I from the staircase: the largest variable subset
/// not meeting the support of any leading monomial.
inline int hilbert_dimension(const std::vector<Poly>& gb, const MonomialOrder& ord) {
  if (gb.empty()) throw std::invalid_argument("hilbert_dimension: empty basis");
  size_t n = gb.front().vars().size();
  std::vector<Expo> leads;
  for (auto& g : gb) {
    detail::GPoly gp = detail::to_gpoly(g, ord);
    leads.push_back(gp.lead());
    if (total_degree(gp.lead()) == 0) return -1;  // unit ideal, empty variety
  }
  int best = -1;
  for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
    int size = __builtin_popcountll(mask);
    if (size <= best) continue;
    bool independent = true;
    for (auto& l : leads) {
      bool inside = true;
      for (size_t i = 0; i < n && inside; ++i)
        if (l[i] > 0 && !(mask & (1ull << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

/// Generators of the elimination ideal: keep basis elements free of the first
/// `nelim` variables of the context (which must be ordered eliminated-first).
inline std::vector<Poly> eliminate_block(const std::vector<Poly>& gens, size_t nelim,
                                         const GroebnerBudget& budget = {}) {
  auto gb = groebner_basis(gens, MonomialOrder::elimination(nelim), budget);
  std::vector<Poly> kept;
  for (auto& g : gb) {
    bool free = true;
    for (size_t i = 0; i < nelim && free; ++i)
      if (g.depends_on(i)) free = false;
    if (free) kept.push_back(g);
  }
  return kept;
}

}  // namespace cuspidal

#endif
