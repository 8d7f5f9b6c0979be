#ifndef CUSPIDAL_VARIETIES_HPP
#define CUSPIDAL_VARIETIES_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/groebner.hpp"
#include "cuspidal/poly.hpp"

namespace cuspidal {

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// The input pair: equations f cutting out the variety, and the map r restricted to it.
struct InputSystem {
  std::vector<std::string> vars;
  std::vector<Poly> equations;  // f_1..f_s
  std::vector<Poly> map;        // r_1..r_d
  bool bounded = false;
  int expected_dim = 0;  // d

  size_t n() const { return vars.size(); }
  size_t s() const { return equations.size(); }
  size_t d() const { return map.size(); }

  int max_degree() const {
    int D = 0;
    for (auto& p : equations) D = std::max(D, p.degree());
    for (auto& p : map) D = std::max(D, p.degree());
    return D;
  }
  size_t max_coeff_bits() const {
    size_t b = 0;
    auto scan = [&](const Poly& p) {
      for (auto& [e, c] : p.terms())
        b = std::max({b, mpz_sizeinbase(c.num().get_mpz_t(), 2),
                      mpz_sizeinbase(c.den().get_mpz_t(), 2)});
    };
    for (auto& p : equations) scan(p);
    for (auto& p : map) scan(p);
    return b;
  }
};

// A cosine/sine pair (c, s) whose circle equation c^2+s^2-1 appears in f.
struct CirclePair {
  size_t cos_idx, sin_idx, equation_idx;
};

/// All circle pairs present in f, matched by the exact c^2+s^2-1 pattern.
inline std::vector<CirclePair> circle_pairs(const InputSystem& sys) {
  std::vector<CirclePair> out;
  for (size_t e = 0; e < sys.equations.size(); ++e) {
    const Poly& f = sys.equations[e];
    if (f.term_count() != 3) continue;
    long ci = -1, si = -1;
    bool ok = true;
    bool has_const = false;
    for (auto& [expo, c] : f.terms()) {
      int td = total_degree(expo);
      if (td == 0) {
        if (c != Rational(-1)) ok = false;
        has_const = true;
      } else if (td == 2) {
        int active = -1;
        for (size_t i = 0; i < expo.size(); ++i)
          if (expo[i] == 2) active = static_cast<int>(i);
        if (active < 0 || c != Rational(1)) {
          ok = false;
        } else if (ci < 0) {
          ci = active;
        } else {
          si = active;
        }
      } else {
        ok = false;
      }
    }
    if (ok && has_const && ci >= 0 && si >= 0)
      out.push_back({static_cast<size_t>(ci), static_cast<size_t>(si), e});
  }
  return out;
}

/// Syntactic boundedness: f is exactly a circle equation per variable pair,
/// covering every variable.
inline bool bounded_by_pattern(const InputSystem& sys) {
  auto pairs = circle_pairs(sys);
  if (pairs.size() != sys.equations.size()) return false;
  std::vector<bool> used(sys.n(), false);
  for (auto& p : pairs) {
    if (used[p.cos_idx] || used[p.sin_idx]) return false;
    used[p.cos_idx] = used[p.sin_idx] = true;
  }
  for (bool u : used)
    if (!u) return false;
  return true;
}

inline InputSystem build_system(std::vector<std::string> vars, std::vector<Poly> equations,
                                std::vector<Poly> map, bool bounded_flag) {
  if (equations.empty()) throw std::invalid_argument("build_system: empty equation list");
  if (map.empty()) throw std::invalid_argument("build_system: empty map");
  InputSystem sys;
  sys.vars = std::move(vars);
  for (auto& p : equations) sys.equations.push_back(p.with_context(sys.vars));
  for (auto& p : map) sys.map.push_back(p.with_context(sys.vars));
  sys.expected_dim = static_cast<int>(sys.map.size());
  sys.bounded = bounded_flag || bounded_by_pattern(sys);
  return sys;
}

/// Rows are the gradients of (f_1..f_s, r_1..r_d), in input order.
inline std::vector<std::vector<Poly>> jacobian(const InputSystem& sys) {
  std::vector<std::vector<Poly>> J;
  auto add_row = [&](const Poly& p) {
    std::vector<Poly> row;
    for (size_t i = 0; i < sys.n(); ++i) row.push_back(p.diff(i));
    J.push_back(std::move(row));
  };
  for (auto& f : sys.equations) add_row(f);
  for (auto& r : sys.map) add_row(r);
  return J;
}

namespace detail {

inline Poly det(const std::vector<std::vector<Poly>>& m, std::vector<size_t> rows,
                std::vector<size_t> cols, const std::vector<std::string>& vars) {
  size_t k = rows.size();
  if (k == 1) return m[rows[0]][cols[0]];
  // expand along the column with the most zero entries
  size_t bestc = 0, bestz = 0;
  for (size_t c = 0; c < k; ++c) {
    size_t z = 0;
    for (size_t r = 0; r < k; ++r)
      if (m[rows[r]][cols[c]].is_zero()) ++z;
    if (z > bestz) {
      bestz = z;
      bestc = c;
    }
  }
  Poly acc(vars);
  std::vector<size_t> subcols;
  for (size_t c = 0; c < k; ++c)
    if (c != bestc) subcols.push_back(cols[c]);
  for (size_t r = 0; r < k; ++r) {
    const Poly& pivot = m[rows[r]][cols[bestc]];
    if (pivot.is_zero()) continue;
    std::vector<size_t> subrows;
    for (size_t rr = 0; rr < k; ++rr)
      if (rr != r) subrows.push_back(rows[rr]);
    Poly sub = det(m, subrows, subcols, vars);
    if ((r + bestc) % 2 == 0)
      acc += pivot * sub;
    else
      acc -= pivot * sub;
  }
  return acc;
}

}  // namespace detail

/// The critical-locus equations: all n x n minors of the Jacobian.
struct CritSystem {
  std::vector<Poly> minors;  // nonzero minors, deterministic row-subset order
  long total_minor_count = 0;
  long zero_minor_count = 0;
  InputSystem parent;
};

inline CritSystem crit_equations(const InputSystem& sys) {
  size_t n = sys.n(), rows = sys.s() + sys.d();
  if (rows < n)
    throw std::invalid_argument(
        "crit_equations: fewer equations+map components than variables; the critical locus "
        "would be all of the variety");
  auto J = jacobian(sys);
  CritSystem crit;
  crit.parent = sys;
  std::vector<size_t> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = i;
  // enumerate row subsets in lexicographic order
  std::vector<size_t> pick(n);
  for (size_t i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    Poly m = detail::det(J, pick, cols, sys.vars);
    ++crit.total_minor_count;
    if (m.is_zero())
      ++crit.zero_minor_count;
    else
      crit.minors.push_back(m.primitive_part());
    // next combination
    size_t i = n;
    while (i > 0) {
      --i;
      if (pick[i] != i + rows - n) {
        ++pick[i];
        for (size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return crit;
    }
  }
}

struct AssumptionReport {
  enum Status { Pass, Fail, Inconclusive };
  Status dimension_check = Inconclusive;
  int computed_dim = -2;
  int expected_dim = -1;
  bool radicality_checked = false;   // always false: assumed, not verified
  bool real_trace_checked = false;   // no effective test; surfaced as an assumption
  std::string note;

  bool ok() const { return dimension_check == Pass; }
  std::string str() const {
    std::ostringstream os;
    os << "dimension: ";
    if (dimension_check == Pass)
      os << "pass (dim V = " << computed_dim << " = d)";
    else if (dimension_check == Fail)
      os << "FAIL (dim V = " << computed_dim << ", expected " << expected_dim << ")";
    else
      os << "inconclusive (" << note << ")";
    os << "; radicality: assumed (not verified)";
    os << "; V_R not inside the singular locus: assumed (no effective test)";
    return os.str();
  }
};

/// Best-effort validation of the standing assumption: dim V(f) == d via the
/// Groebner staircase. Budget overruns degrade to "inconclusive".
inline AssumptionReport check_assumption_A(const InputSystem& sys,
                                           const GroebnerBudget& budget = {}) {
  AssumptionReport rep;
  rep.expected_dim = sys.expected_dim;
  try {
    auto gb = groebner_basis(sys.equations, MonomialOrder::grevlex(), budget);
    rep.computed_dim = hilbert_dimension(gb, MonomialOrder::grevlex());
    rep.dimension_check =
        rep.computed_dim == sys.expected_dim ? AssumptionReport::Pass : AssumptionReport::Fail;
  } catch (const BudgetExceeded& e) {
    rep.dimension_check = AssumptionReport::Inconclusive;
    rep.note = e.what();
  }
  return rep;
}

/// Rotation structure: map components (val_a, val_b) transform as a rotation
/// driven by the circle pair (cos_idx, sin_idx):
///   r_a = c*A - s*B,  r_b = s*A + c*B,  A and B free of (c, s).
struct RotationStructure {
  size_t cos_idx, sin_idx;
  size_t circle_equation_idx;
  size_t val_a, val_b;
  Poly A, B;
};

inline std::optional<RotationStructure> detect_rotation_structure(const InputSystem& sys) {
  for (auto& cp : circle_pairs(sys)) {
    for (size_t a = 0; a < sys.d(); ++a) {
      for (size_t b = 0; b < sys.d(); ++b) {
        if (a == b) continue;
        const Poly& ra = sys.map[a];
        const Poly& rb = sys.map[b];
        if (ra.degree_in(cp.cos_idx) > 1 || ra.degree_in(cp.sin_idx) > 1) continue;
        Poly A = ra.diff(cp.cos_idx);
        Poly B = -ra.diff(cp.sin_idx);
        if (A.depends_on(cp.cos_idx) || A.depends_on(cp.sin_idx) || B.depends_on(cp.cos_idx) ||
            B.depends_on(cp.sin_idx))
          continue;
        Poly c = Poly::variable(sys.vars, cp.cos_idx);
        Poly s = Poly::variable(sys.vars, cp.sin_idx);
        if (ra != c * A - s * B) continue;
        if (rb != s * A + c * B) continue;
        bool others_free = true;
        for (size_t k = 0; k < sys.d() && others_free; ++k) {
          if (k == a || k == b) continue;
          if (sys.map[k].depends_on(cp.cos_idx) || sys.map[k].depends_on(cp.sin_idx))
            others_free = false;
        }
        if (!others_free) continue;
        return RotationStructure{cp.cos_idx, cp.sin_idx, cp.equation_idx, a, b, A, B};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cuspidal

#endif
