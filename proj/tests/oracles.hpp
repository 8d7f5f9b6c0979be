// Test-only oracles, kept independent of the library code paths they check.
#ifndef CUSPIDAL_TESTS_ORACLES_HPP
#define CUSPIDAL_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "cuspidal/poly.hpp"
#include "cuspidal/rational.hpp"

namespace oracles {

// Deterministic PRNG so test corpora are reproducible everywhere.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  // uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

// Sturm-sequence count of distinct real roots of p in (a, b], endpoints rational.
// Works directly on rational coefficient vectors (low degree first).
inline int sturm_variations(const std::vector<std::vector<cuspidal::Rational>>& seq,
                            const cuspidal::Rational& x) {
  using cuspidal::Rational;
  int v = 0, last = 0;
  for (auto& p : seq) {
    Rational acc(0);
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    int s = acc.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline std::vector<std::vector<cuspidal::Rational>> sturm_sequence(
    std::vector<cuspidal::Rational> p) {
  using cuspidal::Rational;
  using Vec = std::vector<Rational>;
  auto trim = [](Vec& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  auto rem = [&](Vec a, const Vec& b) {
    while (a.size() >= b.size() && !a.empty()) {
      Rational f = a.back() / b.back();
      size_t shift = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
      trim(a);
    }
    return a;
  };
  trim(p);
  std::vector<Vec> seq;
  if (p.empty()) return seq;
  Vec d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  seq.push_back(p);
  trim(d);
  if (d.empty()) return seq;
  seq.push_back(d);
  while (true) {
    Vec r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
    if (seq.back().size() == 1) break;
  }
  return seq;
}

// Number of distinct real roots of p in the open interval (a, b); p squarefree
// and nonvanishing at a and b.
inline int sturm_count(const std::vector<cuspidal::Rational>& p, const cuspidal::Rational& a,
                       const cuspidal::Rational& b) {
  auto seq = sturm_sequence(p);
  return sturm_variations(seq, a) - sturm_variations(seq, b);
}

// Count over the whole real line: evaluate variations at +-B for a Cauchy bound B.
inline int sturm_count_all(const std::vector<cuspidal::Rational>& p) {
  using cuspidal::Rational;
  Rational maxr(0);
  Rational lead = p.back();
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rational r = p[i].abs() / lead.abs();
    if (r > maxr) maxr = r;
  }
  Rational b = maxr + Rational(2);
  return sturm_count(p, -b, b);
}

// Brute-force flood fill of the sign regions of a bivariate polynomial on a
// grid; resolution doubled until the answer stabilizes. Cell adjacency is
// gated on corner and edge-midpoint probes, so the fill cannot leak across a
// curve that threads between cell centers or pinches at a singular point.
struct FloodFill {
  cuspidal::Rational box;
  int resolution;
  std::vector<int> label;  // per grid cell, -1 for undecided/curve cells
  int components;


  static FloodFill compute(const cuspidal::Poly& g, cuspidal::Rational box, int res) {
    using cuspidal::Rational;
    FloodFill f;
    f.box = box;
    f.resolution = res;
    int n = res;
    double bd = box.to_double();
    // fast double evaluation with exact fallback near zero
    auto sign_at = [&](long num_x, long num_y, long den) {
      double x = bd * static_cast<double>(num_x) / static_cast<double>(den);
      double y = bd * static_cast<double>(num_y) / static_cast<double>(den);
      double acc = 0;
      for (auto& [e, c] : g.terms()) {
        double t = c.to_double();
        for (int k = 0; k < e[0]; ++k) t *= x;
        for (int k = 0; k < e[1]; ++k) t *= y;
        acc += t;
      }
      double scale = 1.0;
      double ax = std::abs(x) > 1 ? std::abs(x) : 1.0, ay = std::abs(y) > 1 ? std::abs(y) : 1.0;
      for (int k = 0; k < g.degree(); ++k) scale *= std::max(ax, ay);
      if (std::abs(acc) > 1e-9 * scale) return acc > 0 ? 1 : -1;
      Rational rx = Rational(num_x) * box / Rational(den);
      Rational ry = Rational(num_y) * box / Rational(den);
      return g.eval({rx, ry}).sign();
    };
    // probe lattice with denominator 2n: centers at odd/odd, corners even/even,
    // edge midpoints mixed
    auto lat = [&](long i, long j) { return sign_at(i - n, j - n, n); };
    std::vector<int> center(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        center[static_cast<size_t>(i) * n + j] = lat(2 * i + 1, 2 * j + 1);
    // adjacency through a shared edge requires matching signs at three interior
    // points of that edge (endpoints may legitimately sit on the curve)
    auto edge_ok = [&](int a, int b, int na, int nb, int s) {
      long cx = 4 * std::max(a, na), cy = 4 * std::max(b, nb);
      if (a != na) {  // vertical edge
        for (long off = 1; off <= 3; ++off)
          if (sign_at(cx - 2 * n, 4 * b + off - 2 * n, 2 * n) != s) return false;
        return true;
      }
      for (long off = 1; off <= 3; ++off)
        if (sign_at(4 * a + off - 2 * n, cy - 2 * n, 2 * n) != s) return false;
      return true;
    };
    f.label.assign(static_cast<size_t>(n) * n, -1);
    int next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        size_t id = static_cast<size_t>(i) * n + j;
        if (f.label[id] >= 0 || center[id] == 0) continue;
        int lab = next++;
        stack.push_back({i, j});
        f.label[id] = lab;
        while (!stack.empty()) {
          auto [a, b] = stack.back();
          stack.pop_back();
          int s = center[static_cast<size_t>(a) * n + b];
          const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
          for (int k = 0; k < 4; ++k) {
            int na = a + dx[k], nb = b + dy[k];
            if (na < 0 || nb < 0 || na >= n || nb >= n) continue;
            size_t nid = static_cast<size_t>(na) * n + nb;
            if (f.label[nid] >= 0 || center[nid] != s) continue;
            if (!edge_ok(a, b, na, nb, s)) continue;
            f.label[nid] = lab;
            stack.push_back({na, nb});
          }
        }
      }
    f.components = next;
    return f;
  }

  int label_at(const cuspidal::RatVec& p) const {
    using cuspidal::Rational;
    if (p[0] <= -box || p[0] >= box || p[1] <= -box || p[1] >= box) return -1;
    Rational sx = (p[0] + box) * Rational(resolution) / (Rational(2) * box);
    Rational sy = (p[1] + box) * Rational(resolution) / (Rational(2) * box);
    long i = static_cast<long>(sx.floor().get_si());
    long j = static_cast<long>(sy.floor().get_si());
    if (i < 0 || j < 0 || i >= resolution || j >= resolution) return -1;
    return label[static_cast<size_t>(i) * resolution + j];
  }

  static std::vector<int> probe_labels(const FloodFill& f, const std::vector<cuspidal::RatVec>& probes) {
    std::vector<int> out;
    for (auto& p : probes) out.push_back(f.label_at(p));
    return out;
  }
};

  // Doubles the resolution until the induced partition of the probe points is
  // stable (all probes labelled, same pairs together twice in a row). The
  // component count may keep drifting when thin slivers fragment in the grid;
  // count_stable reports whether it converged too.
struct FloodFillResult {
  FloodFill ff;
  bool partition_stable = false;
  bool count_stable = false;
};

inline FloodFillResult flood_fill_run(const cuspidal::Poly& g, const std::vector<cuspidal::RatVec>& probes,
                    cuspidal::Rational box0, int res0, int max_res = 2048) {
  FloodFillResult out{FloodFill::compute(g, box0, res0)};
    std::vector<int> prev_probe = FloodFill::probe_labels(out.ff, probes);
    for (int res = res0 * 2; res <= max_res; res *= 2) {
      FloodFill cur = FloodFill::compute(g, box0, res);
      std::vector<int> cur_probe = FloodFill::probe_labels(cur, probes);
      bool all_labelled = true;
      for (int l : cur_probe)
        if (l < 0) all_labelled = false;
      bool stable = all_labelled;
      for (int l : prev_probe)
        if (l < 0) stable = false;
      if (stable) {
        for (size_t i = 0; i < probes.size() && stable; ++i)
          for (size_t j = 0; j < probes.size() && stable; ++j)
            if ((prev_probe[i] == prev_probe[j]) != (cur_probe[i] == cur_probe[j]))
              stable = false;
      }
      bool counts = cur.components == out.ff.components;
      out.count_stable = counts && stable;
      out.ff = cur;
      if (stable) {
        out.partition_stable = true;
        return out;
      }
      prev_probe = cur_probe;
    }
    out.partition_stable = false;
    return out;
  }


}  // namespace oracles

#endif
