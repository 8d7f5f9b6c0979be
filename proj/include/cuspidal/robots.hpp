#ifndef CUSPIDAL_ROBOTS_HPP
#define CUSPIDAL_ROBOTS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "cuspidal/varieties.hpp"
#include "cuspidal/zerodim.hpp"

namespace cuspidal {

/// D-H parameters with twists restricted to quarter turns, so every matrix
/// entry stays rational.
struct DHParams {
  RatVec d;                             // joint offsets
  RatVec a;                             // link lengths
  std::vector<int> alpha_quarter_turns; // twist = k * pi/2

  size_t joints() const { return d.size(); }
  void validate() const {
    if (d.size() != a.size() || d.size() != alpha_quarter_turns.size())
      throw std::invalid_argument("DHParams: parameter lists must have equal length");
    if (d.size() < 2 || d.size() > 3)
      throw std::invalid_argument("DHParams: 2 or 3 revolute joints supported");
  }
};

struct RobotModel {
  DHParams dh;
  InputSystem system;
};

namespace detail {

using PolyMat = std::vector<std::vector<Poly>>;

inline PolyMat mat_mul(const PolyMat& A, const PolyMat& B, const std::vector<std::string>& vars) {
  PolyMat C(4, std::vector<Poly>(4, Poly(vars)));
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (A[i][k].is_zero()) continue;
      for (int j = 0; j < 4; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

// cos/sin of k * pi/2
inline std::pair<int, int> quarter_cos_sin(int k) {
  int m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

/// Build the polynomial model: variables (c_i, s_i) per joint with circle
/// constraints, and the end-effector position as the map.
///
/// The joint transform is the classical D-H matrix with the twist applied in
/// the clockwise sense; this is the convention fixed by the reference
/// orthogonal-3R model and verified in the tests.
inline RobotModel dh_to_system(const DHParams& dh) {
  dh.validate();
  size_t m = dh.joints();
  std::vector<std::string> vars;
  for (size_t i = 1; i <= m; ++i) {
    vars.push_back("c" + std::to_string(i));
    vars.push_back("s" + std::to_string(i));
  }
  auto C = [&](size_t i) { return Poly::variable(vars, 2 * i); };
  auto S = [&](size_t i) { return Poly::variable(vars, 2 * i + 1); };
  auto K = [&](Rational r) { return Poly::constant(vars, std::move(r)); };

  detail::PolyMat T(4, std::vector<Poly>(4, Poly(vars)));
  for (int i = 0; i < 4; ++i) T[i][i] = K(Rational(1));
  for (size_t i = 0; i < m; ++i) {
    auto [ca_i, sa_raw] = detail::quarter_cos_sin(dh.alpha_quarter_turns[i]);
    Rational ca(ca_i), sa(-sa_raw);  // clockwise twist
    detail::PolyMat A(4, std::vector<Poly>(4, Poly(vars)));
    A[0][0] = C(i);
    A[0][1] = -S(i) * ca;
    A[0][2] = S(i) * sa;
    A[0][3] = C(i) * dh.a[i];
    A[1][0] = S(i);
    A[1][1] = C(i) * ca;
    A[1][2] = -C(i) * sa;
    A[1][3] = S(i) * dh.a[i];
    A[2][1] = K(sa);
    A[2][2] = K(ca);
    A[2][3] = K(dh.d[i]);
    A[3][3] = K(Rational(1));
    T = detail::mat_mul(T, A, vars);
  }

  std::vector<Poly> map;
  size_t out_dim = m == 2 ? 2 : 3;
  for (size_t k = 0; k < out_dim; ++k) map.push_back(T[k][3]);

  std::vector<Poly> eqs;
  for (size_t i = 0; i < m; ++i)
    eqs.push_back(C(i) * C(i) + S(i) * S(i) - K(Rational(1)));

  RobotModel model;
  model.dh = dh;
  model.system = build_system(vars, eqs, map, true);
  return model;
}

/// Number of certified real inverse kinematic solutions over a rational target.
/// `atypical_generators`, when provided, guard against targets on the atypical locus.
inline int ik_count(const RobotModel& model, const RatVec& target,
                    const std::vector<Poly>* atypical_generators = nullptr) {
  if (atypical_generators) {
    RatVec t = target;
    for (auto& g : *atypical_generators)
      if (g.eval(t).is_zero())
        throw std::invalid_argument("ik_count: target lies on the atypical locus");
  }
  ZeroDimParam f = fiber(model.system, target);
  return static_cast<int>(real_points(f, Rational(1, 64)).size());
}

}  // namespace cuspidal

#endif
