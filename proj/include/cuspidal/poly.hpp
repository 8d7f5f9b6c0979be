#ifndef CUSPIDAL_POLY_HPP
#define CUSPIDAL_POLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

using Expo = std::vector<int>;

inline int total_degree(const Expo& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Graded reverse lexicographic: the canonical internal term order.
struct GrevlexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // equal degree: a < b iff the last nonzero entry of a-b is positive
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

/// Sparse multivariate polynomial over Q with a named variable context.
class Poly {
 public:
  using TermMap = std::map<Expo, Rational, GrevlexLess>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, Rational c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_[Expo(p.vars_.size(), 0)] = std::move(c);
    return p;
  }
  static Poly variable(std::vector<std::string> vars, size_t idx) {
    Poly p(std::move(vars));
    if (idx >= p.vars_.size()) throw std::out_of_range("Poly::variable index");
    Expo e(p.vars_.size(), 0);
    e[idx] = 1;
    p.terms_[e] = Rational(1);
    return p;
  }
  static Poly variable(const std::vector<std::string>& vars, const std::string& name) {
    return variable(vars, index_of(vars, name));
  }

  static size_t index_of(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw std::invalid_argument("unknown variable: " + name);
    return static_cast<size_t>(it - vars.begin());
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("Poly: not a constant");
    return terms_.begin()->second;
  }

  // -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.rbegin()->first);
  }
  int degree_in(size_t idx) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return terms_.empty() ? -1 : d;
  }
  int degree_in(const std::string& name) const { return degree_in(index_of(vars_, name)); }

  bool depends_on(size_t idx) const {
    for (auto& [e, c] : terms_)
      if (e[idx] != 0) return true;
    return false;
  }

  void set_term(const Expo& e, Rational c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("Poly::set_term arity");
    if (c.is_zero())
      terms_.erase(e);
    else
      terms_[e] = std::move(c);
  }
  Rational coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combined(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combined(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    auto [pa, pb] = aligned(a, b);
    Poly r(pa.vars_);
    for (auto& [ea, ca] : pa.terms_) {
      for (auto& [eb, cb] : pb.terms_) {
        Expo e(ea);
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        auto [it, fresh] = r.terms_.try_emplace(std::move(e), ca * cb);
        if (!fresh) {
          it->second += ca * cb;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Poly& a, const Rational& c) {
    Poly r(a.vars_);
    if (c.is_zero()) return r;
    r.terms_ = a.terms_;
    for (auto& [e, k] : r.terms_) k *= c;
    return r;
  }
  friend Poly operator*(const Rational& c, const Poly& a) { return a * c; }

  Poly pow(unsigned e) const {
    Poly r = constant(vars_, Rational(1));
    Poly base = *this;
    while (e) {
      if (e & 1) r *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly diff(size_t idx) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_) {
      if (e[idx] == 0) continue;
      Expo d(e);
      d[idx] -= 1;
      r.terms_[d] = c * Rational(e[idx]);
    }
    return r;
  }
  Poly diff(const std::string& name) const { return diff(index_of(vars_, name)); }

  Rational eval(const RatVec& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("Poly::eval dimension mismatch");
    Rational acc(0);
    for (auto& [e, c] : terms_) {
      Rational t = c;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= point[i].pow(static_cast<unsigned>(e[i]));
      acc += t;
    }
    return acc;
  }

  Interval eval_box(const std::vector<Interval>& box) const {
    if (box.size() != vars_.size()) throw std::invalid_argument("Poly::eval dimension mismatch");
    Interval acc{Rational(0)};
    for (auto& [e, c] : terms_) {
      Interval t{c};
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = t * box[i].pow(static_cast<unsigned>(e[i]));
      acc = acc + t;
    }
    return acc;
  }

  // Substitute variable idx by a polynomial (same context expected after alignment).
  Poly subst(size_t idx, const Poly& rep) const {
    auto [self, r] = aligned(*this, rep);
    size_t j = idx;  // alignment keeps this poly's var order prefix
    Poly out(self.vars_);
    int dmax = self.degree_in(j);
    std::vector<Poly> reppow;
    reppow.push_back(constant(self.vars_, Rational(1)));
    for (int k = 1; k <= std::max(dmax, 0); ++k) reppow.push_back(reppow.back() * r);
    for (auto& [e, c] : self.terms_) {
      Expo base(e);
      int k = base[j];
      base[j] = 0;
      Poly mono(self.vars_);
      mono.terms_[base] = c;
      out += mono * reppow[static_cast<size_t>(k)];
    }
    return out;
  }

  // Bind a subset of variables to rational values; result keeps the full context.
  Poly bind(const std::map<size_t, Rational>& values) const {
    Poly out(vars_);
    for (auto& [e, c] : terms_) {
      Rational k = c;
      Expo rest(e);
      for (auto& [idx, v] : values) {
        if (e[idx]) k *= v.pow(static_cast<unsigned>(e[idx]));
        rest[idx] = 0;
      }
      if (k.is_zero()) continue;
      auto [it, fresh] = out.terms_.try_emplace(rest, k);
      if (!fresh) {
        it->second += k;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
    return out;
  }

  // Project onto a smaller variable context; requires no dependence on dropped vars.
  Poly restricted_to(const std::vector<std::string>& newvars) const {
    std::vector<size_t> pos(newvars.size());
    for (size_t i = 0; i < newvars.size(); ++i) pos[i] = index_of(vars_, newvars[i]);
    Poly out(newvars);
    for (auto& [e, c] : terms_) {
      Expo ne(newvars.size(), 0);
      int moved = 0;
      for (size_t i = 0; i < newvars.size(); ++i) {
        ne[i] = e[pos[i]];
        moved += e[pos[i]];
      }
      if (moved != total_degree(e))
        throw std::logic_error("Poly::restricted_to drops a used variable");
      out.terms_[ne] = c;
    }
    return out;
  }

  // Same polynomial over a larger / reordered context containing all used vars.
  Poly with_context(const std::vector<std::string>& newvars) const {
    std::vector<long> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
      if (it != newvars.end()) pos[i] = it - newvars.begin();
    }
    Poly out(newvars);
    for (auto& [e, c] : terms_) {
      Expo ne(newvars.size(), 0);
      for (size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] == 0) continue;
        if (pos[i] < 0) throw std::logic_error("Poly::with_context drops a used variable");
        ne[static_cast<size_t>(pos[i])] = e[i];
      }
      auto [it, fresh] = out.terms_.try_emplace(std::move(ne), c);
      if (!fresh) it->second += c;  // cannot collide for injective maps
    }
    return out;
  }

  // Dense coefficient list w.r.t. one variable; coefficients keep the full context.
  std::vector<Poly> coeffs_in(size_t idx) const {
    int d = degree_in(idx);
    std::vector<Poly> cs(static_cast<size_t>(std::max(d, -1) + 1), Poly(vars_));
    for (auto& [e, c] : terms_) {
      Expo rest(e);
      int k = rest[idx];
      rest[idx] = 0;
      cs[static_cast<size_t>(k)].terms_[rest] = c;
    }
    return cs;
  }

  static Poly from_coeffs_in(size_t idx, const std::vector<Poly>& cs,
                             const std::vector<std::string>& vars) {
    Poly out(vars);
    Poly x = variable(vars, idx);
    for (size_t k = cs.size(); k-- > 0;) out = out * x + cs[k];
    return out;
  }

  // Truly univariate view: rational coefficient vector, low degree first.
  RatVec univariate_coeffs() const {
    int active = -1;
    for (size_t i = 0; i < vars_.size(); ++i)
      if (depends_on(i)) {
        if (active >= 0) throw std::logic_error("Poly: not univariate");
        active = static_cast<int>(i);
      }
    size_t idx = active < 0 ? 0 : static_cast<size_t>(active);
    RatVec cs(static_cast<size_t>(std::max(degree_in(idx), 0) + 1), Rational(0));
    if (is_zero()) return {Rational(0)};
    for (auto& [e, c] : terms_) cs[static_cast<size_t>(e[idx])] = c;
    return cs;
  }

  // Content (gcd of coefficients, positive) of a nonzero polynomial.
  Rational rational_content() const {
    mpz_class g(0), l(1);
    for (auto& [e, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    }
    if (g == 0) return Rational(1);
    return Rational(mpq_class(g, l));
  }

  // Divide by content and make the grevlex-leading coefficient positive.
  Poly primitive_part() const {
    if (is_zero()) return *this;
    Rational c = rational_content();
    if (terms_.rbegin()->second.sign() < 0) c = -c;
    Poly r(vars_);
    for (auto& [e, k] : terms_) r.terms_[e] = k / c;
    return r;
  }

  Rational leading_coeff() const {
    if (is_zero()) return Rational(0);
    return terms_.rbegin()->second;
  }
  const Expo& leading_expo() const {
    if (is_zero()) throw std::logic_error("Poly: zero has no leading term");
    return terms_.rbegin()->first;
  }

  std::string str() const;

  static Poly parse(const std::string& text, const std::vector<std::string>& vars);

 private:
  static std::pair<Poly, Poly> aligned(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return {a, b};
    std::vector<std::string> merged = a.vars_;
    for (auto& v : b.vars_)
      if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    return {a.with_context(merged), b.with_context(merged)};
  }

  static Poly combined(const Poly& a, const Poly& b, bool subtract) {
    auto [pa, pb] = aligned(a, b);
    Poly r = pa;
    for (auto& [e, c] : pb.terms_) {
      Rational add = subtract ? -c : c;
      auto [it, fresh] = r.terms_.try_emplace(e, add);
      if (!fresh) {
        it->second += add;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

inline std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rational& c = it->second;
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool has_var = total_degree(it->first) > 0;
    if (!has_var || !a.is_one()) {
      os << a.str();
      if (has_var) os << "*";
    }
    bool firstv = true;
    for (size_t i = 0; i < it->first.size(); ++i) {
      int e = it->first[i];
      if (e == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << vars_[i];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace detail {

struct PolyLexer {
  std::string s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    std::string r = s.substr(i, j - i);
    i = j;
    return r;
  }
  std::string number() {
    skip();
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    std::string r = s.substr(i, j - i);
    i = j;
    return r;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(i) + ": " +
                                msg);
  }
};

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& vars)
      : vars_(vars) {
    lx_.s = text;
  }

  Poly run() {
    Poly p = expr();
    lx_.skip();
    if (lx_.i != lx_.s.size()) lx_.fail("trailing input");
    return p;
  }

 private:
  Poly expr() {
    bool neg = false;
    if (lx_.eat('-'))
      neg = true;
    else
      lx_.eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    while (true) {
      char c = lx_.peek();
      if (c == '+') {
        lx_.eat('+');
        acc += term();
      } else if (c == '-') {
        lx_.eat('-');
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      char c = lx_.peek();
      if (c == '*') {
        lx_.eat('*');
        acc *= factor();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                 std::isdigit(static_cast<unsigned char>(c)) || c == '(') {
        acc *= factor();  // implicit multiplication
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (lx_.peek() == '^') {
      lx_.eat('^');
      std::string n = lx_.number();
      if (n.empty()) lx_.fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(n)));
    }
    return b;
  }

  Poly base() {
    char c = lx_.peek();
    if (c == '(') {
      lx_.eat('(');
      Poly p = expr();
      if (!lx_.eat(')')) lx_.fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string n = lx_.number();
      if (lx_.peek() == '/') {
        size_t save = lx_.i;
        lx_.eat('/');
        if (std::isdigit(static_cast<unsigned char>(lx_.peek()))) {
          std::string d = lx_.number();
          return Poly::constant(vars_, Rational::from_string(n + "/" + d));
        }
        lx_.i = save;
        lx_.fail("'/' is only allowed in rational literals");
      }
      return Poly::constant(vars_, Rational::from_string(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = lx_.ident();
      return Poly::variable(vars_, name);
    }
    lx_.fail("unexpected character");
  }

  detail::PolyLexer lx_;
  const std::vector<std::string>& vars_;
};

}  // namespace detail

inline Poly Poly::parse(const std::string& text, const std::vector<std::string>& vars) {
  return detail::PolyParser(text, vars).run();
}

}  // namespace cuspidal

#endif
