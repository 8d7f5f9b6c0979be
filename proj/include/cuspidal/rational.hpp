#ifndef CUSPIDAL_RATIONAL_HPP
#define CUSPIDAL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspidal {

/// Exact rational number. Always canonical: lowest terms, denominator > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Accepts "a", "-a", "a/b".
  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational pow(unsigned e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), e);
    Rational r;
    r.v_ = mpq_class(n, d);  // already canonical: num/den coprime
    return r;
  }

  // Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  friend void swap(Rational& a, Rational& b) { mpq_swap(a.v_.get_mpq_t(), b.v_.get_mpq_t()); }

 private:
  mpq_class v_;
};

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) { return Rational(n, d); }

// Some power of two >= |x|, at least 1.
inline Rational pow2_above(const Rational& x) {
  Rational a = x.abs();
  Rational p(1);
  while (p < a) p *= Rational(2);
  return p;
}

/// Closed interval with exact rational endpoints, lo <= hi.
struct Interval {
  Rational lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rational v) : lo(v), hi(v) {}
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) * Rational(1, 2); }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  // 0 when the interval straddles zero.
  int sign() const {
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    return 0;
  }
  bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
  }
  friend Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rational mn = c[0], mx = c[0];
    for (int i = 1; i < 4; ++i) {
      if (c[i] < mn) mn = c[i];
      if (c[i] > mx) mx = c[i];
    }
    return Interval(mn, mx);
  }

  Interval pow(unsigned e) const {
    if (e == 0) return Interval(Rational(1));
    Interval r = *this;
    // even powers of straddling intervals clamp at 0
    if (e % 2 == 0) {
      Rational a = lo.abs(), b = hi.abs();
      Rational m = a > b ? a : b;
      Rational l = contains_zero() ? Rational(0) : (a < b ? a : b);
      return Interval(l.pow(e), m.pow(e));
    }
    return Interval(lo.pow(e), hi.pow(e));
  }
};

using RatVec = std::vector<Rational>;

}  // namespace cuspidal

#endif
