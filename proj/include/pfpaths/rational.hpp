#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "pfpaths/error.hpp"

namespace pfpaths {

// Exact arbitrary-precision fraction. Always kept in lowest terms with a
// positive denominator; every operation is exact.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}          // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(n) {}           // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) raise(errc::invalid_argument, "zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const mpz_class& z) : q_(z) {}

  // Accepts "p", "-p", "p/q" with arbitrary-precision decimal digits.
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        mpq_class q(check_integer(text));
        return Rational(q);
      }
      mpz_class num(check_integer(text.substr(0, slash)));
      mpz_class den(check_integer(text.substr(slash + 1)));
      if (den == 0) raise(errc::parse_error, "zero denominator in '" + text + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return Rational(q);
    } catch (const std::invalid_argument&) {
      raise(errc::parse_error, "not a rational: '" + text + "'");
    }
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) raise(errc::invalid_argument, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static std::string check_integer(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign only");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit");
    return s;
  }

  mpq_class q_;
};

// sgn as used in the interval sums: +1 / 0 / -1.
inline int sgn3(long a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

inline Rational binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace pfpaths
