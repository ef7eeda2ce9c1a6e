#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cmif {

// Exact rational scalar. Always canonical: gcd(num, den) = 1, den > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}   // NOLINT: implicit by design
  Rational(int n) : v_(static_cast<long>(n)) {}    // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "p/q", "p", optional leading '-'. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  // Canonical form "p/q" (den printed even when 1).
  std::string str() const;

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const;
  // rho^e for any integer e; requires nonzero base when e < 0.
  Rational pow(long e) const;

  // Largest integer <= value, as a Rational.
  Rational floor() const;
  Rational ceil() const;

  // Exposed for serialization; numerator carries the sign.
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  // Value as long when it is an integer that fits; throws otherwise.
  long to_long() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
  Rational& operator/=(const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

// Three-way compare: -1, 0, +1.
int rational_compare(const Rational& a, const Rational& b);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace cmif
