#include "cmif/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace cmif {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("rational: empty literal");
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(s);
      return Rational(mpq_class(n));
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw std::invalid_argument("rational: malformed literal");
    mpz_class n(ns), d(ds);
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("rational: malformed literal '" + s + "'");
  }
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv && is_zero()) throw std::domain_error("rational: 0^negative");
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  mpq_class r = inv ? mpq_class(pd, pn) : mpq_class(pn, pd);
  r.canonicalize();
  return Rational(r);
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("rational: not an integer");
  if (!v_.get_num().fits_slong_p()) throw std::overflow_error("rational: integer out of range");
  return v_.get_num().get_si();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational: division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational: division by zero");
  v_ /= b.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

int rational_compare(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace cmif
