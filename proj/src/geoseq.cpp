#include "cmif/geoseq.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmif {

namespace {
constexpr long kThresholdCap = 200000;
}

GeoSeq::GeoSeq(Rational constant, Rational coef, Rational ratio) : kappa_(std::move(constant)) {
  add_term(std::move(coef), std::move(ratio));
}

void GeoSeq::add_term(Rational coef, Rational ratio) {
  if (coef.is_zero()) return;
  if (!(Rational(0) < ratio && ratio < Rational(1)))
    throw std::invalid_argument("geoseq: ratio must lie in (0,1)");
  for (auto& t : terms_) {
    if (t.second == ratio) {
      t.first += coef;
      if (t.first.is_zero())
        terms_.erase(terms_.begin() + (&t - terms_.data()));
      return;
    }
  }
  terms_.emplace_back(std::move(coef), std::move(ratio));
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return b.second < a.second; });
}

Rational GeoSeq::value_at(long n) const {
  Rational v = kappa_;
  for (const auto& [c, r] : terms_) v += c * r.pow(n);
  return v;
}

GeoSeq GeoSeq::operator-() const {
  GeoSeq r;
  r.kappa_ = -kappa_;
  for (const auto& [c, rho] : terms_) r.terms_.emplace_back(-c, rho);
  return r;
}

GeoSeq operator+(const GeoSeq& a, const GeoSeq& b) {
  GeoSeq r = a;
  r.kappa_ += b.kappa_;
  for (const auto& [c, rho] : b.terms_) r.add_term(c, rho);
  return r;
}

GeoSeq operator-(const GeoSeq& a, const GeoSeq& b) { return a + (-b); }

GeoSeq operator*(const GeoSeq& a, const GeoSeq& b) {
  GeoSeq r;
  r.kappa_ = a.kappa_ * b.kappa_;
  for (const auto& [c, rho] : b.terms_)
    if (!a.kappa_.is_zero()) r.add_term(a.kappa_ * c, rho);
  for (const auto& [c, rho] : a.terms_) {
    if (!b.kappa_.is_zero()) r.add_term(b.kappa_ * c, rho);
    for (const auto& [c2, rho2] : b.terms_) r.add_term(c * c2, rho * rho2);
  }
  return r;
}

GeoSeq GeoSeq::scaled(const Rational& c) const {
  GeoSeq r;
  if (c.is_zero()) return r;
  r.kappa_ = kappa_ * c;
  for (const auto& [coef, rho] : terms_) r.terms_.emplace_back(coef * c, rho);
  return r;
}

bool operator==(const GeoSeq& a, const GeoSeq& b) {
  return (a - b).is_identically_zero();
}

long GeoSeq::stable_threshold(long n_from, int& stable_sign) const {
  if (terms_.empty()) {
    stable_sign = kappa_.sign();
    return n_from;
  }
  // Split off the dominant scale; the remainder decays strictly faster.
  Rational target, rho;
  GeoSeq rest;
  if (!kappa_.is_zero()) {
    target = kappa_.abs();
    stable_sign = kappa_.sign();
    rho = terms_.front().second;  // largest ratio bounds them all
    for (const auto& [c, r] : terms_) rest.add_term(c.abs(), rho);  // coarse but sound
  } else {
    const auto& [c1, r1] = terms_.front();
    target = c1.abs();
    stable_sign = c1.sign();
    if (terms_.size() == 1) return n_from;
    rho = Rational(1);  // placeholder, rebuilt below
    // Compare the tail against the dominant term at its own scale.
    for (size_t i = 1; i < terms_.size(); ++i)
      rest.add_term(terms_[i].first.abs(), terms_[i].second / r1);
  }
  // Find n with rest(n) < target; rest is decreasing in n.
  long n = std::max<long>(n_from, 0);
  Rational bound;
  for (long guard = 0; guard <= kThresholdCap; ++guard, ++n) {
    bound = Rational(0);
    for (const auto& [c, r] : rest.terms()) bound += c * r.pow(n);
    if (bound < target) return n;
  }
  throw std::runtime_error("geoseq: sign threshold search exceeded cap");
}

GeoSeq::SignSweep GeoSeq::sign_over(long n_from) const {
  SignSweep s;
  auto note = [&](int sg, long n) {
    if (sg < 0) { s.any_neg = true; if (!s.first_neg) s.first_neg = n; }
    else if (sg > 0) { s.any_pos = true; if (!s.first_pos) s.first_pos = n; }
    else { s.any_zero = true; if (!s.first_zero) s.first_zero = n; }
  };
  int stable = 0;
  long threshold = stable_threshold(n_from, stable);
  for (long n = n_from; n < threshold; ++n) note(value_at(n).sign(), n);
  note(stable, threshold);
  return s;
}

GeoSeq::SignSweep seq_compare(const GeoSeq& a, const GeoSeq& b, long n_from) {
  return (a - b).sign_over(n_from);
}

CoordSeq CoordSeq::constant(Rational c) {
  CoordSeq s;
  s.kind_ = Kind::Constant;
  s.p_[0] = std::move(c);
  return s;
}

CoordSeq CoordSeq::lin_frac(Rational a, Rational b, Rational c, Rational d) {
  CoordSeq s;
  s.kind_ = Kind::LinFrac;
  s.p_[0] = std::move(a);
  s.p_[1] = std::move(b);
  s.p_[2] = std::move(c);
  s.p_[3] = std::move(d);
  return s;
}

CoordSeq CoordSeq::geometric(Rational alpha, Rational beta, Rational rho) {
  CoordSeq s;
  s.kind_ = Kind::Geometric;
  s.p_[0] = std::move(alpha);
  s.p_[1] = std::move(beta);
  s.p_[2] = std::move(rho);
  return s;
}

Rational CoordSeq::value_at(long n) const {
  switch (kind_) {
    case Kind::Constant: return p_[0];
    case Kind::LinFrac: {
      Rational nn(n);
      Rational den = p_[2] * nn + p_[3];
      if (den.is_zero()) throw std::domain_error("coordseq: linfrac pole");
      return (p_[0] * nn + p_[1]) / den;
    }
    case Kind::Geometric: return p_[0] + p_[1] * p_[2].pow(n);
  }
  throw std::logic_error("coordseq: bad kind");
}

Rational CoordSeq::limit() const {
  switch (kind_) {
    case Kind::Constant: return p_[0];
    case Kind::LinFrac:
      if (!p_[2].is_zero()) return p_[0] / p_[2];
      if (p_[0].is_zero()) return p_[1] / p_[3];
      throw std::domain_error("coordseq: divergent linear-fractional sequence");
    case Kind::Geometric: return p_[0];
  }
  throw std::logic_error("coordseq: bad kind");
}

int CoordSeq::direction_from(long n_from) const {
  switch (kind_) {
    case Kind::Constant: return 0;
    case Kind::LinFrac: {
      // Monotone direction = sign(ad - bc) when denominators stay positive.
      Rational det = p_[0] * p_[3] - p_[1] * p_[2];
      (void)n_from;
      return det.sign();
    }
    case Kind::Geometric:
      if (p_[1].is_zero()) return 0;
      return p_[1].sign() < 0 ? 1 : -1;  // approaches alpha from below / above
  }
  throw std::logic_error("coordseq: bad kind");
}

bool CoordSeq::well_formed_from(long n_from) const {
  switch (kind_) {
    case Kind::Constant: return true;
    case Kind::LinFrac: {
      if (p_[2].is_zero() && !p_[0].is_zero()) return false;  // divergent
      Rational den = p_[2] * Rational(n_from) + p_[3];
      if (!(den > Rational(0))) return false;
      return p_[2] >= Rational(0);  // denominator stays positive afterwards
    }
    case Kind::Geometric:
      return Rational(0) < p_[2] && p_[2] < Rational(1);
  }
  return false;
}

std::optional<long> CoordSeq::first_reaching(const Rational& t, long n_from) const {
  int dir = direction_from(n_from);
  if (dir == 0) return p_[0] == t ? std::optional<long>(n_from) : std::nullopt;
  // Increasing: first n with value >= t. Decreasing: first with value <= t.
  auto reached = [&](const Rational& v) { return dir > 0 ? v >= t : v <= t; };
  if (reached(value_at(n_from))) return n_from;
  Rational lim = limit();
  if (dir > 0 ? lim <= t : lim >= t) {
    // The limit is never attained, so t beyond (or at) the limit is not reached.
    if (kind_ != Kind::Constant) {
      if (dir > 0 ? t >= lim : t <= lim) return std::nullopt;
    }
  }
  if (kind_ == Kind::LinFrac) {
    // (a n + b)/(c n + d) >= t  <=>  n (a - t c) >= t d - b with positive den.
    Rational s = p_[0] - t * p_[2];
    Rational rhs = t * p_[3] - p_[1];
    if (s.is_zero()) return std::nullopt;  // constant side never crossing
    Rational bound = rhs / s;
    long n = bound.ceil().to_long();
    // The division direction matches dir by construction; clamp and verify.
    if (n < n_from) n = n_from;
    for (long k = std::max(n_from, n - 2); k <= n + 2; ++k)
      if (k >= n_from && reached(value_at(k))) return k;
    return std::nullopt;
  }
  // Geometric: walk the powers; distance to the limit halves at rate rho.
  Rational v;
  long n = n_from;
  for (long guard = 0; guard <= kThresholdCap; ++guard) {
    ++n;
    v = value_at(n);
    if (reached(v)) return n;
    if (dir > 0 ? v > t : v < t) return std::nullopt;  // passed without reaching (unreachable)
  }
  throw std::runtime_error("coordseq: crossing search exceeded cap");
}

}  // namespace cmif
