#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cmif/rational.hpp"

namespace cmif {

// Sequence n |-> kappa + sum_i coef_i * ratio_i^n with 0 < ratio_i < 1,
// coef_i != 0, ratios pairwise distinct. Closed under +, -, *, scaling,
// which keeps every "for all n" question decidable: beyond a computable
// threshold the dominant term fixes the sign, and the finitely many
// indices below it are checked directly.
class GeoSeq {
 public:
  GeoSeq() = default;
  explicit GeoSeq(Rational constant) : kappa_(std::move(constant)) {}
  GeoSeq(Rational constant, Rational coef, Rational ratio);

  static GeoSeq constant(Rational c) { return GeoSeq(std::move(c)); }

  const Rational& limit() const { return kappa_; }
  bool is_constant() const { return terms_.empty(); }
  bool is_identically_zero() const { return terms_.empty() && kappa_.is_zero(); }

  Rational value_at(long n) const;

  GeoSeq operator-() const;
  friend GeoSeq operator+(const GeoSeq& a, const GeoSeq& b);
  friend GeoSeq operator-(const GeoSeq& a, const GeoSeq& b);
  friend GeoSeq operator*(const GeoSeq& a, const GeoSeq& b);
  GeoSeq scaled(const Rational& c) const;

  friend bool operator==(const GeoSeq& a, const GeoSeq& b);

  // Sign pattern of the sequence over all n >= n_from.
  struct SignSweep {
    bool any_neg = false, any_zero = false, any_pos = false;
    // First index exhibiting each sign, when present.
    std::optional<long> first_neg, first_zero, first_pos;
    bool all_neg() const { return any_neg && !any_zero && !any_pos; }
    bool all_pos() const { return any_pos && !any_zero && !any_neg; }
    bool all_zero() const { return !any_neg && !any_pos; }
    bool none_zero() const { return !any_zero; }
    bool all_nonneg() const { return !any_neg; }
    bool all_nonpos() const { return !any_pos; }
  };
  SignSweep sign_over(long n_from) const;

  const std::vector<std::pair<Rational, Rational>>& terms() const { return terms_; }

 private:
  void add_term(Rational coef, Rational ratio);
  // Smallest n >= n_from from which the sign is provably constant.
  long stable_threshold(long n_from, int& stable_sign) const;

  Rational kappa_;
  std::vector<std::pair<Rational, Rational>> terms_;  // (coef, ratio), ratio descending
};

// Sign pattern of (a - b) over all n >= n_from.
GeoSeq::SignSweep seq_compare(const GeoSeq& a, const GeoSeq& b, long n_from);

// Coordinate sequence for graph segment families: constant, linear-fractional
// (a*n + b)/(c*n + d), or geometric alpha + beta * rho^n. Linear-fractional
// covers harmonic-type accumulation, which the generated representation
// deliberately excludes.
class CoordSeq {
 public:
  enum class Kind { Constant, LinFrac, Geometric };

  static CoordSeq constant(Rational c);
  static CoordSeq lin_frac(Rational a, Rational b, Rational c, Rational d);
  static CoordSeq geometric(Rational alpha, Rational beta, Rational rho);

  Kind kind() const { return kind_; }
  Rational value_at(long n) const;
  Rational limit() const;

  // +1 strictly increasing, -1 strictly decreasing, 0 constant; from n_from on.
  int direction_from(long n_from) const;
  // Denominator positivity / parameter sanity for indices >= n_from.
  bool well_formed_from(long n_from) const;

  // Smallest n >= n_from with value_at(n) >= t (increasing) or <= t
  // (decreasing); nullopt when the sequence never crosses t.
  std::optional<long> first_reaching(const Rational& t, long n_from) const;

  const Rational& p0() const { return p_[0]; }
  const Rational& p1() const { return p_[1]; }
  const Rational& p2() const { return p_[2]; }
  const Rational& p3() const { return p_[3]; }

 private:
  Kind kind_ = Kind::Constant;
  Rational p_[4];
};

}  // namespace cmif
