#include "doctest.h"

#include <stdexcept>

#include "cmif/geoseq.hpp"

using cmif::CoordSeq;
using cmif::GeoSeq;
using cmif::Rational;

namespace {
Rational r(long n, long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("geometric member values match hand computation") {
  // 1 - (3/2)(1/2)^n: 1/4, 5/8, 13/16, ...
  GeoSeq p(r(1), r(-3, 2), r(1, 2));
  CHECK(p.value_at(1) == r(1, 4));
  CHECK(p.value_at(2) == r(5, 8));
  CHECK(p.value_at(3) == r(13, 16));
  // 1 - (1/2)^n: 1/2, 3/4, 7/8, ...
  GeoSeq q(r(1), r(-1), r(1, 2));
  CHECK(q.value_at(1) == r(1, 2));
  CHECK(q.value_at(3) == r(7, 8));
  CHECK(p.limit() == r(1));
  CHECK(q.limit() == r(1));
}

TEST_CASE("sequence algebra stays closed") {
  GeoSeq p(r(1), r(-3, 2), r(1, 2));
  GeoSeq q(r(1), r(-1), r(1, 2));
  GeoSeq d = q - p;  // (1/2)(1/2)^n
  CHECK(d.value_at(1) == r(1, 4));
  CHECK(d.value_at(4) == r(1, 32));
  CHECK(d.limit() == r(0));
  CHECK((d - GeoSeq(r(0), r(1, 2), r(1, 2))).is_identically_zero());

  // (1 - x)(1 + x) = 1 - x^2 with x = (1/2)^n
  GeoSeq a(r(1), r(-1), r(1, 2));
  GeoSeq b(r(1), r(1), r(1, 2));
  CHECK(((a * b) - GeoSeq(r(1), r(-1), r(1, 4))).is_identically_zero());

  CHECK((p.scaled(r(2)) - GeoSeq(r(2), r(-3), r(1, 2))).is_identically_zero());
  CHECK((-d).value_at(1) == r(-1, 4));
  CHECK(GeoSeq(r(5, 7)).is_constant());
  CHECK(!p.is_constant());
}

TEST_CASE("sign sweep classifies every index") {
  GeoSeq p(r(1), r(-3, 2), r(1, 2));
  auto s = p.sign_over(1);
  CHECK(s.all_pos());
  CHECK(s.none_zero());

  // -1 + 2 (1/2)^n: zero at n=1, negative afterwards
  GeoSeq z(r(-1), r(2), r(1, 2));
  auto sz = z.sign_over(1);
  CHECK(sz.any_zero);
  CHECK(sz.first_zero == 1);
  CHECK(sz.any_neg);
  CHECK(sz.first_neg == 2);
  CHECK(!sz.any_pos);
  CHECK(sz.all_nonpos());

  // 2 (1/2)^n - (3/4)^n: positive at n=1, negative from n=2 on
  GeoSeq m = GeoSeq(r(0), r(2), r(1, 2)) + GeoSeq(r(0), r(-1), r(3, 4));
  auto sm = m.sign_over(1);
  CHECK(sm.any_pos);
  CHECK(sm.first_pos == 1);
  CHECK(sm.any_neg);
  CHECK(sm.first_neg == 2);
  CHECK(sm.none_zero());
  CHECK(!sm.all_neg());

  auto late = m.sign_over(2);
  CHECK(late.all_neg());
}

TEST_CASE("seq_compare orders two sequences for all indices") {
  GeoSeq pnext(r(1), r(-3, 4), r(1, 2));  // p_{n+1}
  auto c = cmif::seq_compare(pnext, GeoSeq(r(1)), 1);
  CHECK(c.all_neg());  // p_{n+1} < 1 for every n

  GeoSeq q(r(1), r(-1), r(1, 2));
  GeoSeq p(r(1), r(-3, 2), r(1, 2));
  CHECK(cmif::seq_compare(q, p, 1).all_pos());      // q_n > p_n
  CHECK(cmif::seq_compare(p, p, 1).all_zero());
}

TEST_CASE("equality is index independence of the difference") {
  GeoSeq a(r(1), r(-3, 2), r(1, 2));
  GeoSeq b = (GeoSeq(r(2), r(-3), r(1, 2))).scaled(r(1, 2));
  CHECK(a == b);
  CHECK(a != GeoSeq(r(1), r(-1), r(1, 2)));
}

TEST_CASE("linear fractional coordinate sequences") {
  CoordSeq xp = CoordSeq::lin_frac(r(1), r(-1), r(2), r(0));  // (n-1)/(2n)
  CHECK(xp.value_at(1) == r(0));
  CHECK(xp.value_at(2) == r(1, 4));
  CHECK(xp.value_at(3) == r(1, 3));
  CHECK(xp.value_at(5) == r(2, 5));
  CHECK(xp.limit() == r(1, 2));
  CHECK(xp.direction_from(1) == 1);
  CHECK(xp.well_formed_from(1));
  CHECK(xp.first_reaching(r(1, 3), 1) == 3);
  CHECK(xp.first_reaching(r(3, 10), 1) == 3);
  CHECK(xp.first_reaching(r(0), 1) == 1);
  CHECK(!xp.first_reaching(r(1, 2), 1));  // never reaches its limit

  CoordSeq xq = CoordSeq::lin_frac(r(2), r(-1), r(4), r(2));  // (2n-1)/(4n+2)
  CHECK(xq.value_at(1) == r(1, 6));
  CHECK(xq.value_at(2) == r(3, 10));
  CHECK(xq.limit() == r(1, 2));
  CHECK(xq.direction_from(1) == 1);
}

TEST_CASE("geometric and constant coordinate sequences") {
  CoordSeq u = CoordSeq::geometric(r(1), r(-1, 2), r(1, 2));
  CHECK(u.value_at(1) == r(3, 4));
  CHECK(u.value_at(2) == r(7, 8));
  CHECK(u.limit() == r(1));
  CHECK(u.direction_from(1) == 1);
  CHECK(u.first_reaching(r(7, 8), 1) == 2);
  CHECK(u.first_reaching(r(9, 10), 1) == 3);  // 15/16 is the first above 9/10

  CoordSeq down = CoordSeq::geometric(r(0), r(1), r(1, 2));
  CHECK(down.direction_from(1) == -1);
  CHECK(down.first_reaching(r(1, 10), 1) == 4);  // 1/16 is the first below 1/10

  CoordSeq c = CoordSeq::constant(r(2, 7));
  CHECK(c.value_at(99) == r(2, 7));
  CHECK(c.limit() == r(2, 7));
  CHECK(c.direction_from(1) == 0);
  CHECK(c.first_reaching(r(2, 7), 5) == 5);
  CHECK(!c.first_reaching(r(1, 3), 5));
}
