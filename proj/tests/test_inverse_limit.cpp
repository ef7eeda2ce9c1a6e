#include "cmif/inverse_limit.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "common/fixtures.hpp"
#include "doctest.h"

using namespace cmif;
using fixtures::r;

namespace {

SetValuedFn wrap(const GeneratedFn& f) { return SetValuedFn(f); }
SetValuedFn wrap(const FiniteGraph& g) { return SetValuedFn(g); }

PatternMap identity_map(const MarkovPartition& p) {
  PatternMap t{p, p, {}, {}};
  for (size_t i = 0; i < p.families().size(); ++i)
    t.family_map.push_back({static_cast<int>(i), 0});
  for (const Rational& e : p.explicit_points()) t.explicit_map.emplace(e, e);
  return t;
}

PatternMap doubling_map() {
  PatternMap t{fixtures::bennet_partition(), fixtures::bennet_scaled_partition(), {}, {}};
  t.family_map = {{0, 0}, {1, 0}};
  t.explicit_map.emplace(r(0), r(0));
  t.explicit_map.emplace(r(1), r(2));
  return t;
}

DepthNApprox cloud(std::vector<std::vector<Rational>> ts) {
  DepthNApprox a;
  a.depth = ts.empty() ? 0 : ts.front().size();
  a.tuples = std::move(ts);
  a.resolution = r(1);
  std::sort(a.tuples.begin(), a.tuples.end());
  return a;
}

bool holds_tuple(const DepthNApprox& a, const std::vector<Rational>& t) {
  return std::binary_search(a.tuples.begin(), a.tuples.end(), t);
}

bool embeds_in(const DepthNApprox& coarse, const DepthNApprox& fine) {
  return std::includes(fine.tuples.begin(), fine.tuples.end(), coarse.tuples.begin(),
                       coarse.tuples.end());
}

void check_consistent(const std::vector<SetValuedFn>& fs, const DepthNApprox& a) {
  REQUIRE_FALSE(a.tuples.empty());
  CHECK(std::is_sorted(a.tuples.begin(), a.tuples.end()));
  CHECK(std::adjacent_find(a.tuples.begin(), a.tuples.end()) == a.tuples.end());
  for (const auto& t : a.tuples) {
    REQUIRE(t.size() == a.depth);
    CHECK(membership_check(fs, t).ok);
  }
}

// Largest |image| / |gap| over the materialized gap rules of f.
Rational max_rule_slope(const GeneratedFn& f, long depth) {
  Rational s(0);
  auto feed = [&](const GapInstance& gap) {
    auto [y1, y2] = f.rule_images(gap);
    s = max(s, ((y2 - y1) / (gap.right_value - gap.left_value)).abs());
  };
  const MarkovPartition& P = f.part;
  for (size_t i = 0; i < P.prefix_gaps().size(); ++i) {
    const GapDesc& g = P.prefix_gaps()[i];
    feed(GapInstance{false, static_cast<int>(i), 0, g.left, g.right, g.left_value,
                     g.right_value});
  }
  for (size_t i = 0; i < P.template_gaps().size(); ++i)
    for (long n = P.template_gaps()[i].start_n; n <= depth; ++n)
      feed(P.instantiate(static_cast<int>(i), n));
  return s;
}

// Largest piece slope of h over concrete pieces and materialized template
// instances.
Rational max_map_slope(const PiecewiseHomeo& h, long depth) {
  Rational s(0);
  for (const HomeoPiece& pc : h.concrete_pieces()) s = max(s, pc.slope().abs());
  const MarkovPartition& P = h.domain();
  for (size_t i = 0; i < P.template_gaps().size(); ++i)
    for (long n = P.template_gaps()[i].start_n; n <= depth; ++n) {
      GapInstance inst = P.instantiate(static_cast<int>(i), n);
      Rational rise = h.apply(inst.right_value) - h.apply(inst.left_value);
      s = max(s, (rise / (inst.right_value - inst.left_value)).abs());
    }
  return s;
}

}  // namespace

TEST_CASE("membership follows the bonding fibers exactly") {
  std::vector<SetValuedFn> id = {wrap(fixtures::identity_fn())};
  CHECK(membership_check(id, {r(1, 3), r(1, 3), r(1, 3)}).ok);

  std::vector<SetValuedFn> ex = {wrap(fixtures::harmonic_rungs_complete_graph())};
  CHECK(membership_check(ex, {r(9, 10), r(3, 4)}).ok);
  CHECK(membership_check(ex, {r(9, 10), r(3, 4), r(1, 2)}).ok);

  MembershipCheck mc = membership_check(ex, {r(1, 2), r(3, 4)});
  CHECK_FALSE(mc.ok);
  CHECK(mc.index == 1);

  // the vertical fiber at 1/2 accepts 3/4, the point fiber at 1 does not
  mc = membership_check(ex, {r(9, 10), r(3, 4), r(1)});
  CHECK_FALSE(mc.ok);
  CHECK(mc.index == 2);

  // a coordinate off the domain fails instead of throwing
  mc = membership_check(ex, {r(1, 2), r(3, 2)});
  CHECK_FALSE(mc.ok);
  CHECK(mc.index == 1);

  // one map per level, checked in order
  std::vector<SetValuedFn> mixed = {id[0], ex[0]};
  CHECK(membership_check(mixed, {r(1, 2), r(1, 2), r(1, 2)}).ok);
  mc = membership_check(mixed, {r(1, 2), r(1, 2), r(3, 4)});
  CHECK_FALSE(mc.ok);
  CHECK(mc.index == 2);

  CHECK_THROWS_AS(membership_check(id, {r(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(membership_check({}, {r(1, 2), r(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(membership_check(mixed, {r(0), r(0), r(0), r(0)}), std::invalid_argument);
}

TEST_CASE("a depth two identity cloud is the diagonal") {
  DepthNApprox a = approximate({wrap(fixtures::identity_fn())}, 2, r(1, 4));
  std::vector<std::vector<Rational>> want = {{r(0), r(0)},
                                             {r(1, 4), r(1, 4)},
                                             {r(1, 2), r(1, 2)},
                                             {r(3, 4), r(3, 4)},
                                             {r(1), r(1)}};
  CHECK(a.tuples == want);
  CHECK(a.depth == 2);
  CHECK(a.resolution == r(1, 4));
  CHECK(a.truncation == 16);

  CHECK_THROWS_AS(approximate({wrap(fixtures::identity_fn())}, 1, r(1, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(approximate({wrap(fixtures::identity_fn())}, 2, r(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(approximate({}, 2, r(1, 4)), std::invalid_argument);
}

TEST_CASE("a depth two cloud reads the graph backwards") {
  std::vector<SetValuedFn> ex = {wrap(fixtures::harmonic_rungs_complete_graph())};
  DepthNApprox a = approximate(ex, 2, r(1, 8));

  // first coordinate is the value, second the argument
  CHECK(holds_tuple(a, {r(9, 10), r(3, 4)}));
  CHECK_FALSE(holds_tuple(a, {r(3, 4), r(9, 10)}));

  // the vertical fiber is swept endpoint to endpoint
  CHECK(holds_tuple(a, {r(0), r(1, 2)}));
  CHECK(holds_tuple(a, {r(1, 2), r(1, 2)}));
  CHECK(holds_tuple(a, {r(1), r(1, 2)}));

  check_consistent(ex, a);
}

TEST_CASE("generated clouds check themselves") {
  std::vector<SetValuedFn> fb = {wrap(fixtures::bennet_fn())};
  DepthNApprox b = approximate(fb, 3, r(1, 64));
  CHECK(b.tuples.size() >= 100);
  check_consistent(fb, b);

  std::vector<SetValuedFn> ex = {wrap(fixtures::harmonic_rungs_complete_graph())};
  check_consistent(ex, approximate(ex, 3, r(1, 8)));
}

TEST_CASE("seeding stops at the truncation depth but values do not") {
  MarkovPartition P = fixtures::bennet_partition();
  Rational p3 = P.family(0).value(3);
  Rational p4 = P.family(0).value(4);
  DepthNApprox a = approximate({wrap(fixtures::bennet_fn())}, 2, r(1), 3);
  bool p3_seeded = false, p4_seeded = false, p4_reached = false;
  for (const auto& t : a.tuples) {
    if (t[1] == p3) p3_seeded = true;
    if (t[1] == p4) p4_seeded = true;
    if (t[0] == p4 && t[1] == p3) p4_reached = true;
  }
  CHECK(p3_seeded);
  CHECK_FALSE(p4_seeded);
  CHECK(p4_reached);
}

TEST_CASE("finer resolution only adds tuples") {
  std::vector<SetValuedFn> id = {wrap(fixtures::identity_fn())};
  DepthNApprox i4 = approximate(id, 2, r(1, 4));
  DepthNApprox i8 = approximate(id, 2, r(1, 8));
  CHECK(embeds_in(i4, i8));
  CHECK(hausdorff_distance(i4, i8) == r(1, 8));

  std::vector<SetValuedFn> ex = {wrap(fixtures::harmonic_rungs_complete_graph())};
  CHECK(embeds_in(approximate(ex, 2, r(1, 4)), approximate(ex, 2, r(1, 8))));

  std::vector<SetValuedFn> fb = {wrap(fixtures::bennet_fn())};
  DepthNApprox b16 = approximate(fb, 3, r(1, 16));
  DepthNApprox b32 = approximate(fb, 3, r(1, 32));
  CHECK(embeds_in(b16, b32));

  // propagation multiplies the seed offset by the gap slopes, so the
  // refinement distance is bounded by the slope-scaled resolution, not by
  // the resolution itself
  Rational S = max_rule_slope(fixtures::bennet_fn(), 12);
  CHECK(S == r(5, 2));
  Rational d = hausdorff_distance(b16, b32);
  CHECK(d == r(25, 128));
  CHECK(d > r(1, 16));
  CHECK(d <= r(1, 16) * S * S);
}

TEST_CASE("hausdorff distance compares clouds under the max metric") {
  DepthNApprox i4 = approximate({wrap(fixtures::identity_fn())}, 2, r(1, 4));
  CHECK(hausdorff_distance(i4, i4) == r(0));

  DepthNApprox a = cloud({{r(0), r(0)}});
  DepthNApprox b = cloud({{r(1), r(0)}});
  CHECK(hausdorff_distance(a, b) == r(1));

  DepthNApprox c = cloud({{r(0), r(0)}, {r(1), r(0)}});
  CHECK(hausdorff_distance(c, a) == r(1));
  CHECK(hausdorff_distance(a, c) == r(1));

  CHECK(hausdorff_distance(a, cloud({{r(1, 2), r(1, 3)}})) == r(1, 2));

  CHECK_THROWS_AS(hausdorff_distance(a, cloud({{r(0), r(0), r(0)}})),
                  std::invalid_argument);
  DepthNApprox empty;
  empty.depth = 2;
  CHECK_THROWS_AS(hausdorff_distance(a, empty), std::invalid_argument);
  DepthNApprox ragged = cloud({{r(0), r(0)}});
  ragged.tuples.push_back({r(0), r(0), r(0)});
  CHECK_THROWS_AS(hausdorff_distance(ragged, a), std::invalid_argument);
}

TEST_CASE("transport carries whole clouds across a conjugacy") {
  DepthNApprox a = approximate({wrap(fixtures::bennet_fn())}, 3, r(1, 16));

  HomeoChain ident = build_chain({fixtures::bennet_fn()}, {fixtures::bennet_fn()},
                                 identity_map(fixtures::bennet_partition()), 2);
  CHECK(transport_test(ident, a, {wrap(fixtures::bennet_fn())}).ok);

  HomeoChain dbl = build_chain({fixtures::bennet_fn()}, {fixtures::bennet_scaled_fn()},
                               doubling_map(), 3);
  DepthNApprox a4 = approximate({wrap(fixtures::bennet_fn())}, 4, r(1, 16));
  CHECK(transport_test(dbl, a4, {wrap(fixtures::bennet_scaled_fn())}).ok);

  HomeoChain shallow = build_chain({fixtures::bennet_fn()}, {fixtures::bennet_fn()},
                                   identity_map(fixtures::bennet_partition()), 1);
  CHECK_THROWS_AS(transport_test(shallow, a, {wrap(fixtures::bennet_fn())}),
                  std::invalid_argument);
}

TEST_CASE("a corrupted chain is caught with an exact witness") {
  HomeoChain dbl = build_chain({fixtures::bennet_fn()}, {fixtures::bennet_scaled_fn()},
                               doubling_map(), 2);
  DepthNApprox a = approximate({wrap(fixtures::bennet_fn())}, 3, r(1, 16));
  std::vector<SetValuedFn> gs = {wrap(fixtures::bennet_scaled_fn())};
  CHECK(transport_test(dbl, a, gs).ok);

  std::vector<HomeoPiece> pcs = dbl.maps[1].concrete_pieces();
  bool bent = false;
  for (HomeoPiece& pc : pcs)
    if (pc.lo == r(0)) {
      pc.img_hi = pc.img_hi + r(1, 1000);
      bent = true;
    }
  REQUIRE(bent);
  std::vector<long> starts;
  for (size_t i = 0; i < dbl.maps[1].domain().template_gaps().size(); ++i)
    starts.push_back(dbl.maps[1].template_start(static_cast<int>(i)));
  std::vector<PiecewiseHomeo> maps;
  maps.push_back(dbl.maps[0]);
  maps.push_back(PiecewiseHomeo(doubling_map(), pcs, starts));
  maps.push_back(dbl.maps[2]);
  HomeoChain bad{std::move(maps), dbl.fs, dbl.gs, dbl.tau};

  TransportCheck tc = transport_test(bad, a, gs);
  REQUIRE_FALSE(tc.ok);
  CHECK(tc.witness == std::vector<Rational>{r(25, 64), r(5, 32), r(1, 16)});
  CHECK(tc.index == 1);
  REQUIRE(tc.image.size() == 3);
  CHECK(tc.image[1] == r(501, 1600));
  MembershipCheck mc = membership_check(gs, tc.image);
  CHECK_FALSE(mc.ok);
  CHECK(mc.index == tc.index);
}

TEST_CASE("a doubled cloud at doubled resolution is the transported cloud") {
  HomeoChain dbl = build_chain({fixtures::bennet_fn()}, {fixtures::bennet_scaled_fn()},
                               doubling_map(), 3);
  DepthNApprox af = approximate({wrap(fixtures::bennet_fn())}, 4, r(1, 16));
  DepthNApprox ag = approximate({wrap(fixtures::bennet_scaled_fn())}, 4, r(1, 8));

  DepthNApprox img;
  img.depth = af.depth;
  img.resolution = r(1, 8);
  img.truncation = af.truncation;
  for (const auto& t : af.tuples) img.tuples.push_back(apply_H(dbl, t, af.depth));
  std::sort(img.tuples.begin(), img.tuples.end());

  CHECK(img.tuples == ag.tuples);

  Rational S = r(0);
  for (const PiecewiseHomeo& h : dbl.maps) S = max(S, max_map_slope(h, 12));
  CHECK(S == r(2));
  Rational d = hausdorff_distance(img, ag);
  CHECK(d == r(0));
  CHECK(d <= max(af.resolution * S, ag.resolution));
}
