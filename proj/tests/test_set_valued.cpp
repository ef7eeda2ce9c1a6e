#include "doctest.h"

#include <stdexcept>

#include "cmif/closed_set.hpp"
#include "cmif/set_valued.hpp"
#include "common/fixtures.hpp"

using namespace cmif;
using fixtures::r;

TEST_CASE("closed sets normalize, test membership, and measure distance") {
  ClosedSet1D s = ClosedSet1D::from_intervals({{r(1, 2), r(1)}, {r(0), r(1, 2)}, {r(2), r(3)}});
  REQUIRE(s.component_count() == 2);
  CHECK(s.components()[0] == std::pair<Rational, Rational>{r(0), r(1)});
  CHECK(s.contains(r(1, 3)));
  CHECK(!s.contains(r(3, 2)));
  CHECK(s.min() == r(0));
  CHECK(s.max() == r(3));
  CHECK(s.distance_to(r(3, 2)) == r(1, 2));
  CHECK(s.distance_to(r(5, 2)) == r(0));

  ClosedSet1D t = ClosedSet1D::interval(r(1), r(0));  // swapped on purpose
  CHECK(t.components()[0] == std::pair<Rational, Rational>{r(0), r(1)});

  CHECK(ClosedSet1D::interval(r(1, 3), r(2, 3)).subset_of(t));
  CHECK(!t.subset_of(ClosedSet1D::interval(r(1, 3), r(2, 3))));
  CHECK(ClosedSet1D::empty().subset_of(t));
  CHECK(ClosedSet1D::singleton(r(1)).union_with(ClosedSet1D::singleton(r(0))).component_count() == 2);

  CHECK(hausdorff_1d(ClosedSet1D::interval(r(0), r(1)), ClosedSet1D::singleton(r(0))) == r(1));
  // the farthest point of [0,10] from {0,10} is the gap midpoint 5
  ClosedSet1D pair = ClosedSet1D::singleton(r(0)).union_with(ClosedSet1D::singleton(r(10)));
  CHECK(hausdorff_1d(ClosedSet1D::interval(r(0), r(10)), pair) == r(5));
  CHECK(hausdorff_1d(pair, pair) == r(0));
  CHECK_THROWS_AS(hausdorff_1d(pair, ClosedSet1D::empty()), std::logic_error);

  CHECK(ClosedSet1D::interval(r(1, 3), r(2, 3)).str() == "[1/3, 2/3]");
  CHECK(ClosedSet1D::singleton(r(4, 5)).str() == "{4/5}");
}

TEST_CASE("generated functions evaluate by locate and affine rules") {
  GeneratedFn f = fixtures::bennet_fn();
  CHECK(f.evaluate(r(0)) == ClosedSet1D::singleton(r(0)));
  CHECK(f.evaluate(r(1)) == ClosedSet1D::singleton(r(1)));
  CHECK(f.evaluate(r(1, 4)) == ClosedSet1D::singleton(r(5, 8)));   // p1 -> p2
  CHECK(f.evaluate(r(1, 2)) == ClosedSet1D::singleton(r(1)));      // q1 -> 1
  CHECK(f.evaluate(r(3, 10)) == ClosedSet1D::singleton(r(7, 10)));
  CHECK(f.evaluate(r(1, 10)) == ClosedSet1D::singleton(r(1, 4)));
  CHECK(f.evaluate(r(3, 2)).is_empty());

  GeneratedFn id = fixtures::identity_fn();
  CHECK(id.evaluate(r(1, 3)) == ClosedSet1D::singleton(r(1, 3)));
  CHECK(id.evaluate(r(0)) == ClosedSet1D::singleton(r(0)));

  GeneratedFn tent = fixtures::tent_fn(r(1, 2));
  CHECK(tent.evaluate(r(1, 4)) == ClosedSet1D::singleton(r(1, 2)));
  CHECK(tent.evaluate(r(3, 4)) == ClosedSet1D::singleton(r(1, 2)));
  CHECK(tent.evaluate(r(1, 2)) == ClosedSet1D::singleton(r(1)));

  GeneratedFn full = fixtures::two_tails_full_fn();
  CHECK(full.evaluate(r(1, 3)) == ClosedSet1D::singleton(r(1, 3)));
  CHECK(full.evaluate(r(1, 4)) == ClosedSet1D::interval(r(0), r(1)));

  GeneratedFn stray = fixtures::stray_limit_fn();
  CHECK(stray.evaluate(r(1, 4)) == ClosedSet1D::singleton(r(2, 3)));
}

TEST_CASE("gap maps invert exactly") {
  GeneratedFn f = fixtures::bennet_fn();
  Locate loc = f.part.locate(r(3, 10));
  REQUIRE(loc.kind == Locate::Kind::InGap);
  Rational y = f.map_on_gap(loc.gap, r(3, 10));
  CHECK(y == r(7, 10));
  CHECK(f.invert_on_gap(loc.gap, y) == r(3, 10));
  CHECK_THROWS_AS(f.invert_on_gap(loc.gap, r(1, 100)), std::invalid_argument);
}

TEST_CASE("shape mismatches are rejected") {
  GeneratedFn f = fixtures::bennet_fn();
  GeneratedFn broken = f;
  broken.template_rules.pop_back();
  CHECK_THROWS_AS(broken.check_shape(), std::invalid_argument);
  GeneratedFn extra = f;
  extra.explicit_values[r(1, 3)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  CHECK_THROWS_AS(extra.check_shape(), std::invalid_argument);
  GeneratedFn badfam = f;
  badfam.prefix_rules[0].right = Ref::member(9, 2);
  CHECK_THROWS_AS(badfam.check_shape(), std::invalid_argument);
}

TEST_CASE("finite graph fibers") {
  FiniteGraph g = fixtures::harmonic_rungs_graph();
  CHECK(graph_fiber(g, r(3, 4)).closure == ClosedSet1D::singleton(r(9, 10)));
  CHECK(graph_fiber(g, r(1, 2)).closure == ClosedSet1D::interval(r(0), r(1)));
  CHECK(graph_fiber(g, r(0)).closure == ClosedSet1D::singleton(r(1, 3)));
  CHECK(graph_fiber(g, r(1, 5)).closure.is_empty());  // hole between rungs

  FiniteGraph gc = fixtures::harmonic_rungs_complete_graph();
  CHECK(graph_fiber(gc, r(1, 5)).closure == ClosedSet1D::singleton(r(8, 15)));

  CHECK(contains_point(g, r(3, 4), r(9, 10)));
  CHECK(!contains_point(g, r(3, 4), r(1, 2)));

  CHECK(family_indices_at(g.families[0], r(1, 4)) == std::vector<long>{2});
  CHECK(family_indices_at(g.families[0], r(1, 6)) == std::vector<long>{1});
  CHECK(family_indices_at(g.families[0], r(1, 5)).empty());

  FiniteGraph box = fixtures::open_box_graph();
  GraphFiber edge = graph_fiber(box, r(1, 2));
  CHECK(edge.closure == ClosedSet1D::singleton(r(1, 2)));
  CHECK(edge.is_closed());
  CHECK(graph_fiber(box, r(1, 4)).closure == ClosedSet1D::interval(r(0), r(1)));
  CHECK(contains_point(box, r(1, 4), r(1)));
  CHECK(!contains_point(box, r(1, 2), r(0)));
}

TEST_CASE("closedness check pins the missing edge") {
  GraphCheck bad = closed_graph_check(fixtures::open_box_graph());
  REQUIRE(!bad.ok);
  CHECK(bad.violations[0].x == r(1, 2));
  CHECK(bad.violations[0].y == r(0));

  CHECK(closed_graph_check(fixtures::harmonic_rungs_graph()).ok);
  CHECK(closed_graph_check(fixtures::harmonic_rungs_complete_graph()).ok);
  CHECK(closed_graph_check(fixtures::two_lines_graph()).ok);

  // an open endpoint nothing else covers
  FiniteGraph open_end = fixtures::two_lines_graph();
  open_end.segments[0].open1 = true;
  GraphCheck oc = closed_graph_check(open_end);
  REQUIRE(!oc.ok);
  CHECK(oc.violations[0].x == r(0));
  CHECK(oc.violations[0].y == r(1, 4));
}

TEST_CASE("totality check distinguishes chained rungs from holes") {
  GraphCheck holes = total_graph_check(fixtures::harmonic_rungs_graph());
  REQUIRE(!holes.ok);
  CHECK(holes.violations[0].x == r(5, 24));  // midpoint of the first hole

  CHECK(total_graph_check(fixtures::harmonic_rungs_complete_graph()).ok);
  CHECK(total_graph_check(fixtures::two_lines_graph()).ok);
  CHECK(total_graph_check(fixtures::open_box_graph()).ok);
}

TEST_CASE("surjectivity check projects onto the codomain") {
  CHECK(surjective_graph_check(fixtures::harmonic_rungs_complete_graph()).ok);
  CHECK(surjective_graph_check(fixtures::open_box_graph()).ok);
  GraphCheck lines = surjective_graph_check(fixtures::two_lines_graph());
  REQUIRE(!lines.ok);
  CHECK(lines.violations[0].y == r(0));
}

TEST_CASE("truncation materializes family members") {
  FiniteGraph t5 = truncate_graph(fixtures::harmonic_rungs_graph(), 5);
  CHECK(t5.segments.size() == 7);
  CHECK(t5.families.empty());
  FiniteGraph tb = truncate_graph(fixtures::open_box_graph(), 16);
  CHECK(tb.segments.size() == 1);
  CHECK(tb.boxes.size() == 1);
}

TEST_CASE("coordinate shift identities") {
  CoordSeq xq = CoordSeq::lin_frac(r(2), r(-1), r(4), r(2));   // (2n-1)/(4n+2)
  CoordSeq xp = CoordSeq::lin_frac(r(1), r(-1), r(2), r(0));   // (n-1)/(2n)
  CoordSeq xd = CoordSeq::lin_frac(r(1), r(0), r(2), r(2));    // n/(2n+2)
  CHECK(coordseq_shift_equal(xd, xp, 1, 1));
  CHECK(!coordseq_shift_equal(xq, xp, 0, 1));
  CHECK(coordseq_shift_equal(CoordSeq::geometric(r(1), r(-3, 4), r(1, 2)),
                             CoordSeq::geometric(r(1), r(-3, 2), r(1, 2)), 1, 1));
  CHECK(!coordseq_shift_equal(CoordSeq::geometric(r(1), r(-3, 4), r(1, 2)),
                              CoordSeq::geometric(r(1), r(-3, 2), r(1, 3)), 1, 1));
  CHECK(coordseq_shift_equal(CoordSeq::constant(r(1, 3)), CoordSeq::constant(r(1, 3)), 7, 1));
}

TEST_CASE("unified wrapper dispatches to either representation") {
  SetValuedFn fg(fixtures::harmonic_rungs_graph());
  CHECK(fg.is_graph());
  CHECK(fg.dom_lo() == r(0));
  CHECK(fg.evaluate(r(3, 4)).closure == ClosedSet1D::singleton(r(9, 10)));
  CHECK(fg.contains(r(3, 4), r(9, 10)));

  SetValuedFn fb(fixtures::bennet_fn());
  CHECK(fb.is_generated());
  CHECK(fb.dom_hi() == r(1));
  CHECK(fb.evaluate(r(3, 10)).closure == ClosedSet1D::singleton(r(7, 10)));
  CHECK(fb.contains(r(1, 4), r(5, 8)));
  CHECK(!fb.contains(r(1, 4), r(1, 2)));
}
