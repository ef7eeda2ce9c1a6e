#pragma once

#include <vector>

#include "cmif/closed_set.hpp"
#include "cmif/rational.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// One-sided limit of a set-valued function: the cluster values y of graph
// points (z, y) as z approaches `at` strictly from one side. Empty exactly
// when the approach side has no room (ambient endpoint) or no graph.
struct SideLimit {
  enum class Side { Up, Down };  // Up: z increases to at; Down: z decreases to at
  Side side = Side::Up;
  Rational at;
  ClosedSet1D value;
};

// Cluster values from the left (z < a), computed exactly. For the generated
// representation the answer comes from the adjacent gap rule or, at an
// accumulation point, from the limits of the tail's value and image
// sequences. For finite graphs it comes from incident segments, boxes, and
// segment-family limits. Families whose members cross `a` at heights that
// are not eventually constant have no finite description and are rejected
// with std::logic_error. Throws std::out_of_range when a is outside the
// ambient domain.
ClosedSet1D lim_up(const SetValuedFn& f, const Rational& a);
// Cluster values from the right (z > a); mirror of lim_up.
ClosedSet1D lim_down(const SetValuedFn& f, const Rational& a);
SideLimit side_limit(const SetValuedFn& f, const Rational& a, SideLimit::Side side);

// Brute-force estimate of the one-sided limit, independent of the symbolic
// path: fibers are sampled on nested uniform windows shrinking toward a, and
// only the deepest populated windows are kept, because a cluster value must
// stay visible at every scale. Each fiber component contributes points at
// spacing <= epsilon/2. Returns sorted distinct y values; intended as a test
// oracle for lim_up / lim_down.
std::vector<Rational> lim_sampling_oracle(const SetValuedFn& f, const Rational& a,
                                          SideLimit::Side side, const Rational& epsilon);

// Hull of sorted samples into maximal runs with consecutive gaps <= epsilon;
// each run becomes one component.
ClosedSet1D cluster_hull(const std::vector<Rational>& ys, const Rational& epsilon);

}  // namespace cmif
