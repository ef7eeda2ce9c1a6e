#pragma once

#include <string>
#include <vector>

#include "cmif/closed_set.hpp"
#include "cmif/partition.hpp"
#include "cmif/rational.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// Exact location of a value relative to the partition point set.
struct Membership {
  enum class Kind { Explicit, Member, NotInA };
  Kind kind = Kind::NotInA;
  Rational value;
  int family = -1;  // Member payload
  long index = 0;

  bool in_partition() const { return kind != Kind::NotInA; }
};

// Decide v in A exactly. The Member case solves alpha + beta * rho^n = v for
// an integer n in range; no tolerance is involved anywhere.
Membership is_point_of(const MarkovPartition& p, const Rational& v);

// A place where one of the four membership conditions fails: the partition
// point (or gap) it fails at, the offending value or limit set, and a short
// reason.
struct MarkovWitness {
  Rational at;
  ClosedSet1D offending;
  std::string why;
};

struct ConditionResult {
  bool ok = true;
  std::vector<MarkovWitness> witnesses;
};

struct MarkovReport {
  bool overall = false;
  ConditionResult cond1;  // every value is an interval with endpoints in A
  ConditionResult cond2;  // every gap restriction is injective single-valued
  ConditionResult cond3;  // one-sided limits at isolated points stay inside A
  ConditionResult cond4;  // limit extremes at accumulation points stay inside A
  GraphCheck usc;
  std::vector<Rational> derived_set;
};

// Upper semicontinuity of a generated function: every one-sided limit at a
// partition point is contained in the value interval there (gap interiors
// are affine, hence automatic). Gap-side limits are checked per rule, family
// rules once symbolically; accumulation sides go through the exact limit
// machinery. Violations name the graph limit point (x, y) that the value
// misses.
GraphCheck usc_check(const GeneratedFn& f, long depth = 64);

// Decide whether f is a countably Markov interval function with respect to
// its partition. Family rules are index-affine, so each is verified once
// symbolically over all indices, backed by concrete spot checks for the
// first `depth` indices. Failures land in the report; only a malformed
// shape throws (std::invalid_argument, via check_shape).
MarkovReport verify_cmif(const GeneratedFn& f, long depth = 64);

}  // namespace cmif
