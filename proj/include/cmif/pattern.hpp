#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmif/partition.hpp"
#include "cmif/rational.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// Order isomorphism between two partitions, kept in structured form: each
// source family maps onto a target family by an index shift n |-> n + shift,
// and the finitely many points outside those rules (explicit points plus
// members below the shifted range) pair up in explicit_map.
struct FamilyMap {
  int target_family = -1;
  long shift = 0;
};

struct PatternMap {
  MarkovPartition source, target;
  std::map<Rational, Rational> explicit_map;
  std::vector<FamilyMap> family_map;  // indexed like source.families()
};

// First source index the family rule itself covers; members below it must
// appear in explicit_map.
long pattern_from_n(const PatternMap& t, int family);

// Structural soundness: families pair up side-preservingly, accumulation
// points map to accumulation points, the finite leftovers biject exactly,
// and the induced total map is strictly increasing (prefix checked point by
// point, tail cycles symbolically over all indices).
PartitionReport validate_pattern(const PatternMap& t);

// Image of a source partition point. Throws std::invalid_argument when p is
// not a point of the source partition or the map does not cover it; neither
// can happen for a validated map.
Ref tau_apply(const PatternMap& t, const Ref& p);
Rational tau_value(const PatternMap& t, const Rational& v);

// Image of a symbolic reference, index for index: members follow their
// family's shift, fixed values go through the point map. Only meaningful at
// indices inside the shifted range.
SymRef tau_sym(const PatternMap& t, const SymRef& r);

// Same interval, same explicit points, same family data slot for slot.
// Family ids are labels and do not participate.
bool same_partition(const MarkovPartition& a, const MarkovPartition& b);

// Swap of source and target: inverted explicit pairs, negated shifts.
PatternMap invert_pattern(const PatternMap& t);

// Outcome of the three biconditionals: values, limits from below, limits
// from above. condition 0 flags a map that fails structural validation.
struct PatternCheck {
  bool ok = true;
  int condition = 0;
  Rational at;
  std::string detail;

  static PatternCheck pass() { return {}; }
  static PatternCheck fail(int cond, Rational at, std::string detail) {
    return {false, cond, std::move(at), std::move(detail)};
  }
};

// Do f and g follow the same pattern under t? Verifies, for every a in the
// source partition, that values and both one-sided limits correspond under
// t. Family rules are compared once symbolically over all indices; the
// finite prefix, exceptional members, and accumulation points are compared
// through exact evaluation. Both functions are expected to verify as
// countably Markov beforehand.
PatternCheck check_same_pattern(const GeneratedFn& f, const GeneratedFn& g, const PatternMap& t);

// Search the structured class for a map passing check_same_pattern: family
// bijections in lexicographic order, shift vectors by largest magnitude then
// lexicographically, leftovers paired in sorted order. Deterministic; the
// first hit is returned. none means "not found in this class", not a proof
// that no pattern map exists.
std::optional<PatternMap> find_pattern_map(const GeneratedFn& f, const GeneratedFn& g,
                                           long shift_bound = 8);

}  // namespace cmif
