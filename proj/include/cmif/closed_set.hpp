#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmif/rational.hpp"

namespace cmif {

// Closed subset of the line with finitely many components, kept as sorted
// pairwise disjoint closed intervals (singletons have lo == hi).
class ClosedSet1D {
 public:
  ClosedSet1D() = default;
  static ClosedSet1D empty() { return {}; }
  static ClosedSet1D singleton(Rational v);
  static ClosedSet1D interval(Rational lo, Rational hi);  // swaps if misordered
  static ClosedSet1D from_intervals(std::vector<std::pair<Rational, Rational>> parts);

  bool is_empty() const { return comps_.empty(); }
  size_t component_count() const { return comps_.size(); }
  const std::vector<std::pair<Rational, Rational>>& components() const { return comps_; }

  bool contains(const Rational& v) const;
  bool subset_of(const ClosedSet1D& other) const;
  ClosedSet1D union_with(const ClosedSet1D& other) const;

  const Rational& min() const;  // throws when empty
  const Rational& max() const;

  // Distance from v to the nearest point of the set; throws when empty.
  Rational distance_to(const Rational& v) const;

  std::string str() const;

  friend bool operator==(const ClosedSet1D& a, const ClosedSet1D& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const ClosedSet1D& a, const ClosedSet1D& b) { return !(a == b); }

 private:
  std::vector<std::pair<Rational, Rational>> comps_;
};

// Exact Hausdorff distance between two nonempty closed sets; throws when
// either is empty.
Rational hausdorff_1d(const ClosedSet1D& a, const ClosedSet1D& b);

}  // namespace cmif
