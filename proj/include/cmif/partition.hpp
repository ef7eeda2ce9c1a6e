#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmif/geoseq.hpp"
#include "cmif/rational.hpp"

namespace cmif {

// Infinite tail of a partition: value(n) = alpha + beta * rho^n for n >= n0.
// beta < 0 puts the members below alpha, beta > 0 above; either way the
// members march monotonically toward the (never attained) limit alpha.
struct GeometricFamily {
  std::string id;
  Rational alpha, beta, rho;
  long n0 = 1;

  Rational value(long n) const { return alpha + beta * rho.pow(n); }
  const Rational& limit() const { return alpha; }
  bool from_below() const { return beta.sign() < 0; }
  Rational dist(long n) const { return beta.abs() * rho.pow(n); }
};

// Concrete reference to a point: an explicit partition point, a family member
// at a fixed index, or a raw constant (used by function data that may point
// outside the partition; verification flags those).
struct Ref {
  enum class Kind { Explicit, Member, Const };
  Kind kind = Kind::Explicit;
  Rational value;   // Explicit / Const payload
  int family = -1;  // Member payload
  long index = 0;

  static Ref explicit_pt(Rational v) { return {Kind::Explicit, std::move(v), -1, 0}; }
  static Ref member(int fam, long n) { return {Kind::Member, Rational(0), fam, n}; }
  static Ref constant(Rational v) { return {Kind::Const, std::move(v), -1, 0}; }
  bool in_partition() const { return kind != Kind::Const; }
  friend bool operator==(const Ref& a, const Ref& b);
};

// Symbolic reference parameterized by the template index n: family member at
// n + offset, or an n-independent explicit/constant value.
struct SymRef {
  enum class Kind { Explicit, Member, Const };
  Kind kind = Kind::Explicit;
  Rational value;
  int family = -1;
  long offset = 0;

  static SymRef explicit_pt(Rational v) { return {Kind::Explicit, std::move(v), -1, 0}; }
  static SymRef member(int fam, long off) { return {Kind::Member, Rational(0), fam, off}; }
  static SymRef constant(Rational v) { return {Kind::Const, std::move(v), -1, 0}; }
  static SymRef fixed(const Ref& r);  // lift a concrete ref into a constant sequence
  Ref at(long n) const;
  friend bool operator==(const SymRef& a, const SymRef& b);
};

struct ValidationIssue {
  std::string code;
  std::string detail;
};

struct PartitionReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  void add(std::string code, std::string detail);
};

// One accumulation side of the order model. Members interleave eventually
// periodically because families sharing a limit share rho; a period lists
// each family once. cycle[j] = (family, index offset); period t concretizes
// slot j to index start_n + t + offset_j. For a below tail the cycle is in
// ascending value order, for an above tail descending (outermost first).
struct OrderTail {
  Rational alpha;
  bool from_below = true;
  std::vector<std::pair<int, long>> cycle;
  long start_n = 1;
};

struct OrderItem {
  enum class Kind { Point, Tail };
  Kind kind = Kind::Point;
  Rational value;  // Point payload
  Ref ref;
  int tail = -1;   // Tail payload
};

struct OrderModel {
  std::vector<OrderItem> items;  // ascending; a tail sits beside its alpha
  std::vector<OrderTail> tails;
};

// Maximal open interval of [lo,hi] free of partition points. Concrete gaps
// carry resolved endpoints; template gaps describe one cyclic slot of a tail
// for every index n >= start_n simultaneously.
struct GapDesc {
  bool is_template = false;
  Ref left, right;
  Rational left_value, right_value;
  int tail = -1;
  int pos = -1;
  SymRef sym_left, sym_right;
  long start_n = 1;
};

struct GapInstance {
  bool is_template = false;
  int gap_index = -1;  // into prefix_gaps() or template_gaps()
  long n = 0;          // template index
  Ref left, right;
  Rational left_value, right_value;
};

struct Locate {
  enum class Kind { ExplicitPoint, FamilyMember, InGap, Outside };
  Kind kind = Kind::Outside;
  Ref point;
  GapInstance gap;
};

// Validated countable Markov partition of [lo,hi] with its merged order
// model and gap structure.
class MarkovPartition {
 public:
  struct Input {
    Rational lo, hi;
    std::vector<Rational> explicit_points;
    std::vector<GeometricFamily> families;
  };

  static PartitionReport validate(const Input& in);
  // Throws std::invalid_argument (message = joined issues) when invalid.
  static MarkovPartition build(Input in);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::vector<Rational>& explicit_points() const { return explicit_points_; }
  const std::vector<GeometricFamily>& families() const { return families_; }
  const GeometricFamily& family(int i) const { return families_.at(i); }
  int family_index(const std::string& id) const;  // -1 when unknown

  const OrderModel& order() const { return order_; }
  const std::vector<GapDesc>& prefix_gaps() const { return prefix_gaps_; }
  const std::vector<GapDesc>& template_gaps() const { return template_gaps_; }

  Rational resolve(const Ref& r) const;
  GeoSeq seq(const SymRef& r) const;
  GapInstance instantiate(int template_gap_index, long n) const;

  Locate locate(const Rational& t) const;
  // Ref for t when t is a partition point; nullopt otherwise.
  std::optional<Ref> classify_point(const Rational& t) const;

  // Limits of the family tails, ascending and deduplicated.
  std::vector<Rational> derived_set() const;
  bool accumulates_from_below(const Rational& a) const;
  bool accumulates_from_above(const Rational& a) const;

  // All partition points with member index <= depth, ascending.
  std::vector<Rational> materialize_points(long depth) const;
  std::vector<std::pair<Rational, Ref>> materialize_refs(long depth) const;

  // Distance from a to the nearest partition point (or domain end) strictly
  // on the given side; nullopt when structure accumulates at a on that side
  // or a is the domain end.
  std::optional<Rational> clearance_below(const Rational& a) const;
  std::optional<Rational> clearance_above(const Rational& a) const;

 private:
  MarkovPartition() = default;
  void build_order();
  void build_gaps();

  Rational lo_, hi_;
  std::vector<Rational> explicit_points_;
  std::vector<GeometricFamily> families_;
  OrderModel order_;
  std::vector<GapDesc> prefix_gaps_;
  std::vector<GapDesc> template_gaps_;
};

// Unique n >= n_min with rho^n == q, for 0 < rho < 1; nullopt when none.
std::optional<long> solve_geometric_index(const Rational& rho, const Rational& q, long n_min);

}  // namespace cmif
