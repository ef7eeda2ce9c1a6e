#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmif/closed_set.hpp"
#include "cmif/geoseq.hpp"
#include "cmif/partition.hpp"
#include "cmif/rational.hpp"

namespace cmif {

// ---- finite graph representation ----

struct Segment {
  Rational x1, y1, x2, y2;
  bool open1 = false, open2 = false;  // endpoint excluded from the graph
};

struct Box {
  Rational x1, x2, y1, y2;
  bool open_left = false, open_right = false, open_bottom = false, open_top = false;
};

// Countable family of segments: member n runs from (x_start(n), y_start) to
// (x_end(n), y_end) for n >= n0. The x coordinates march toward a limit; the
// heights stay fixed.
struct SegFamily {
  CoordSeq x_start, x_end;
  Rational y_start, y_end;
  long n0 = 1;
};

struct FiniteGraph {
  Rational dom_lo, dom_hi, cod_lo, cod_hi;
  std::vector<Segment> segments;
  std::vector<Box> boxes;
  std::vector<SegFamily> families;
};

// Vertical slice of a graph: the closure of the fiber plus the points an open
// edge removed from it (empty `removed` means the fiber itself is closed).
struct GraphFiber {
  ClosedSet1D closure;
  std::vector<Rational> removed;
  bool is_closed() const { return removed.empty(); }
};

bool contains_point(const FiniteGraph& g, const Rational& x, const Rational& y);
GraphFiber graph_fiber(const FiniteGraph& g, const Rational& x);
// Member indices of fam whose x-footprint contains x (finite; empty at the
// limit itself).
std::vector<long> family_indices_at(const SegFamily& fam, const Rational& x);
// Family members replaced by concrete segments for n <= depth; families dropped.
FiniteGraph truncate_graph(const FiniteGraph& g, long depth);

struct GraphViolation {
  Rational x, y;
  std::string why;
};

struct GraphCheck {
  bool ok = true;
  std::vector<GraphViolation> violations;
};

// Is the graph closed in the ambient rectangle? Open endpoints, open box
// edges, and family limit segments are the only places closedness can fail;
// each missing limit point is reported with the least witness on its edge.
GraphCheck closed_graph_check(const FiniteGraph& g);
// Does every x in the domain carry a nonempty fiber? Family coverage near a
// limit is established by symbolic chaining of consecutive members; holes are
// reported at their midpoint.
GraphCheck total_graph_check(const FiniteGraph& g);
// Does the closure of the graph project onto the whole codomain?
GraphCheck surjective_graph_check(const FiniteGraph& g);

// s1(n) == s2(n + shift) for every n >= n_from. Exact: linear-fractional
// agreement on three points forces the polynomial identity, geometric
// agreement is decided termwise.
bool coordseq_shift_equal(const CoordSeq& s1, const CoordSeq& s2, long shift, long n_from);

// ---- partition-generated representation ----

// Images of a gap's endpoints; f is affine across the gap between them.
struct GapRule {
  Ref left, right;
};

struct SymGapRule {
  SymRef left, right;
};

// Set-valued function determined by a Markov partition: an interval of values
// at every partition point, affine interpolation across every gap.
struct GeneratedFn {
  explicit GeneratedFn(MarkovPartition p) : part(std::move(p)) {}

  MarkovPartition part;
  Rational cod_lo, cod_hi;
  std::map<Rational, std::pair<Ref, Ref>> explicit_values;
  std::vector<std::pair<SymRef, SymRef>> family_values;  // indexed like part.families()
  std::vector<GapRule> prefix_rules;                     // indexed like part.prefix_gaps()
  std::vector<SymGapRule> template_rules;                // indexed like part.template_gaps()

  // Structural alignment check; throws std::invalid_argument on mismatch.
  void check_shape() const;

  // Value interval [u, v] at a partition point.
  std::pair<Rational, Rational> value_interval(const Ref& point) const;
  std::pair<Ref, Ref> value_refs(const Ref& point) const;
  // Resolved endpoint images of a located gap.
  std::pair<Rational, Rational> rule_images(const GapInstance& gap) const;
  std::pair<Ref, Ref> rule_refs(const GapInstance& gap) const;

  ClosedSet1D evaluate(const Rational& x) const;
  // Affine image of x across the given gap.
  Rational map_on_gap(const GapInstance& gap, const Rational& x) const;
  // Preimage of y under the restriction to the given gap; y must lie strictly
  // between the rule images.
  Rational invert_on_gap(const GapInstance& gap, const Rational& y) const;
};

// ---- unified wrapper ----

class SetValuedFn {
 public:
  explicit SetValuedFn(FiniteGraph g) : repr_(std::move(g)) {}
  explicit SetValuedFn(GeneratedFn f) : repr_(std::move(f)) {}

  bool is_graph() const { return std::holds_alternative<FiniteGraph>(repr_); }
  bool is_generated() const { return std::holds_alternative<GeneratedFn>(repr_); }
  const FiniteGraph& graph() const { return std::get<FiniteGraph>(repr_); }
  const GeneratedFn& generated() const { return std::get<GeneratedFn>(repr_); }

  Rational dom_lo() const;
  Rational dom_hi() const;
  Rational cod_lo() const;
  Rational cod_hi() const;

  GraphFiber evaluate(const Rational& x) const;
  bool contains(const Rational& x, const Rational& y) const;

 private:
  std::variant<FiniteGraph, GeneratedFn> repr_;
};

}  // namespace cmif
