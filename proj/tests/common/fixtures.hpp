#pragma once

// Shared hand-built functions exercised across the test suites. Each builder
// constructs its object from scratch so tests never share mutable state.

#include "cmif/partition.hpp"
#include "cmif/set_valued.hpp"

namespace cmif::fixtures {

inline Rational r(long n, long d = 1) { return Rational(n, d); }

// ---- partitions ----

// Two interleaved families marching up to 1: p_n = 1 - (3/2)(1/2)^n and
// q_n = 1 - (1/2)^n, giving 0 < p_1 < q_1 < p_2 < q_2 < ... -> 1.
inline MarkovPartition::Input bennet_partition_input() {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(1);
  in.explicit_points = {r(0), r(1)};
  in.families = {
      {"p", r(1), r(-3, 2), r(1, 2), 1},
      {"q", r(1), r(-1), r(1, 2), 1},
  };
  return in;
}

inline MarkovPartition bennet_partition() { return MarkovPartition::build(bennet_partition_input()); }

// The same shape scaled by 2 onto [0,2].
inline MarkovPartition::Input bennet_scaled_partition_input() {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(2);
  in.explicit_points = {r(0), r(2)};
  in.families = {
      {"p", r(2), r(-3), r(1, 2), 1},
      {"q", r(2), r(-2), r(1, 2), 1},
  };
  return in;
}

inline MarkovPartition bennet_scaled_partition() {
  return MarkovPartition::build(bennet_scaled_partition_input());
}

// One family falling to 0 (1/2, 1/4, 1/8, ...) and one rising to 1
// (3/4, 7/8, 15/16, ...).
inline MarkovPartition::Input two_tails_partition_input() {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(1);
  in.explicit_points = {r(0), r(1)};
  in.families = {
      {"L", r(0), r(1), r(1, 2), 1},
      {"U", r(1), r(-1, 2), r(1, 2), 1},
  };
  return in;
}

inline MarkovPartition two_tails_partition() {
  return MarkovPartition::build(two_tails_partition_input());
}

inline MarkovPartition three_point_partition(const Rational& mid) {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(1);
  in.explicit_points = {r(0), mid, r(1)};
  return MarkovPartition::build(std::move(in));
}

inline MarkovPartition unit_partition() {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(1);
  in.explicit_points = {r(0), r(1)};
  return MarkovPartition::build(std::move(in));
}

// ---- generated functions ----

// f(0) = {0}, f(1) = {1}, f(p_n) = {p_{n+1}}, f(q_n) = {1}; increasing on
// (0, p_1) onto (0, p_2), increasing on (p_n, q_n) onto (p_{n+1}, 1),
// decreasing on (q_n, p_{n+1}) onto (p_{n+2}, 1).
inline GeneratedFn bennet_fn() {
  GeneratedFn f(bennet_partition());
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.family_values = {
      {SymRef::member(0, 1), SymRef::member(0, 1)},          // p_n -> p_{n+1}
      {SymRef::explicit_pt(r(1)), SymRef::explicit_pt(r(1))}  // q_n -> 1
  };
  f.prefix_rules = {{Ref::explicit_pt(r(0)), Ref::member(0, 2)}};  // (0,p_1) -> (0,p_2)
  f.template_rules = {
      {SymRef::member(0, 1), SymRef::explicit_pt(r(1))},  // (p_n,q_n) -> (p_{n+1},1)
      {SymRef::explicit_pt(r(1)), SymRef::member(0, 2)},  // (q_n,p_{n+1}) -> (1,p_{n+2})
  };
  f.check_shape();
  return f;
}

inline GeneratedFn bennet_scaled_fn() {
  GeneratedFn f(bennet_scaled_partition());
  f.cod_lo = r(0);
  f.cod_hi = r(2);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[r(2)] = {Ref::explicit_pt(r(2)), Ref::explicit_pt(r(2))};
  f.family_values = {
      {SymRef::member(0, 1), SymRef::member(0, 1)},
      {SymRef::explicit_pt(r(2)), SymRef::explicit_pt(r(2))},
  };
  f.prefix_rules = {{Ref::explicit_pt(r(0)), Ref::member(0, 2)}};
  f.template_rules = {
      {SymRef::member(0, 1), SymRef::explicit_pt(r(2))},
      {SymRef::explicit_pt(r(2)), SymRef::member(0, 2)},
  };
  f.check_shape();
  return f;
}

// Same function as bennet_fn, written over families starting at n0 = 2, so
// member indices name each point one step later.
inline GeneratedFn reindexed_bennet_fn() {
  MarkovPartition::Input in;
  in.lo = r(0);
  in.hi = r(1);
  in.explicit_points = {r(0), r(1)};
  in.families = {
      {"p", r(1), r(-3), r(1, 2), 2},
      {"q", r(1), r(-2), r(1, 2), 2},
  };
  GeneratedFn f(MarkovPartition::build(std::move(in)));
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.family_values = {
      {SymRef::member(0, 1), SymRef::member(0, 1)},
      {SymRef::explicit_pt(r(1)), SymRef::explicit_pt(r(1))},
  };
  f.prefix_rules = {{Ref::explicit_pt(r(0)), Ref::member(0, 3)}};
  f.template_rules = {
      {SymRef::member(0, 1), SymRef::explicit_pt(r(1))},
      {SymRef::explicit_pt(r(1)), SymRef::member(0, 2)},
  };
  f.check_shape();
  return f;
}

// Every partition point maps onto the whole interval; every gap stretches
// increasingly onto (0,1). Its graph is unchanged under reindexing either
// family, which is what makes its pattern maps interesting.
inline GeneratedFn two_tails_full_fn() {
  GeneratedFn f(two_tails_partition());
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  auto full = std::pair<Ref, Ref>{Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))};
  f.explicit_values[r(0)] = full;
  f.explicit_values[r(1)] = full;
  auto sym_full = std::pair<SymRef, SymRef>{SymRef::explicit_pt(r(0)), SymRef::explicit_pt(r(1))};
  f.family_values = {sym_full, sym_full};
  for (size_t i = 0; i < f.part.prefix_gaps().size(); ++i)
    f.prefix_rules.push_back({Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))});
  for (size_t i = 0; i < f.part.template_gaps().size(); ++i)
    f.template_rules.push_back({SymRef::explicit_pt(r(0)), SymRef::explicit_pt(r(1))});
  f.check_shape();
  return f;
}

// Tent over {0, top, 1}: up across (0, top), down across (top, 1).
inline GeneratedFn tent_fn(const Rational& top) {
  GeneratedFn f(three_point_partition(top));
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[top] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.prefix_rules = {{Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))},
                    {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(0))}};
  f.check_shape();
  return f;
}

inline GeneratedFn identity_fn() {
  GeneratedFn f(unit_partition());
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.prefix_rules = {{Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))}};
  f.check_shape();
  return f;
}

// One-sided limit at 0 lands on {1/3}, which is not a partition point; the
// value interval at 0 still contains it, so only the membership condition
// fails, not upper semicontinuity.
inline GeneratedFn stray_limit_fn() {
  GeneratedFn f(three_point_partition(r(1, 2)));
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1, 2))};
  f.explicit_values[r(1, 2)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.prefix_rules = {{Ref::constant(r(1, 3)), Ref::explicit_pt(r(1))},
                    {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(1))}};
  f.check_shape();
  return f;
}

// The limit into the first gap at 0 is {1/2}, a partition point, but the
// value interval at 0 is {0}; the graph is not closed exactly at (0, 1/2).
inline GeneratedFn not_usc_fn() {
  GeneratedFn f(three_point_partition(r(1, 2)));
  f.cod_lo = r(0);
  f.cod_hi = r(1);
  f.explicit_values[r(0)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.explicit_values[r(1, 2)] = {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(1))};
  f.explicit_values[r(1)] = {Ref::explicit_pt(r(0)), Ref::explicit_pt(r(0))};
  f.prefix_rules = {{Ref::explicit_pt(r(1, 2)), Ref::explicit_pt(r(1))},
                    {Ref::explicit_pt(r(1)), Ref::explicit_pt(r(0))}};
  f.check_shape();
  return f;
}

// ---- finite graphs ----

// Rising slanted rungs between heights 1/3 and 2/3 accumulating on the
// vertical at x = 1/2, then a closed ramp to (1,1). The rungs alone leave
// x-holes, so this graph is not total.
inline FiniteGraph harmonic_rungs_graph() {
  FiniteGraph g;
  g.dom_lo = r(0);
  g.dom_hi = r(1);
  g.cod_lo = r(0);
  g.cod_hi = r(1);
  g.segments.push_back({r(1, 2), r(0), r(1, 2), r(1), false, false});
  g.segments.push_back({r(1, 2), r(4, 5), r(1), r(1), false, false});
  SegFamily up;
  up.x_start = CoordSeq::lin_frac(r(1), r(-1), r(2), r(0));   // (n-1)/(2n)
  up.x_end = CoordSeq::lin_frac(r(2), r(-1), r(4), r(2));     // (2n-1)/(4n+2)
  up.y_start = r(1, 3);
  up.y_end = r(2, 3);
  up.n0 = 1;
  g.families.push_back(up);
  return g;
}

// The rungs completed by falling connectors, which closes every x-hole.
inline FiniteGraph harmonic_rungs_complete_graph() {
  FiniteGraph g = harmonic_rungs_graph();
  SegFamily down;
  down.x_start = CoordSeq::lin_frac(r(2), r(-1), r(4), r(2));  // (2n-1)/(4n+2)
  down.x_end = CoordSeq::lin_frac(r(1), r(0), r(2), r(2));     // n/(2n+2)
  down.y_start = r(2, 3);
  down.y_end = r(1, 3);
  down.n0 = 1;
  g.families.push_back(down);
  return g;
}

// A filled box with its right edge excluded, continued by a half-height
// shelf. The excluded edge is a sheet of limit points the graph misses.
inline FiniteGraph open_box_graph() {
  FiniteGraph g;
  g.dom_lo = r(0);
  g.dom_hi = r(1);
  g.cod_lo = r(0);
  g.cod_hi = r(1);
  Box b;
  b.x1 = r(0);
  b.x2 = r(1, 2);
  b.y1 = r(0);
  b.y2 = r(1);
  b.open_right = true;
  g.boxes.push_back(b);
  g.segments.push_back({r(1, 2), r(1, 2), r(1), r(1, 2), false, false});
  return g;
}

// Two full-width horizontal lines: closed and total with disconnected fibers.
inline FiniteGraph two_lines_graph() {
  FiniteGraph g;
  g.dom_lo = r(0);
  g.dom_hi = r(1);
  g.cod_lo = r(0);
  g.cod_hi = r(1);
  g.segments.push_back({r(0), r(1, 4), r(1), r(1, 4), false, false});
  g.segments.push_back({r(0), r(3, 4), r(1), r(3, 4), false, false});
  return g;
}

}  // namespace cmif::fixtures
