#include "cmif/limits.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cmif {

namespace {

void check_in_domain(const Rational& a, const Rational& lo, const Rational& hi) {
  if (a < lo || a > hi) throw std::out_of_range("limit point outside the ambient domain");
}

// ---- generated representation ----

ClosedSet1D tail_limit(const GeneratedFn& f, const Rational& a, bool from_below) {
  const MarkovPartition& part = f.part;
  int ti = -1;
  const auto& tails = part.order().tails;
  for (size_t i = 0; i < tails.size(); ++i)
    if (tails[i].alpha == a && tails[i].from_below == from_below) ti = static_cast<int>(i);
  if (ti < 0) throw std::logic_error("no tail at reported accumulation point");

  // Every value interval and every gap image in the tail converges; the
  // cluster set is the union of those limits.
  ClosedSet1D out = ClosedSet1D::empty();
  for (const auto& [fam, off] : tails[ti].cycle) {
    (void)off;
    const auto& [u, v] = f.family_values.at(fam);
    out = out.union_with(ClosedSet1D::interval(part.seq(u).limit(), part.seq(v).limit()));
  }
  const auto& templates = part.template_gaps();
  for (size_t i = 0; i < templates.size(); ++i) {
    if (templates[i].tail != ti) continue;
    const SymGapRule& rule = f.template_rules.at(i);
    out = out.union_with(
        ClosedSet1D::interval(part.seq(rule.left).limit(), part.seq(rule.right).limit()));
  }
  return out;
}

ClosedSet1D generated_limit(const GeneratedFn& f, const Rational& a, bool up) {
  const MarkovPartition& part = f.part;
  check_in_domain(a, part.lo(), part.hi());
  if (up && a == part.lo()) return ClosedSet1D::empty();
  if (!up && a == part.hi()) return ClosedSet1D::empty();

  Locate loc = part.locate(a);
  if (loc.kind == Locate::Kind::InGap)
    return ClosedSet1D::singleton(f.map_on_gap(loc.gap, a));
  if (loc.kind == Locate::Kind::Outside)
    throw std::logic_error("in-domain point not located");

  if (up && part.accumulates_from_below(a)) return tail_limit(f, a, true);
  if (!up && part.accumulates_from_above(a)) return tail_limit(f, a, false);

  // Isolated side: the limit is the adjacent gap rule's image at a.
  auto d = up ? part.clearance_below(a) : part.clearance_above(a);
  if (!d) throw std::logic_error("isolated side without clearance");
  Rational probe = up ? a - *d / Rational(2) : a + *d / Rational(2);
  Locate gap = part.locate(probe);
  if (gap.kind != Locate::Kind::InGap) throw std::logic_error("clearance probe missed the gap");
  return ClosedSet1D::singleton(f.map_on_gap(gap.gap, a));
}

// ---- finite graph representation ----

// y value of the segment (x1,y1)-(x2,y2) at abscissa a (x1 != x2).
Rational segment_y_at(const Rational& x1, const Rational& y1, const Rational& x2,
                      const Rational& y2, const Rational& a) {
  return y1 + (a - x1) * (y2 - y1) / (x2 - x1);
}

// Cluster contribution of one segment family at a from one side. Members run
// between the low-x coordinate lo(n) and the high-x coordinate hi(n); the
// family accumulates wherever those coordinates converge.
ClosedSet1D family_limit_contrib(const SegFamily& fam, const Rational& a, bool up) {
  const long n0 = fam.n0;
  int sgn = 0;
  bool mixed = false;
  auto note = [&](const Rational& v) {
    if (v.is_zero()) return;
    if (sgn == 0)
      sgn = v.sign();
    else if (sgn != v.sign())
      mixed = true;
  };
  for (long k : {0L, 1L, 2L, 6L, 20L}) note(fam.x_end.value_at(n0 + k) - fam.x_start.value_at(n0 + k));
  note(fam.x_end.limit() - fam.x_start.limit());
  if (mixed) throw std::logic_error("segment family changes orientation");

  if (sgn == 0) {
    // Vertical members at x(n); only their accumulation matters.
    if (fam.x_start.limit() != a) return ClosedSet1D::empty();
    int dir = fam.x_start.direction_from(n0);
    bool reaches = up ? dir > 0 : dir < 0;
    if (!reaches) return ClosedSet1D::empty();
    return ClosedSet1D::interval(fam.y_start, fam.y_end);
  }

  const CoordSeq& lo = sgn > 0 ? fam.x_start : fam.x_end;
  const CoordSeq& hi = sgn > 0 ? fam.x_end : fam.x_start;
  const Rational ylo = sgn > 0 ? fam.y_start : fam.y_end;
  const Rational yhi = sgn > 0 ? fam.y_end : fam.y_start;
  const Rational lolim = lo.limit(), hilim = hi.limit();
  const int lodir = lo.direction_from(n0), hidir = hi.direction_from(n0);

  auto y_at = [&](long n) {
    Rational l = lo.value_at(n), h = hi.value_at(n);
    return ylo + (a - l) * (yhi - ylo) / (h - l);
  };

  ClosedSet1D out = ClosedSet1D::empty();

  // Finitely-indexed members meeting a from the approach side.
  std::set<long> cand;
  for (long k = 0; k <= 4; ++k) cand.insert(n0 + k);
  for (const CoordSeq* s : {&lo, &hi})
    if (auto fr = s->first_reaching(a, n0))
      for (long d = -3; d <= 3; ++d) cand.insert(*fr + d);
  for (long n : cand) {
    if (n < n0) continue;
    Rational l = lo.value_at(n), h = hi.value_at(n);
    bool hit = up ? (l < a && a <= h) : (l <= a && a < h);
    if (hit) out = out.union_with(ClosedSet1D::singleton(y_at(n)));
  }

  // Eventual behavior relative to a.
  bool ev_lo_below = lolim < a || (lolim == a && lodir > 0);
  bool ev_lo_weak = ev_lo_below || (lolim == a && lodir == 0);
  bool ev_hi_above = hilim > a || (hilim == a && hidir < 0);
  bool ev_hi_weak = ev_hi_above || (hilim == a && hidir == 0);

  // Crossing members must share one crossing height; probe deep indices and
  // require exact agreement with the predicted value.
  auto constant_crossing = [&](const Rational& predicted) {
    for (long k = 40; k <= 44; ++k) {
      long n = n0 + k;
      Rational l = lo.value_at(n), h = hi.value_at(n);
      if (!(l <= a && a <= h)) throw std::logic_error("family crossing classification failed");
      if (y_at(n) != predicted)
        throw std::logic_error("family crosses the point at varying heights; no finite limit description");
    }
    return predicted;
  };

  if (lolim == a && hilim == a) {
    // Pointlike accumulation: the members shrink onto {a} x [ylo, yhi].
    bool reach_left = lodir > 0, reach_right = hidir < 0;
    if (up && reach_left) {
      Rational edge = yhi;
      if (reach_right) edge = constant_crossing(y_at(n0 + 40));
      out = out.union_with(ClosedSet1D::interval(ylo, edge));
    }
    if (!up && reach_right) {
      Rational edge = ylo;
      if (reach_left) edge = constant_crossing(y_at(n0 + 40));
      out = out.union_with(ClosedSet1D::interval(edge, yhi));
    }
    return out;
  }

  if (up && ev_lo_below && ev_hi_weak) {
    Rational c = hilim == a
                     ? yhi
                     : (lolim == a ? ylo : segment_y_at(lolim, ylo, hilim, yhi, a));
    out = out.union_with(ClosedSet1D::singleton(constant_crossing(c)));
  } else if (up && ev_lo_below && hilim == a) {
    // Members end just short of a; their endpoint heights cluster.
    out = out.union_with(ClosedSet1D::singleton(yhi));
  }
  if (!up && ev_hi_above && ev_lo_weak) {
    Rational c = lolim == a
                     ? ylo
                     : (hilim == a ? yhi : segment_y_at(lolim, ylo, hilim, yhi, a));
    out = out.union_with(ClosedSet1D::singleton(constant_crossing(c)));
  } else if (!up && ev_hi_above && lolim == a) {
    out = out.union_with(ClosedSet1D::singleton(ylo));
  }
  return out;
}

ClosedSet1D graph_limit(const FiniteGraph& g, const Rational& a, bool up) {
  check_in_domain(a, g.dom_lo, g.dom_hi);
  if (up && a == g.dom_lo) return ClosedSet1D::empty();
  if (!up && a == g.dom_hi) return ClosedSet1D::empty();

  ClosedSet1D out = ClosedSet1D::empty();
  for (const Segment& s : g.segments) {
    Rational xs = min(s.x1, s.x2), xe = max(s.x1, s.x2);
    if (xs == xe) continue;  // vertical: no one-sided x-approach along it
    bool hit = up ? (xs < a && a <= xe) : (xs <= a && a < xe);
    if (hit) out = out.union_with(ClosedSet1D::singleton(segment_y_at(s.x1, s.y1, s.x2, s.y2, a)));
  }
  for (const Box& b : g.boxes) {
    Rational xs = min(b.x1, b.x2), xe = max(b.x1, b.x2);
    bool hit = up ? (xs < a && a <= xe) : (xs <= a && a < xe);
    if (hit) out = out.union_with(ClosedSet1D::interval(b.y1, b.y2));
  }
  for (const SegFamily& fam : g.families)
    out = out.union_with(family_limit_contrib(fam, a, up));
  return out;
}

}  // namespace

ClosedSet1D lim_up(const SetValuedFn& f, const Rational& a) {
  return f.is_graph() ? graph_limit(f.graph(), a, true) : generated_limit(f.generated(), a, true);
}

ClosedSet1D lim_down(const SetValuedFn& f, const Rational& a) {
  return f.is_graph() ? graph_limit(f.graph(), a, false) : generated_limit(f.generated(), a, false);
}

SideLimit side_limit(const SetValuedFn& f, const Rational& a, SideLimit::Side side) {
  SideLimit out;
  out.side = side;
  out.at = a;
  out.value = side == SideLimit::Side::Up ? lim_up(f, a) : lim_down(f, a);
  return out;
}

std::vector<Rational> lim_sampling_oracle(const SetValuedFn& f, const Rational& a,
                                          SideLimit::Side side, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  check_in_domain(a, f.dom_lo(), f.dom_hi());
  const bool up = side == SideLimit::Side::Up;
  Rational room = up ? a - f.dom_lo() : f.dom_hi() - a;
  if (room.is_zero()) return {};

  // A structure at depth u is sampled from the deepest window containing it,
  // where it spans at least 1/8 of the window; per_window is sized so that
  // slice still yields points at sub-epsilon spacing for epsilon >= 1/100.
  // The window count keeps harmonic-type member indices within long range.
  const int windows = 40, per_window = 384;
  const size_t keep = 6;
  const Rational spacing = epsilon / Rational(2);
  Rational w = min(Rational(1, 10), room / Rational(2));

  std::vector<std::vector<Rational>> per_depth;
  for (int m = 0; m <= windows; ++m) {
    std::vector<Rational> ys;
    for (int j = 1; j <= per_window; ++j) {
      Rational z = up ? a - w * Rational(j, per_window) : a + w * Rational(j, per_window);
      GraphFiber fib = f.evaluate(z);
      auto is_removed = [&](const Rational& y) {
        return std::find(fib.removed.begin(), fib.removed.end(), y) != fib.removed.end();
      };
      for (const auto& [u, v] : fib.closure.components()) {
        long steps = 1;
        if (u != v) {
          Rational need = ((v - u) / spacing).ceil();
          steps = std::clamp(need.to_long(), 1L, 256L);
        }
        for (long i = 0; i <= steps; ++i) {
          Rational y = u + (v - u) * Rational(i, steps);
          if (!is_removed(y)) ys.push_back(y);
          if (u == v) break;
        }
      }
    }
    per_depth.push_back(std::move(ys));
    w = w / Rational(2);
  }

  // Walk back from the deepest window; an empty window at any retained depth
  // means the side has no graph arbitrarily close to a, so nothing shallower
  // can witness a cluster value.
  std::vector<Rational> out;
  size_t taken = 0;
  for (auto it = per_depth.rbegin(); it != per_depth.rend() && taken < keep; ++it) {
    if (it->empty()) break;
    out.insert(out.end(), it->begin(), it->end());
    ++taken;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClosedSet1D cluster_hull(const std::vector<Rational>& ys, const Rational& epsilon) {
  if (ys.empty()) return ClosedSet1D::empty();
  std::vector<Rational> sorted = ys;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Rational, Rational>> runs;
  Rational start = sorted.front(), prev = sorted.front();
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - prev <= epsilon) {
      prev = sorted[i];
    } else {
      runs.emplace_back(start, prev);
      start = prev = sorted[i];
    }
  }
  runs.emplace_back(start, prev);
  return ClosedSet1D::from_intervals(runs);
}

}  // namespace cmif
