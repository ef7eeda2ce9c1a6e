#include "cmif/set_valued.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cmif {

namespace {

bool on_closed_segment(const Rational& x1, const Rational& y1, const Rational& x2,
                       const Rational& y2, const Rational& x, const Rational& y) {
  if ((x2 - x1) * (y - y1) != (y2 - y1) * (x - x1)) return false;
  if (x < min(x1, x2) || x > max(x1, x2)) return false;
  if (y < min(y1, y2) || y > max(y1, y2)) return false;
  return true;
}

bool on_segment(const Segment& s, const Rational& x, const Rational& y) {
  if (!on_closed_segment(s.x1, s.y1, s.x2, s.y2, x, y)) return false;
  if (s.open1 && x == s.x1 && y == s.y1) return false;
  if (s.open2 && x == s.x2 && y == s.y2) return false;
  return true;
}

bool in_box(const Box& b, const Rational& x, const Rational& y) {
  if (x < b.x1 || x > b.x2 || y < b.y1 || y > b.y2) return false;
  if (b.open_left && x == b.x1) return false;
  if (b.open_right && x == b.x2) return false;
  if (b.open_bottom && y == b.y1) return false;
  if (b.open_top && y == b.y2) return false;
  return true;
}

std::optional<Rational> const_value_of(const CoordSeq& s) {
  switch (s.kind()) {
    case CoordSeq::Kind::Constant:
      return s.p0();
    case CoordSeq::Kind::LinFrac:
      // (a n + b) / (c n + d) is constant iff a d == b c
      if (s.p0() * s.p3() == s.p1() * s.p2()) return s.value_at(1);
      return std::nullopt;
    case CoordSeq::Kind::Geometric:
      if (s.p1().is_zero()) return s.p0();
      return std::nullopt;
  }
  return std::nullopt;
}

// Smallest point of [ylo, yhi] missing from the fiber, if any. A stretch of
// missing points is witnessed by its midpoint; a missing boundary point by
// itself.
std::optional<Rational> first_missing(const GraphFiber& fib, const Rational& ylo,
                                      const Rational& yhi) {
  std::optional<Rational> removed_min;
  for (const Rational& r : fib.removed)
    if (r >= ylo && r <= yhi && (!removed_min || r < *removed_min)) removed_min = r;

  std::optional<Rational> gap_witness;
  if (!fib.closure.contains(ylo)) {
    gap_witness = ylo;
  } else {
    Rational cover = ylo;
    for (const auto& c : fib.closure.components()) {
      if (c.second < cover) continue;
      if (c.first > cover) {
        gap_witness = (cover + min(c.first, yhi)) / Rational(2);
        break;
      }
      cover = max(cover, c.second);
      if (cover >= yhi) break;
    }
    if (!gap_witness && cover < yhi) gap_witness = (cover + yhi) / Rational(2);
  }
  if (removed_min && gap_witness) return min(*removed_min, *gap_witness);
  if (removed_min) return removed_min;
  return gap_witness;
}

bool effective_nonempty(const GraphFiber& fib) {
  for (const auto& c : fib.closure.components()) {
    if (c.first != c.second) return true;
    bool gone = false;
    for (const Rational& r : fib.removed)
      if (r == c.first) {
        gone = true;
        break;
      }
    if (!gone) return true;
  }
  return false;
}

}  // namespace

bool contains_point(const FiniteGraph& g, const Rational& x, const Rational& y) {
  for (const Segment& s : g.segments)
    if (on_segment(s, x, y)) return true;
  for (const Box& b : g.boxes)
    if (in_box(b, x, y)) return true;
  for (const SegFamily& f : g.families)
    for (long n : family_indices_at(f, x))
      if (on_closed_segment(f.x_start.value_at(n), f.y_start, f.x_end.value_at(n), f.y_end, x, y))
        return true;
  return false;
}

std::vector<long> family_indices_at(const SegFamily& fam, const Rational& x) {
  std::vector<long> out;
  auto consider = [&](long n) {
    if (n < fam.n0) return;
    if (std::find(out.begin(), out.end(), n) != out.end()) return;
    Rational a = fam.x_start.value_at(n);
    Rational b = fam.x_end.value_at(n);
    if (x >= min(a, b) && x <= max(a, b)) out.push_back(n);
  };
  auto cs = const_value_of(fam.x_start);
  auto ce = const_value_of(fam.x_end);
  if (cs && ce) {
    // every member shares one footprint; a single representative suffices
    consider(fam.n0);
  } else {
    for (const CoordSeq* s : {&fam.x_start, &fam.x_end}) {
      if (const_value_of(*s)) continue;
      auto r = s->first_reaching(x, fam.n0);
      long c = r ? *r : fam.n0;
      for (long n = c - 3; n <= c + 3; ++n) consider(n);
    }
    for (long n = fam.n0; n < fam.n0 + 3; ++n) consider(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphFiber graph_fiber(const FiniteGraph& g, const Rational& x) {
  GraphFiber fib;
  if (x < g.dom_lo || x > g.dom_hi) return fib;
  std::vector<std::pair<Rational, Rational>> parts;
  std::vector<Rational> removed;
  auto add_segment_fiber = [&](const Rational& x1, const Rational& y1, const Rational& x2,
                               const Rational& y2, bool open1, bool open2) {
    if (x < min(x1, x2) || x > max(x1, x2)) return;
    if (x1 == x2) {
      parts.push_back({min(y1, y2), max(y1, y2)});
      if (open1) removed.push_back(y1);
      if (open2) removed.push_back(y2);
      return;
    }
    Rational y = y1 + (x - x1) * (y2 - y1) / (x2 - x1);
    if (open1 && x == x1) return;
    if (open2 && x == x2) return;
    parts.push_back({y, y});
  };
  for (const Segment& s : g.segments) add_segment_fiber(s.x1, s.y1, s.x2, s.y2, s.open1, s.open2);
  for (const Box& b : g.boxes) {
    if (x < b.x1 || x > b.x2) continue;
    if (b.open_left && x == b.x1) continue;
    if (b.open_right && x == b.x2) continue;
    parts.push_back({b.y1, b.y2});
    if (b.open_bottom) removed.push_back(b.y1);
    if (b.open_top) removed.push_back(b.y2);
  }
  for (const SegFamily& f : g.families)
    for (long n : family_indices_at(f, x))
      add_segment_fiber(f.x_start.value_at(n), f.y_start, f.x_end.value_at(n), f.y_end, false,
                        false);
  fib.closure = ClosedSet1D::from_intervals(std::move(parts));
  // a removed boundary point may be supplied by another element
  for (const Rational& y : removed)
    if (!contains_point(g, x, y) &&
        std::find(fib.removed.begin(), fib.removed.end(), y) == fib.removed.end())
      fib.removed.push_back(y);
  std::sort(fib.removed.begin(), fib.removed.end());
  return fib;
}

FiniteGraph truncate_graph(const FiniteGraph& g, long depth) {
  FiniteGraph out;
  out.dom_lo = g.dom_lo;
  out.dom_hi = g.dom_hi;
  out.cod_lo = g.cod_lo;
  out.cod_hi = g.cod_hi;
  out.segments = g.segments;
  out.boxes = g.boxes;
  for (const SegFamily& f : g.families)
    for (long n = f.n0; n <= depth; ++n)
      out.segments.push_back(
          {f.x_start.value_at(n), f.y_start, f.x_end.value_at(n), f.y_end, false, false});
  return out;
}

bool coordseq_shift_equal(const CoordSeq& s1, const CoordSeq& s2, long shift, long n_from) {
  auto c1 = const_value_of(s1);
  auto c2 = const_value_of(s2);
  if (c1 && c2) return *c1 == *c2;
  bool rational1 = s1.kind() != CoordSeq::Kind::Geometric;
  bool rational2 = s2.kind() != CoordSeq::Kind::Geometric;
  if (rational1 && rational2) {
    // both sides are ratios of linear polynomials; cross-multiplied equality
    // is a quadratic identity, so agreement at three points settles it
    for (long n = n_from; n < n_from + 3; ++n)
      if (s1.value_at(n) != s2.value_at(n + shift)) return false;
    return true;
  }
  if (!rational1 && !rational2) {
    Rational coef1 = s1.p1();
    Rational coef2 = s2.p1() * s2.p2().pow(shift);
    return s1.p0() == s2.p0() && s1.p2() == s2.p2() && coef1 == coef2;
  }
  // a nonconstant rational sequence never matches a nonconstant geometric one
  if (c1) return false;
  if (c2) return false;
  return false;
}

GraphCheck closed_graph_check(const FiniteGraph& g) {
  GraphCheck res;
  auto miss = [&](const Rational& x, const Rational& y, std::string why) {
    res.ok = false;
    res.violations.push_back({x, y, std::move(why)});
  };

  for (const Segment& s : g.segments) {
    if (s.open1 && !contains_point(g, s.x1, s.y1))
      miss(s.x1, s.y1, "excluded segment endpoint is a limit of the graph");
    if (s.open2 && !contains_point(g, s.x2, s.y2))
      miss(s.x2, s.y2, "excluded segment endpoint is a limit of the graph");
  }

  auto check_vertical_edge = [&](const Rational& x, const Rational& ylo, const Rational& yhi) {
    GraphFiber fib = graph_fiber(g, x);
    if (auto w = first_missing(fib, ylo, yhi))
      miss(x, *w, "limit points along an excluded vertical edge are not in the graph");
  };
  auto check_horizontal_edge = [&](const Rational& xlo, const Rational& xhi, const Rational& y) {
    // covered by horizontal segments and boxes only; families at this exact
    // height are not expected here
    for (const SegFamily& f : g.families)
      if (f.y_start == y && f.y_end == y)
        throw std::logic_error("horizontal edge coverage with a family at the same height");
    std::vector<std::pair<Rational, Rational>> parts;
    for (const Segment& s : g.segments)
      if (s.y1 == y && s.y2 == y) parts.push_back({min(s.x1, s.x2), max(s.x1, s.x2)});
    for (const Box& b : g.boxes)
      if (y >= b.y1 && y <= b.y2 && !(b.open_bottom && y == b.y1) && !(b.open_top && y == b.y2))
        parts.push_back({b.x1, b.x2});
    ClosedSet1D cover = ClosedSet1D::from_intervals(std::move(parts));
    GraphFiber as_fiber{cover, {}};
    if (auto w = first_missing(as_fiber, xlo, xhi))
      miss(*w, y, "limit points along an excluded horizontal edge are not in the graph");
  };

  for (const Box& b : g.boxes) {
    if (b.open_left) check_vertical_edge(b.x1, b.y1, b.y2);
    if (b.open_right) check_vertical_edge(b.x2, b.y1, b.y2);
    if (b.open_bottom) check_horizontal_edge(b.x1, b.x2, b.y1);
    if (b.open_top) check_horizontal_edge(b.x1, b.x2, b.y2);
  }

  for (const SegFamily& f : g.families) {
    Rational lx_s = f.x_start.limit();
    Rational lx_e = f.x_end.limit();
    if (lx_s == lx_e) {
      check_vertical_edge(lx_s, min(f.y_start, f.y_end), max(f.y_start, f.y_end));
    } else {
      // slanted limit segment: look for one covering segment or box
      Rational mx = (lx_s + lx_e) / Rational(2);
      Rational my = (f.y_start + f.y_end) / Rational(2);
      bool covered = false;
      for (const Segment& s : g.segments)
        if (on_segment(s, lx_s, f.y_start) && on_segment(s, lx_e, f.y_end) &&
            on_segment(s, mx, my)) {
          covered = true;
          break;
        }
      for (const Box& b : g.boxes)
        if (!covered && in_box(b, lx_s, f.y_start) && in_box(b, lx_e, f.y_end)) covered = true;
      if (!covered) {
        if (!contains_point(g, lx_s, f.y_start))
          miss(lx_s, f.y_start, "family limit segment endpoint is not in the graph");
        else if (!contains_point(g, lx_e, f.y_end))
          miss(lx_e, f.y_end, "family limit segment endpoint is not in the graph");
        else
          miss(mx, my, "family limit segment is not covered by the graph");
      }
    }
  }
  return res;
}

namespace {

struct FamPiece {
  int fam;
  long n;
  Rational lo, hi;  // x-footprint
  Rational dist;    // outer distance to the group limit
};

}  // namespace

GraphCheck total_graph_check(const FiniteGraph& g) {
  GraphCheck res;
  std::vector<std::pair<Rational, Rational>> parts;
  std::vector<Rational> candidates;  // x values needing a direct fiber probe

  for (const Segment& s : g.segments) {
    parts.push_back({min(s.x1, s.x2), max(s.x1, s.x2)});
    if (s.open1) candidates.push_back(s.x1);
    if (s.open2) candidates.push_back(s.x2);
  }
  for (const Box& b : g.boxes) {
    parts.push_back({b.x1, b.x2});
    if (b.open_left) candidates.push_back(b.x1);
    if (b.open_right) candidates.push_back(b.x2);
  }

  // group families whose footprints shrink onto one limit point
  struct FamGroup {
    Rational limit;
    int dir;  // +1 when footprints approach from below
    std::vector<int> fams;
  };
  std::vector<FamGroup> groups;
  constexpr long kDepth = 64;
  for (size_t fi = 0; fi < g.families.size(); ++fi) {
    const SegFamily& f = g.families[fi];
    Rational ls = f.x_start.limit();
    Rational le = f.x_end.limit();
    int ds = f.x_start.direction_from(f.n0);
    int de = f.x_end.direction_from(f.n0);
    bool pointlike = ls == le && ds != 0 && ds == de;
    if (!pointlike) {
      for (long n = f.n0; n <= f.n0 + kDepth; ++n) {
        Rational a = f.x_start.value_at(n);
        Rational b = f.x_end.value_at(n);
        parts.push_back({min(a, b), max(a, b)});
      }
      continue;
    }
    candidates.push_back(ls);
    bool placed = false;
    for (FamGroup& gr : groups)
      if (gr.limit == ls && gr.dir == ds) {
        gr.fams.push_back(static_cast<int>(fi));
        placed = true;
      }
    if (!placed) groups.push_back({ls, ds, {static_cast<int>(fi)}});
  }

  for (const FamGroup& gr : groups) {
    const int k = static_cast<int>(gr.fams.size());
    long max_n0 = 1;
    for (int fi : gr.fams) max_n0 = std::max(max_n0, g.families[fi].n0);
    const long window_hi = max_n0 + 8;
    std::vector<FamPiece> pieces;
    for (int fi : gr.fams) {
      const SegFamily& f = g.families[fi];
      for (long n = f.n0; n <= window_hi; ++n) {
        Rational a = f.x_start.value_at(n);
        Rational b = f.x_end.value_at(n);
        Rational lo = min(a, b), hi = max(a, b);
        Rational d = gr.dir > 0 ? gr.limit - lo : hi - gr.limit;
        pieces.push_back({fi, n, std::move(lo), std::move(hi), std::move(d)});
      }
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const FamPiece& a, const FamPiece& b) {
      if (a.dist != b.dist) return a.dist > b.dist;
      if (a.fam != b.fam) return a.fam < b.fam;
      return a.n < b.n;
    });

    // find a whole period followed by its index-shifted repeat
    long chain_at = -1;
    for (long p = 0; p + 2 * k <= static_cast<long>(pieces.size()); ++p) {
      std::set<int> seen;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) ok = seen.insert(pieces[p + j].fam).second;
      for (int j = 0; j < k && ok; ++j)
        ok = pieces[p + k + j].fam == pieces[p + j].fam && pieces[p + k + j].n == pieces[p + j].n + 1;
      if (!ok) continue;
      // adjacent pieces must share an endpoint, as an identity over the index
      bool touching = true;
      for (int j = 0; j < k && touching; ++j) {
        const FamPiece& a = pieces[p + j];
        const FamPiece& b = pieces[p + j + 1];
        const SegFamily& fa = g.families[a.fam];
        const SegFamily& fb = g.families[b.fam];
        bool a_fwd = fa.x_start.value_at(a.n) <= fa.x_end.value_at(a.n);
        bool b_fwd = fb.x_start.value_at(b.n) <= fb.x_end.value_at(b.n);
        const CoordSeq& a_inner = gr.dir > 0 ? (a_fwd ? fa.x_end : fa.x_start)
                                             : (a_fwd ? fa.x_start : fa.x_end);
        const CoordSeq& b_outer = gr.dir > 0 ? (b_fwd ? fb.x_start : fb.x_end)
                                             : (b_fwd ? fb.x_end : fb.x_start);
        touching = coordseq_shift_equal(a_inner, b_outer, b.n - a.n, a.n);
      }
      if (touching) {
        chain_at = p;
        break;
      }
    }

    if (chain_at >= 0) {
      for (long j = 0; j < chain_at; ++j) parts.push_back({pieces[j].lo, pieces[j].hi});
      if (gr.dir > 0)
        parts.push_back({pieces[chain_at].lo, gr.limit});
      else
        parts.push_back({gr.limit, pieces[chain_at].hi});
    } else {
      for (int fi : gr.fams) {
        const SegFamily& f = g.families[fi];
        for (long n = f.n0; n <= f.n0 + kDepth; ++n) {
          Rational a = f.x_start.value_at(n);
          Rational b = f.x_end.value_at(n);
          parts.push_back({min(a, b), max(a, b)});
        }
      }
    }
  }

  ClosedSet1D cover = ClosedSet1D::from_intervals(std::move(parts));
  GraphFiber as_fiber{cover, {}};
  if (auto w = first_missing(as_fiber, g.dom_lo, g.dom_hi))
    res.violations.push_back({*w, g.cod_lo, "no graph points over this x"});

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rational& x : candidates)
    if (x >= g.dom_lo && x <= g.dom_hi && !effective_nonempty(graph_fiber(g, x)))
      res.violations.push_back({x, g.cod_lo, "empty fiber at an excluded edge"});

  res.ok = res.violations.empty();
  return res;
}

GraphCheck surjective_graph_check(const FiniteGraph& g) {
  GraphCheck res;
  std::vector<std::pair<Rational, Rational>> parts;
  std::vector<Rational> candidates;
  for (const Segment& s : g.segments) {
    parts.push_back({min(s.y1, s.y2), max(s.y1, s.y2)});
    if (s.open1) candidates.push_back(s.y1);
    if (s.open2) candidates.push_back(s.y2);
  }
  for (const Box& b : g.boxes) {
    parts.push_back({b.y1, b.y2});
    if (b.open_bottom) candidates.push_back(b.y1);
    if (b.open_top) candidates.push_back(b.y2);
  }
  for (const SegFamily& f : g.families)
    parts.push_back({min(f.y_start, f.y_end), max(f.y_start, f.y_end)});

  ClosedSet1D cover = ClosedSet1D::from_intervals(std::move(parts));
  GraphFiber as_fiber{cover, {}};
  if (auto w = first_missing(as_fiber, g.cod_lo, g.cod_hi))
    res.violations.push_back({g.dom_lo, *w, "value is never attained"});

  // a y removed by an open endpoint or edge must be attained somewhere else
  auto attained = [&](const Rational& y) {
    for (const Segment& s : g.segments) {
      Rational ylo = min(s.y1, s.y2), yhi = max(s.y1, s.y2);
      if (y < ylo || y > yhi) continue;
      if (y > ylo && y < yhi) return true;
      if (ylo == yhi) {
        if (!(s.open1 && s.open2)) return true;  // horizontal keeps interior points
        if (s.x1 != s.x2) return true;
        continue;
      }
      bool at1 = y == s.y1, at2 = y == s.y2;
      if (at1 && !s.open1) return true;
      if (at2 && !s.open2) return true;
    }
    for (const Box& b : g.boxes) {
      if (y < b.y1 || y > b.y2) continue;
      if (y > b.y1 && y < b.y2) return true;
      if (y == b.y1 && !b.open_bottom) return true;
      if (y == b.y2 && !b.open_top) return true;
    }
    for (const SegFamily& f : g.families)
      if (y >= min(f.y_start, f.y_end) && y <= max(f.y_start, f.y_end)) return true;
    return false;
  };
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rational& y : candidates)
    if (y >= g.cod_lo && y <= g.cod_hi && !attained(y))
      res.violations.push_back({g.dom_lo, y, "value is attained only as an excluded limit"});

  res.ok = res.violations.empty();
  return res;
}

// ---- partition-generated representation ----

void GeneratedFn::check_shape() const {
  if (family_values.size() != part.families().size())
    throw std::invalid_argument("one value pair per family required");
  if (prefix_rules.size() != part.prefix_gaps().size())
    throw std::invalid_argument("one rule per concrete gap required");
  if (template_rules.size() != part.template_gaps().size())
    throw std::invalid_argument("one rule per template gap required");
  for (const Rational& e : part.explicit_points())
    if (!explicit_values.count(e))
      throw std::invalid_argument("missing value interval at explicit point " + e.str());
  if (explicit_values.size() != part.explicit_points().size())
    throw std::invalid_argument("value interval at a point outside the partition");
  auto check_ref = [&](const Ref& r) {
    if (r.kind == Ref::Kind::Member &&
        (r.family < 0 || r.family >= static_cast<int>(part.families().size())))
      throw std::invalid_argument("value ref names an unknown family");
  };
  auto check_sym = [&](const SymRef& r) {
    if (r.kind == SymRef::Kind::Member &&
        (r.family < 0 || r.family >= static_cast<int>(part.families().size())))
      throw std::invalid_argument("value ref names an unknown family");
  };
  for (const auto& [p, uv] : explicit_values) {
    check_ref(uv.first);
    check_ref(uv.second);
  }
  for (const auto& [u, v] : family_values) {
    check_sym(u);
    check_sym(v);
  }
  for (const GapRule& r : prefix_rules) {
    check_ref(r.left);
    check_ref(r.right);
  }
  for (const SymGapRule& r : template_rules) {
    check_sym(r.left);
    check_sym(r.right);
  }
  if (!(cod_lo < cod_hi)) throw std::invalid_argument("codomain endpoints must satisfy lo < hi");
}

std::pair<Ref, Ref> GeneratedFn::value_refs(const Ref& point) const {
  switch (point.kind) {
    case Ref::Kind::Explicit: {
      auto it = explicit_values.find(point.value);
      if (it == explicit_values.end())
        throw std::invalid_argument("no value interval at " + point.value.str());
      return it->second;
    }
    case Ref::Kind::Member: {
      const auto& [u, v] = family_values.at(point.family);
      return {u.at(point.index), v.at(point.index)};
    }
    case Ref::Kind::Const:
      throw std::invalid_argument("constants carry no value interval");
  }
  throw std::logic_error("unreachable");
}

std::pair<Rational, Rational> GeneratedFn::value_interval(const Ref& point) const {
  auto [u, v] = value_refs(point);
  return {part.resolve(u), part.resolve(v)};
}

std::pair<Ref, Ref> GeneratedFn::rule_refs(const GapInstance& gap) const {
  if (gap.is_template) {
    const SymGapRule& r = template_rules.at(gap.gap_index);
    return {r.left.at(gap.n), r.right.at(gap.n)};
  }
  const GapRule& r = prefix_rules.at(gap.gap_index);
  return {r.left, r.right};
}

std::pair<Rational, Rational> GeneratedFn::rule_images(const GapInstance& gap) const {
  auto [l, r] = rule_refs(gap);
  return {part.resolve(l), part.resolve(r)};
}

Rational GeneratedFn::map_on_gap(const GapInstance& gap, const Rational& x) const {
  auto [yl, yr] = rule_images(gap);
  return yl + (x - gap.left_value) * (yr - yl) / (gap.right_value - gap.left_value);
}

Rational GeneratedFn::invert_on_gap(const GapInstance& gap, const Rational& y) const {
  auto [yl, yr] = rule_images(gap);
  if (yl == yr) throw std::logic_error("constant gap rule is not invertible");
  if (y < min(yl, yr) || y > max(yl, yr))
    throw std::invalid_argument("value outside the gap image");
  return gap.left_value + (y - yl) * (gap.right_value - gap.left_value) / (yr - yl);
}

ClosedSet1D GeneratedFn::evaluate(const Rational& x) const {
  Locate loc = part.locate(x);
  switch (loc.kind) {
    case Locate::Kind::Outside:
      return ClosedSet1D::empty();
    case Locate::Kind::ExplicitPoint:
    case Locate::Kind::FamilyMember: {
      auto [u, v] = value_interval(loc.point);
      return ClosedSet1D::interval(u, v);
    }
    case Locate::Kind::InGap:
      return ClosedSet1D::singleton(map_on_gap(loc.gap, x));
  }
  throw std::logic_error("unreachable");
}

// ---- unified wrapper ----

Rational SetValuedFn::dom_lo() const {
  return is_graph() ? graph().dom_lo : generated().part.lo();
}
Rational SetValuedFn::dom_hi() const {
  return is_graph() ? graph().dom_hi : generated().part.hi();
}
Rational SetValuedFn::cod_lo() const { return is_graph() ? graph().cod_lo : generated().cod_lo; }
Rational SetValuedFn::cod_hi() const { return is_graph() ? graph().cod_hi : generated().cod_hi; }

GraphFiber SetValuedFn::evaluate(const Rational& x) const {
  if (is_graph()) return graph_fiber(graph(), x);
  return {generated().evaluate(x), {}};
}

bool SetValuedFn::contains(const Rational& x, const Rational& y) const {
  if (is_graph()) return contains_point(graph(), x, y);
  return generated().evaluate(x).contains(y);
}

}  // namespace cmif
