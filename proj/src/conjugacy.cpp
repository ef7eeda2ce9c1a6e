#include "cmif/conjugacy.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace cmif {

namespace {

SymRef shifted(SymRef r, long by) {
  if (r.kind == SymRef::Kind::Member) r.offset += by;
  return r;
}

long first_nonzero(const GeoSeq::SignSweep& s) {
  long n = std::numeric_limits<long>::max();
  if (s.first_neg) n = std::min(n, *s.first_neg);
  if (s.first_pos) n = std::min(n, *s.first_pos);
  return n;
}

// Earliest index from which tau_sym(t, r) names the same point as tau_value
// does; members below the shifted range go through the explicit table.
long tau_sym_valid_from(const PatternMap& t, const SymRef& r, long n) {
  if (r.kind == SymRef::Kind::Member) n = std::max(n, pattern_from_n(t, r.family) - r.offset);
  return n;
}

// Member indices of F with value strictly inside (u,v). The loops terminate
// exactly when no tail accumulates inside; callers check that first.
std::vector<long> members_in(const GeometricFamily& F, const Rational& u, const Rational& v) {
  std::vector<long> out;
  if (F.from_below()) {
    if (F.limit() <= u) return out;
    if (F.limit() <= v) throw std::logic_error("tail accumulates inside the interval");
    for (long n = F.n0;; ++n) {
      Rational val = F.value(n);
      if (val >= v) break;
      if (val > u) out.push_back(n);
    }
  } else {
    if (F.limit() >= v) return out;
    if (F.limit() >= u) throw std::logic_error("tail accumulates inside the interval");
    for (long n = F.n0;; ++n) {
      Rational val = F.value(n);
      if (val <= u) break;
      if (val < v) out.push_back(n);
    }
  }
  return out;
}

bool interior_infinite(const MarkovPartition& p, const Rational& u, const Rational& v) {
  for (const GeometricFamily& F : p.families()) {
    const Rational& a = F.limit();
    if (u < a && a < v) return true;
    if (a == u && !F.from_below()) return true;
    if (a == v && F.from_below()) return true;
  }
  return false;
}

// Points strictly inside (u,v) where h may bend: partition points and stored
// piece boundaries. nullopt when a tail accumulates inside, which is the one
// shape a finite subdivision cannot absorb.
std::optional<std::vector<Rational>> breakpoints_in(const PiecewiseHomeo& h, const Rational& u,
                                                    const Rational& v) {
  const MarkovPartition& p = h.domain();
  if (interior_infinite(p, u, v)) return std::nullopt;
  std::set<Rational> pts;
  for (const Rational& e : p.explicit_points())
    if (u < e && e < v) pts.insert(e);
  for (int fi = 0; fi < static_cast<int>(p.families().size()); ++fi)
    for (long n : members_in(p.family(fi), u, v)) pts.insert(p.family(fi).value(n));
  for (const HomeoPiece& pc : h.concrete_pieces()) {
    if (u < pc.lo && pc.lo < v) pts.insert(pc.lo);
    if (u < pc.hi && pc.hi < v) pts.insert(pc.hi);
  }
  return std::vector<Rational>(pts.begin(), pts.end());
}

// Does h coincide with the chord of [u,v] on all of [u,v]? Returns a point
// strictly inside where it deviates, nullopt when exactly affine. u and v
// need not be partition points; stored pieces are checked on their clamped
// overlap, canonical template pieces concretely until the tail enters the
// interval for good and symbolically from there.
std::optional<Rational> affine_witness(const PiecewiseHomeo& h, const Rational& u,
                                       const Rational& v) {
  if (!(u < v)) throw std::logic_error("degenerate interval");
  const Rational hu = h.apply(u), hv = h.apply(v);
  const Rational s = (hv - hu) / (v - u);
  auto line = [&](const Rational& x) { return hu + (x - u) * s; };
  // an affine segment with both clamped ends on the chord lies on it
  auto seg_off = [&](const Rational& lo0, const Rational& hi0) -> std::optional<Rational> {
    Rational lo = std::max(lo0, u), hi = std::min(hi0, v);
    if (!(lo < hi)) return std::nullopt;
    if (h.apply(lo) != line(lo)) return lo;
    if (h.apply(hi) != line(hi)) return hi;
    return std::nullopt;
  };
  for (const HomeoPiece& pc : h.concrete_pieces()) {
    if (pc.hi <= u || pc.lo >= v) continue;
    if (auto w = seg_off(pc.lo, pc.hi)) return w;
  }
  const MarkovPartition& p = h.domain();
  for (size_t gi = 0; gi < p.template_gaps().size(); ++gi) {
    const GapDesc& gd = p.template_gaps()[gi];
    const OrderTail& tl = p.order().tails.at(static_cast<size_t>(gd.tail));
    const bool below = tl.from_below;
    if (below && tl.alpha <= u) continue;
    if (!below && tl.alpha >= v) continue;
    GeoSeq L = p.seq(gd.sym_left), R = p.seq(gd.sym_right);
    long n = h.template_start(static_cast<int>(gi));
    const bool accumulates_inside = below ? (tl.alpha <= v) : (tl.alpha >= u);
    if (!accumulates_inside) {
      for (long k = n;; ++k) {
        Rational lv = L.value_at(k), rv = R.value_at(k);
        if (below && lv >= v) break;
        if (!below && rv <= u) break;
        if (rv <= u || lv >= v) continue;
        if (auto w = seg_off(lv, rv)) return w;
      }
      continue;
    }
    // infinitely many instances end up inside; sweep the tail symbolically
    long n_sym = tau_sym_valid_from(h.tau(), gd.sym_left, n);
    n_sym = tau_sym_valid_from(h.tau(), gd.sym_right, n_sym);
    if (below)
      while (L.value_at(n_sym) <= u) ++n_sym;
    else
      while (R.value_at(n_sym) >= v) ++n_sym;
    for (long k = n; k < n_sym; ++k) {
      Rational lv = L.value_at(k), rv = R.value_at(k);
      if (rv <= u || lv >= v) continue;
      if (auto w = seg_off(lv, rv)) return w;
    }
    const MarkovPartition& T = h.codomain();
    const GeoSeq chord_b(hu - u * s);
    GeoSeq tgtL = T.seq(tau_sym(h.tau(), gd.sym_left));
    auto swL = seq_compare(tgtL, L.scaled(s) + chord_b, n_sym);
    if (!swL.all_zero()) return L.value_at(first_nonzero(swL));
    GeoSeq tgtR = T.seq(tau_sym(h.tau(), gd.sym_right));
    auto swR = seq_compare(tgtR, R.scaled(s) + chord_b, n_sym);
    if (!swR.all_zero()) return R.value_at(first_nonzero(swR));
  }
  return std::nullopt;
}

// Lifted pieces over one concrete gap: match the target gap, then a single
// canonical piece when h is affine across the image interval, otherwise a
// subdivision at the preimages of the points where h bends.
std::vector<HomeoPiece> lift_gap(const PiecewiseHomeo& h, const GeneratedFn& f,
                                 const GeneratedFn& g, const PatternMap& tau,
                                 const GapInstance& gi) {
  const Rational& a = gi.left_value;
  const Rational& a2 = gi.right_value;
  const Rational ta = tau_value(tau, a), ta2 = tau_value(tau, a2);
  Locate tl = g.part.locate((ta + ta2) / Rational(2));
  if (tl.kind != Locate::Kind::InGap || tl.gap.left_value != ta || tl.gap.right_value != ta2)
    throw std::invalid_argument("image gap does not correspond under the map");
  const GapInstance& tg = tl.gap;
  auto [wl, wr] = f.rule_images(gi);
  if (wl == wr) throw std::invalid_argument("gap rule collapses to a point");
  auto [gl, gr] = g.rule_images(tg);
  if (gl != tau_value(tau, wl) || gr != tau_value(tau, wr))
    throw std::invalid_argument("gap rule images do not correspond under the map");
  const Rational u = std::min(wl, wr), v = std::max(wl, wr);
  auto bps = breakpoints_in(h, u, v);
  bool affine;
  if (bps && bps->empty())
    affine = true;
  else
    affine = !affine_witness(h, u, v).has_value();
  if (affine) return {{a, a2, ta, ta2}};
  if (!bps)
    throw std::logic_error(
        "unsupported lift: partition points accumulate inside the image interval and the previous "
        "map bends there");
  std::vector<std::pair<Rational, Rational>> cuts;
  for (const Rational& x : *bps) {
    Rational t = f.invert_on_gap(gi, x);
    Rational y = g.invert_on_gap(tg, h.apply(x));
    cuts.emplace_back(t, y);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<HomeoPiece> out;
  Rational pt = a, py = ta;
  for (const auto& [t, y] : cuts) {
    if (!(pt < t) || !(py < y)) throw std::logic_error("lift produced a non increasing subdivision");
    out.push_back({pt, t, py, y});
    pt = t;
    py = y;
  }
  if (!(pt < a2) || !(py < ta2))
    throw std::logic_error("lift produced a non increasing subdivision");
  out.push_back({pt, a2, py, ta2});
  return out;
}

struct EndMatch {
  bool any = false;   // matches for every shift (fixed equal values)
  bool fixed = false; // matches exactly at shift d
  long d = 0;
};

// img at index n against gap_end at index n + d.
EndMatch match_end(const SymRef& gap_end, const SymRef& img) {
  if (gap_end.kind == SymRef::Kind::Member && img.kind == SymRef::Kind::Member) {
    if (gap_end.family != img.family) return {};
    return {false, true, img.offset - gap_end.offset};
  }
  if (gap_end.kind != SymRef::Kind::Member && img.kind != SymRef::Kind::Member) {
    if (gap_end.value == img.value) return {true, false, 0};
    return {};
  }
  return {};
}

// Template gap of p whose instance at n + d is (lo_ref, hi_ref) at n, for a
// single d independent of n.
std::optional<std::pair<int, long>> match_image_gap(const MarkovPartition& p, const SymRef& lo_ref,
                                                    const SymRef& hi_ref) {
  for (size_t i = 0; i < p.template_gaps().size(); ++i) {
    const GapDesc& gd = p.template_gaps()[i];
    EndMatch ml = match_end(gd.sym_left, lo_ref);
    EndMatch mr = match_end(gd.sym_right, hi_ref);
    if (!(ml.any || ml.fixed) || !(mr.any || mr.fixed)) continue;
    if (ml.fixed && mr.fixed && ml.d != mr.d) continue;
    long d = ml.fixed ? ml.d : (mr.fixed ? mr.d : 0);
    return std::make_pair(static_cast<int>(i), d);
  }
  return std::nullopt;
}

// Index from which the rule keeps one orientation, with its sign. Early
// flips are stepped over; a collapsing rule is malformed input.
std::pair<long, int> settle_orientation(const MarkovPartition& p, const SymGapRule& rule, long n) {
  GeoSeq d = p.seq(rule.right) - p.seq(rule.left);
  for (int tries = 0; tries < 256; ++tries, ++n) {
    auto sw = d.sign_over(n);
    if (sw.any_zero) throw std::invalid_argument("gap rule collapses at some instance");
    if (sw.all_pos()) return {n, +1};
    if (sw.all_neg()) return {n, -1};
  }
  throw std::invalid_argument("gap rule orientation does not settle");
}

GapInstance prefix_instance(const MarkovPartition& p, size_t i) {
  const GapDesc& gd = p.prefix_gaps()[i];
  GapInstance gi;
  gi.is_template = false;
  gi.gap_index = static_cast<int>(i);
  gi.left = gd.left;
  gi.right = gd.right;
  gi.left_value = gd.left_value;
  gi.right_value = gd.right_value;
  return gi;
}

bool same_tau(const PatternMap& x, const PatternMap& y) {
  if (x.family_map.size() != y.family_map.size()) return false;
  for (size_t i = 0; i < x.family_map.size(); ++i)
    if (x.family_map[i].target_family != y.family_map[i].target_family ||
        x.family_map[i].shift != y.family_map[i].shift)
      return false;
  return x.explicit_map == y.explicit_map;
}

}  // namespace

PiecewiseHomeo::PiecewiseHomeo(PatternMap tau, std::vector<HomeoPiece> concrete,
                               std::vector<long> template_starts)
    : tau_(std::move(tau)),
      tau_inv_(invert_pattern(tau_)),
      concrete_(std::move(concrete)),
      tmpl_start_(std::move(template_starts)) {
  if (tmpl_start_.size() != tau_.source.template_gaps().size())
    throw std::invalid_argument("one start index per template gap required");
  for (size_t i = 0; i < tmpl_start_.size(); ++i)
    if (tmpl_start_[i] < tau_.source.template_gaps()[i].start_n)
      throw std::invalid_argument("template start below the first instance");
  std::sort(concrete_.begin(), concrete_.end(),
            [](const HomeoPiece& a, const HomeoPiece& b) { return a.lo < b.lo; });
}

long PiecewiseHomeo::template_start(int template_gap_index) const {
  return tmpl_start_.at(static_cast<size_t>(template_gap_index));
}

Rational PiecewiseHomeo::apply(const Rational& t) const {
  Locate loc = domain().locate(t);
  switch (loc.kind) {
    case Locate::Kind::Outside:
      throw std::out_of_range("point outside the domain interval");
    case Locate::Kind::ExplicitPoint:
    case Locate::Kind::FamilyMember:
      return tau_value(tau_, t);
    case Locate::Kind::InGap:
      break;
  }
  const GapInstance& gi = loc.gap;
  if (gi.is_template && gi.n >= tmpl_start_.at(static_cast<size_t>(gi.gap_index))) {
    const Rational tu = tau_value(tau_, gi.left_value);
    const Rational tv = tau_value(tau_, gi.right_value);
    return tu + (t - gi.left_value) * (tv - tu) / (gi.right_value - gi.left_value);
  }
  auto it = std::lower_bound(concrete_.begin(), concrete_.end(), t,
                             [](const HomeoPiece& pc, const Rational& x) { return pc.hi < x; });
  if (it == concrete_.end() || it->lo > t) throw std::logic_error("no piece covers the point");
  return it->at(t);
}

Rational PiecewiseHomeo::apply_inverse(const Rational& y) const {
  Locate loc = codomain().locate(y);
  if (loc.kind == Locate::Kind::Outside)
    throw std::out_of_range("point outside the codomain interval");
  if (loc.kind != Locate::Kind::InGap) return tau_value(tau_inv_, y);
  const GapInstance& tg = loc.gap;
  const Rational u = tau_value(tau_inv_, tg.left_value);
  const Rational v = tau_value(tau_inv_, tg.right_value);
  Locate sl = domain().locate((u + v) / Rational(2));
  if (sl.kind != Locate::Kind::InGap || sl.gap.left_value != u || sl.gap.right_value != v)
    throw std::logic_error("inverse image of a gap is not a gap");
  const GapInstance& gi = sl.gap;
  if (gi.is_template && gi.n >= tmpl_start_.at(static_cast<size_t>(gi.gap_index)))
    return u + (y - tg.left_value) * (v - u) / (tg.right_value - tg.left_value);
  auto it = std::lower_bound(concrete_.begin(), concrete_.end(), y,
                             [](const HomeoPiece& pc, const Rational& x) { return pc.img_hi < x; });
  if (it == concrete_.end() || it->img_lo > y) throw std::logic_error("no piece covers the value");
  return it->inverse_at(y);
}

PartitionReport verify_homeo(const PiecewiseHomeo& h) {
  PartitionReport rep;
  const MarkovPartition& S = h.domain();
  const PatternMap& tau = h.tau();
  PartitionReport tr = validate_pattern(tau);
  if (!tr.ok)
    for (const ValidationIssue& iss : tr.issues) rep.add("tau-" + iss.code, iss.detail);
  struct Need {
    Rational lo, hi;
  };
  std::vector<Need> needs;
  for (const GapDesc& gd : S.prefix_gaps()) needs.push_back({gd.left_value, gd.right_value});
  for (size_t i = 0; i < S.template_gaps().size(); ++i) {
    const GapDesc& gd = S.template_gaps()[i];
    for (long n = gd.start_n; n < h.template_start(static_cast<int>(i)); ++n) {
      GapInstance ins = S.instantiate(static_cast<int>(i), n);
      needs.push_back({ins.left_value, ins.right_value});
    }
  }
  std::sort(needs.begin(), needs.end(), [](const Need& a, const Need& b) { return a.lo < b.lo; });
  const std::vector<HomeoPiece>& pcs = h.concrete_pieces();
  size_t j = 0;
  for (const Need& nd : needs) {
    while (j < pcs.size() && pcs[j].lo < nd.lo) {
      rep.add("stray-piece", "piece at " + pcs[j].lo.str() + " covers no concrete gap");
      ++j;
    }
    std::optional<Rational> bl, br;
    try {
      bl = tau_value(tau, nd.lo);
      br = tau_value(tau, nd.hi);
    } catch (const std::invalid_argument& e) {
      rep.add("gap-ends-unmapped", e.what());
    }
    if (j >= pcs.size() || pcs[j].lo != nd.lo) {
      rep.add("gap-uncovered", "no piece starts at " + nd.lo.str());
      continue;
    }
    Rational cur = nd.lo;
    std::optional<Rational> cur_img = bl;
    bool first = true;
    while (j < pcs.size() && pcs[j].lo < nd.hi) {
      const HomeoPiece& pc = pcs[j];
      if (pc.lo != cur) rep.add("discontinuous", "hole before " + pc.lo.str());
      if (!(pc.lo < pc.hi) || !(pc.img_lo < pc.img_hi))
        rep.add("not-increasing", "piece at " + pc.lo.str());
      if (cur_img && pc.img_lo != *cur_img)
        rep.add(first ? "endpoint-mismatch" : "discontinuous",
                "image jumps at " + pc.lo.str());
      if (pc.hi > nd.hi) rep.add("gap-overflow", "piece crosses a partition point at " + nd.hi.str());
      cur = pc.hi;
      cur_img = pc.img_hi;
      first = false;
      ++j;
    }
    if (cur != nd.hi)
      rep.add("gap-uncovered", "coverage stops at " + cur.str());
    else if (br && cur_img && *cur_img != *br)
      rep.add("endpoint-mismatch", "image of " + nd.hi.str() + " misses the mapped point");
  }
  while (j < pcs.size()) {
    rep.add("stray-piece", "piece at " + pcs[j].lo.str() + " covers no concrete gap");
    ++j;
  }
  return rep;
}

PiecewiseHomeo build_h1(const PatternMap& tau) {
  PartitionReport rep = validate_pattern(tau);
  if (!rep.ok)
    throw std::invalid_argument("pattern map fails validation: " + rep.issues.front().code);
  std::vector<HomeoPiece> pieces;
  for (const GapDesc& gd : tau.source.prefix_gaps())
    pieces.push_back(
        {gd.left_value, gd.right_value, tau_value(tau, gd.left_value), tau_value(tau, gd.right_value)});
  std::vector<long> starts;
  starts.reserve(tau.source.template_gaps().size());
  for (const GapDesc& gd : tau.source.template_gaps()) starts.push_back(gd.start_n);
  return PiecewiseHomeo(tau, std::move(pieces), std::move(starts));
}

PiecewiseHomeo lift_h(const PiecewiseHomeo& h, const GeneratedFn& f, const GeneratedFn& g,
                      const PatternMap& tau) {
  if (!same_partition(f.part, tau.source) || !same_partition(g.part, tau.target) ||
      !same_partition(h.domain(), tau.source) || !same_partition(h.codomain(), tau.target))
    throw std::invalid_argument("partitions do not line up");
  const MarkovPartition& S = f.part;
  std::vector<HomeoPiece> pieces;
  std::vector<long> starts(S.template_gaps().size(), 0);
  for (size_t i = 0; i < S.prefix_gaps().size(); ++i) {
    auto sub = lift_gap(h, f, g, tau, prefix_instance(S, i));
    pieces.insert(pieces.end(), sub.begin(), sub.end());
  }
  for (size_t ti = 0; ti < S.template_gaps().size(); ++ti) {
    const GapDesc& gd = S.template_gaps()[ti];
    const SymGapRule& rule = f.template_rules.at(ti);
    auto [s, sgn] = settle_orientation(S, rule, gd.start_n);
    const SymRef& lo_ref = sgn > 0 ? rule.left : rule.right;
    const SymRef& hi_ref = sgn > 0 ? rule.right : rule.left;
    if (auto mg = match_image_gap(S, lo_ref, hi_ref)) {
      // the image of each instance is again a single gap: nothing inside it
      auto [tj, d] = *mg;
      s = std::max(s, S.template_gaps().at(static_cast<size_t>(tj)).start_n - d);
      s = std::max(s, h.template_start(tj) - d);
    } else if (lo_ref.kind != SymRef::Kind::Member && hi_ref.kind != SymRef::Kind::Member) {
      // constant image interval shared by every instance
      auto bps = breakpoints_in(h, lo_ref.value, hi_ref.value);
      bool affine = (bps && bps->empty()) ||
                    !affine_witness(h, lo_ref.value, hi_ref.value).has_value();
      if (!affine)
        throw std::logic_error(
            "unsupported lift: every instance of a template gap would need subdivision");
    } else {
      // image intervals vary without matching a single gap; require h affine
      // across their closed hull
      GeoSeq loS = S.seq(lo_ref), hiS = S.seq(hi_ref);
      Rational hull_lo = std::min(loS.value_at(s), loS.limit());
      Rational hull_hi = std::max(hiS.value_at(s), hiS.limit());
      if (affine_witness(h, hull_lo, hull_hi).has_value())
        throw std::logic_error(
            "unsupported lift: the image intervals accumulate where the previous map bends");
    }
    starts[ti] = s;
    for (long n = gd.start_n; n < s; ++n) {
      auto sub = lift_gap(h, f, g, tau, S.instantiate(static_cast<int>(ti), n));
      pieces.insert(pieces.end(), sub.begin(), sub.end());
    }
    // the symbolic region must lift to the canonical piece; spot-check it
    for (long n = s; n < s + 3; ++n) {
      auto sub = lift_gap(h, f, g, tau, S.instantiate(static_cast<int>(ti), n));
      if (sub.size() != 1)
        throw std::logic_error("symbolic region lifts non canonically");
    }
  }
  return PiecewiseHomeo(tau, std::move(pieces), std::move(starts));
}

CommuteCheck verify_commuting(const PiecewiseHomeo& h, const GeneratedFn& f, const GeneratedFn& g,
                              const PiecewiseHomeo& h_next) {
  const MarkovPartition& S = f.part;
  const MarkovPartition& T = g.part;
  if (!same_partition(S, h.domain()) || !same_partition(T, h.codomain()) ||
      !same_partition(S, h_next.domain()) || !same_partition(T, h_next.codomain()))
    return CommuteCheck::fail(S.lo(), "partitions do not line up");
  if (!same_tau(h.tau(), h_next.tau()))
    return CommuteCheck::fail(S.lo(), "the two maps carry different patterns");
  const PatternMap& tau = h_next.tau();
  try {
    // depth below which everything is checked by direct evaluation
    long D = 8;
    for (size_t i = 0; i < S.template_gaps().size(); ++i) {
      D = std::max(D, h.template_start(static_cast<int>(i)) + 2);
      D = std::max(D, h_next.template_start(static_cast<int>(i)) + 2);
    }
    for (size_t fi = 0; fi < S.families().size(); ++fi)
      D = std::max(D, pattern_from_n(tau, static_cast<int>(fi)) + 2);
    long span = 0;
    auto widen = [&span](const SymRef& r) {
      if (r.kind == SymRef::Kind::Member) span = std::max(span, std::labs(r.offset));
    };
    for (const auto& [lo, hi] : f.family_values) widen(lo), widen(hi);
    for (const auto& [lo, hi] : g.family_values) widen(lo), widen(hi);
    for (const SymGapRule& rl : f.template_rules) widen(rl.left), widen(rl.right);
    for (const SymGapRule& rl : g.template_rules) widen(rl.left), widen(rl.right);
    for (const GapDesc& gd : S.template_gaps()) widen(gd.sym_left), widen(gd.sym_right);
    for (const GapDesc& gd : T.template_gaps()) widen(gd.sym_left), widen(gd.sym_right);
    D += span + 2;

    for (const Rational& a : S.materialize_points(D)) {
      ClosedSet1D fv = f.evaluate(a);
      Rational lu = h.apply(fv.min());
      Rational lv = h.apply(fv.max());
      ClosedSet1D gv = g.evaluate(h_next.apply(a));
      if (gv.component_count() != 1 || gv.min() != lu || gv.max() != lv)
        return CommuteCheck::fail(a, "images of the value interval disagree at a partition point");
    }
    for (size_t fi = 0; fi < S.families().size(); ++fi) {
      const FamilyMap& fm = tau.family_map.at(fi);
      const auto& fe = f.family_values.at(fi);
      const auto& ge = g.family_values.at(static_cast<size_t>(fm.target_family));
      for (int side = 0; side < 2; ++side) {
        const SymRef& fr = side == 0 ? fe.first : fe.second;
        const SymRef& gr = side == 0 ? ge.first : ge.second;
        long start = tau_sym_valid_from(tau, fr, D);
        auto sw = seq_compare(T.seq(tau_sym(tau, fr)), T.seq(shifted(gr, fm.shift)), start);
        if (!sw.all_zero())
          return CommuteCheck::fail(S.family(static_cast<int>(fi)).value(first_nonzero(sw)),
                                    "family value endpoints disagree");
      }
    }

    // one concrete gap: both sides piecewise affine, equal at every cut and
    // affine in between
    auto check_gap = [&](const GapInstance& gi) -> std::optional<CommuteCheck> {
      const Rational& a = gi.left_value;
      const Rational& a2 = gi.right_value;
      const Rational ta = tau_value(tau, a), ta2 = tau_value(tau, a2);
      Locate tl = T.locate((ta + ta2) / Rational(2));
      if (tl.kind != Locate::Kind::InGap || tl.gap.left_value != ta || tl.gap.right_value != ta2)
        return CommuteCheck::fail(a, "image gap does not correspond under the pattern");
      const GapInstance& tg = tl.gap;
      auto [wl, wr] = f.rule_images(gi);
      if (wl == wr) return CommuteCheck::fail(a, "gap rule collapses to a point");
      const Rational u = std::min(wl, wr), v = std::max(wl, wr);
      std::set<Rational> ts;
      for (const HomeoPiece& pc : h_next.concrete_pieces()) {
        if (a < pc.lo && pc.lo < a2) ts.insert(pc.lo);
        if (a < pc.hi && pc.hi < a2) ts.insert(pc.hi);
      }
      if (auto bps = breakpoints_in(h, u, v))
        for (const Rational& x : *bps) ts.insert(f.invert_on_gap(gi, x));
      std::vector<Rational> cuts(ts.begin(), ts.end());
      cuts.insert(cuts.begin(), a);
      cuts.push_back(a2);
      auto lhs = [&](const Rational& t) { return h.apply(f.map_on_gap(gi, t)); };
      auto rhs = [&](const Rational& t) { return g.map_on_gap(tg, h_next.apply(t)); };
      for (const Rational& t : cuts)
        if (lhs(t) != rhs(t)) return CommuteCheck::fail(t, "sides disagree at a subdivision point");
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        // both sides are affine strictly between consecutive cuts, so two
        // interior probes decide equality of the open segment; the cut checks
        // above then pin the closed one
        Rational x1 = f.map_on_gap(gi, cuts[k]);
        Rational x2 = f.map_on_gap(gi, cuts[k + 1]);
        if (x2 < x1) std::swap(x1, x2);
        if (auto w = affine_witness(h, x1, x2))
          return CommuteCheck::fail(f.invert_on_gap(gi, *w),
                                    "previous map bends between subdivision points");
        const Rational step = (cuts[k + 1] - cuts[k]) / Rational(3);
        for (int p = 1; p <= 2; ++p) {
          Rational t = cuts[k] + step * Rational(p);
          if (lhs(t) != rhs(t))
            return CommuteCheck::fail(t, "sides disagree between subdivision points");
        }
      }
      return std::nullopt;
    };

    for (size_t i = 0; i < S.prefix_gaps().size(); ++i)
      if (auto bad = check_gap(prefix_instance(S, i))) return *bad;

    for (size_t ti = 0; ti < S.template_gaps().size(); ++ti) {
      const GapDesc& gd = S.template_gaps()[ti];
      long V = std::max(gd.start_n, h_next.template_start(static_cast<int>(ti)));
      V = tau_sym_valid_from(tau, gd.sym_left, V);
      V = tau_sym_valid_from(tau, gd.sym_right, V);
      auto tm = match_image_gap(T, tau_sym(tau, gd.sym_left), tau_sym(tau, gd.sym_right));
      if (!tm)
        return CommuteCheck::fail(S.seq(gd.sym_left).value_at(V),
                                  "no target gap corresponds to the template");
      auto [tj, d] = *tm;
      V = std::max(V, T.template_gaps().at(static_cast<size_t>(tj)).start_n - d);
      const SymGapRule& rule = f.template_rules.at(ti);
      auto [V2, sgn] = settle_orientation(S, rule, V);
      V = V2;
      const SymRef& lo_ref = sgn > 0 ? rule.left : rule.right;
      const SymRef& hi_ref = sgn > 0 ? rule.right : rule.left;
      if (auto mg = match_image_gap(S, lo_ref, hi_ref)) {
        auto [sj, sd] = *mg;
        V = std::max(V, S.template_gaps().at(static_cast<size_t>(sj)).start_n - sd);
        V = std::max(V, h.template_start(sj) - sd);
      } else if (lo_ref.kind != SymRef::Kind::Member && hi_ref.kind != SymRef::Kind::Member) {
        if (auto w = affine_witness(h, lo_ref.value, hi_ref.value)) {
          GapInstance gi = S.instantiate(static_cast<int>(ti), V);
          return CommuteCheck::fail(f.invert_on_gap(gi, *w),
                                    "previous map bends inside the image interval");
        }
      } else {
        GeoSeq loS = S.seq(lo_ref), hiS = S.seq(hi_ref);
        Rational hull_lo = std::min(loS.value_at(V), loS.limit());
        Rational hull_hi = std::max(hiS.value_at(V), hiS.limit());
        if (affine_witness(h, hull_lo, hull_hi).has_value())
          return CommuteCheck::fail(S.seq(gd.sym_left).value_at(V),
                                    "previous map bends where the image intervals accumulate");
      }
      // both sides affine per instance from V on; ends decide equality
      const SymGapRule& grule = g.template_rules.at(static_cast<size_t>(tj));
      for (int side = 0; side < 2; ++side) {
        const SymRef& fr = side == 0 ? rule.left : rule.right;
        const SymRef& gr = side == 0 ? grule.left : grule.right;
        long start = tau_sym_valid_from(tau, fr, V);
        auto sw = seq_compare(T.seq(tau_sym(tau, fr)), T.seq(shifted(gr, d)), start);
        if (!sw.all_zero())
          return CommuteCheck::fail(S.seq(gd.sym_left).value_at(first_nonzero(sw)),
                                    "gap end images disagree");
      }
      for (long n = gd.start_n; n < V; ++n)
        if (auto bad = check_gap(S.instantiate(static_cast<int>(ti), n))) return *bad;
    }
  } catch (const std::invalid_argument& e) {
    return CommuteCheck::fail(S.lo(), e.what());
  } catch (const std::out_of_range& e) {
    return CommuteCheck::fail(S.lo(), e.what());
  }
  return CommuteCheck::pass();
}

const GeneratedFn& HomeoChain::f_at(size_t i) const {
  if (fs.size() == 1) return fs.front();
  return fs.at(i - 1);
}

const GeneratedFn& HomeoChain::g_at(size_t i) const {
  if (gs.size() == 1) return gs.front();
  return gs.at(i - 1);
}

HomeoChain build_chain(const std::vector<GeneratedFn>& fs, const std::vector<GeneratedFn>& gs,
                       const PatternMap& tau, size_t m) {
  if (m == 0) throw std::invalid_argument("chain depth must be positive");
  if (fs.empty() || gs.empty()) throw std::invalid_argument("empty function sequence");
  if (fs.size() != 1 && fs.size() < m)
    throw std::invalid_argument("not enough source functions for the depth");
  if (gs.size() != 1 && gs.size() < m)
    throw std::invalid_argument("not enough target functions for the depth");
  auto f_at = [&fs](size_t i) -> const GeneratedFn& {
    return fs.size() == 1 ? fs.front() : fs.at(i - 1);
  };
  auto g_at = [&gs](size_t i) -> const GeneratedFn& {
    return gs.size() == 1 ? gs.front() : gs.at(i - 1);
  };
  const size_t distinct = (fs.size() == 1 && gs.size() == 1) ? 1 : m;
  for (size_t i = 1; i <= distinct; ++i) {
    PatternCheck pc = check_same_pattern(f_at(i), g_at(i), tau);
    if (!pc.ok)
      throw std::invalid_argument("pattern mismatch at level " + std::to_string(i) +
                                  ", condition " + std::to_string(pc.condition) + " near " +
                                  pc.at.str());
  }
  std::vector<PiecewiseHomeo> maps;
  maps.push_back(build_h1(tau));
  for (size_t i = 1; i <= m; ++i) {
    const GeneratedFn& f = f_at(i);
    const GeneratedFn& g = g_at(i);
    PiecewiseHomeo next = lift_h(maps.back(), f, g, tau);
    CommuteCheck cc = verify_commuting(maps.back(), f, g, next);
    if (!cc.ok)
      throw std::logic_error("built square fails to commute at " + cc.at.str() + ": " + cc.why);
    maps.push_back(std::move(next));
  }
  return HomeoChain{std::move(maps), fs, gs, tau};
}

std::vector<Rational> apply_H(const HomeoChain& chain, const std::vector<Rational>& xs, size_t n) {
  if (xs.size() != n) throw std::invalid_argument("tuple length does not match n");
  if (n > chain.maps.size()) throw std::invalid_argument("tuple longer than the chain");
  std::vector<Rational> out;
  out.reserve(n);
  for (size_t k = 0; k < n; ++k) out.push_back(chain.maps[k].apply(xs[k]));
  return out;
}

}  // namespace cmif
