#include "cmif/pattern.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "cmif/closed_set.hpp"
#include "cmif/limits.hpp"

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

bool same_family(const GeometricFamily& a, const GeometricFamily& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.rho == b.rho && a.n0 == b.n0;
}

// [u,v] with both endpoints on the partition; nullopt when the set is not of
// that shape. The correspondence conditions only ever speak about such sets.
std::optional<std::pair<Rational, Rational>> interval_form(const MarkovPartition& p,
                                                           const ClosedSet1D& s) {
  if (s.component_count() != 1) return std::nullopt;
  if (!p.classify_point(s.min()) || !p.classify_point(s.max())) return std::nullopt;
  return std::make_pair(s.min(), s.max());
}

// Rule image entering members of `family` from the given side, rebased to the
// member's own index; nullopt when no template gap bounds that side.
std::optional<SymRef> side_image_ref(const GeneratedFn& f, int family, bool from_left) {
  const MarkovPartition& p = f.part;
  for (size_t i = 0; i < p.template_gaps().size(); ++i) {
    const GapDesc& gd = p.template_gaps()[i];
    const SymRef& end = from_left ? gd.sym_right : gd.sym_left;
    if (end.kind != SymRef::Kind::Member || end.family != family) continue;
    const SymRef& img = from_left ? f.template_rules[i].right : f.template_rules[i].left;
    // Gap index n touches the member at m = n + offset; rebase img to m.
    return shifted(img, -end.offset);
  }
  return std::nullopt;
}

}  // namespace

SymRef tau_sym(const PatternMap& t, const SymRef& r) {
  if (r.kind == SymRef::Kind::Member) {
    const FamilyMap& fm = t.family_map.at(static_cast<size_t>(r.family));
    return SymRef::member(fm.target_family, r.offset + fm.shift);
  }
  return SymRef::explicit_pt(tau_value(t, r.value));
}

bool same_partition(const MarkovPartition& a, const MarkovPartition& b) {
  if (a.lo() != b.lo() || a.hi() != b.hi()) return false;
  if (a.explicit_points() != b.explicit_points()) return false;
  if (a.families().size() != b.families().size()) return false;
  for (size_t i = 0; i < a.families().size(); ++i)
    if (!same_family(a.families()[i], b.families()[i])) return false;
  return true;
}

long pattern_from_n(const PatternMap& t, int family) {
  const GeometricFamily& src = t.source.family(family);
  const FamilyMap& fm = t.family_map.at(static_cast<size_t>(family));
  const GeometricFamily& tgt = t.target.family(fm.target_family);
  return std::max(src.n0, tgt.n0 - fm.shift);
}

Ref tau_apply(const PatternMap& t, const Ref& p) {
  if (p.kind == Ref::Kind::Const)
    throw std::invalid_argument("tau: constants name no partition point");
  if (p.kind == Ref::Kind::Member) {
    if (p.family < 0 || static_cast<size_t>(p.family) >= t.family_map.size())
      throw std::invalid_argument("tau: member of an unknown family");
    if (p.index >= pattern_from_n(t, p.family)) {
      const FamilyMap& fm = t.family_map[static_cast<size_t>(p.family)];
      return Ref::member(fm.target_family, p.index + fm.shift);
    }
  }
  const Rational v = t.source.resolve(p);
  const auto it = t.explicit_map.find(v);
  if (it == t.explicit_map.end())
    throw std::invalid_argument("tau: no pair for " + v.str());
  const auto ref = t.target.classify_point(it->second);
  if (!ref)
    throw std::invalid_argument("tau: image " + it->second.str() + " is not a target point");
  return *ref;
}

Rational tau_value(const PatternMap& t, const Rational& v) {
  const auto ref = t.source.classify_point(v);
  if (!ref) throw std::invalid_argument("tau: " + v.str() + " is not a source partition point");
  return t.target.resolve(tau_apply(t, *ref));
}

PatternMap invert_pattern(const PatternMap& t) {
  PatternMap inv{t.target, t.source, {}, {}};
  inv.family_map.resize(t.family_map.size());
  for (size_t i = 0; i < t.family_map.size(); ++i) {
    const FamilyMap& fm = t.family_map[i];
    if (fm.target_family >= 0 && static_cast<size_t>(fm.target_family) < inv.family_map.size())
      inv.family_map[static_cast<size_t>(fm.target_family)] = {static_cast<int>(i), -fm.shift};
  }
  for (const auto& [key, val] : t.explicit_map) inv.explicit_map.emplace(val, key);
  return inv;
}

PartitionReport validate_pattern(const PatternMap& t) {
  PartitionReport rep;
  const MarkovPartition& S = t.source;
  const MarkovPartition& T = t.target;
  const size_t k = S.families().size();
  if (t.family_map.size() != k) {
    rep.add("family-map-size", "one entry per source family is required");
    return rep;
  }
  if (T.families().size() != k) {
    rep.add("family-count", "source and target have different family counts");
    return rep;
  }
  std::vector<char> hit(k, 0);
  for (size_t i = 0; i < k; ++i) {
    const int g = t.family_map[i].target_family;
    if (g < 0 || static_cast<size_t>(g) >= k) {
      rep.add("family-target", S.family(static_cast<int>(i)).id + " maps outside the target list");
      return rep;
    }
    if (hit[static_cast<size_t>(g)])
      rep.add("family-target", "two source families share a target family");
    hit[static_cast<size_t>(g)] = 1;
    if (S.family(static_cast<int>(i)).from_below() != T.family(g).from_below())
      rep.add("family-side", S.family(static_cast<int>(i)).id + " flips its accumulation side");
  }
  if (!rep.ok) return rep;

  for (size_t i = 0; i < k; ++i) {
    const GeometricFamily& fam = S.family(static_cast<int>(i));
    for (long n = fam.n0; n < pattern_from_n(t, static_cast<int>(i)); ++n)
      if (!t.explicit_map.count(fam.value(n)))
        rep.add("member-unmapped", fam.id + " member below the shifted range has no pair");
  }
  std::vector<Rational> values;
  for (const auto& [key, val] : t.explicit_map) {
    const auto ref = S.classify_point(key);
    if (!ref) {
      rep.add("key-off-partition", key.str() + " is not a source partition point");
      continue;
    }
    if (ref->kind == Ref::Kind::Member && ref->index >= pattern_from_n(t, ref->family))
      rep.add("key-overlap", key.str() + " is already covered by a family rule");
    if (!T.classify_point(val))
      rep.add("value-off-partition", val.str() + " is not a target partition point");
    values.push_back(val);
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    rep.add("not-injective", "two explicit pairs share a target point");
  // The explicit pairs must cover exactly what the family rules leave over.
  std::vector<Rational> residue = T.explicit_points();
  for (size_t i = 0; i < k; ++i) {
    const GeometricFamily& tf = T.family(t.family_map[i].target_family);
    for (long m = tf.n0; m < pattern_from_n(t, static_cast<int>(i)) + t.family_map[i].shift; ++m)
      residue.push_back(tf.value(m));
  }
  std::sort(residue.begin(), residue.end());
  if (values != residue)
    rep.add("leftover-mismatch", "explicit pairs do not cover exactly the unshifted target points");
  for (size_t i = 0; i < k; ++i) {
    const Rational& a = S.family(static_cast<int>(i)).limit();
    const Rational& b = T.family(t.family_map[i].target_family).limit();
    const auto it = t.explicit_map.find(a);
    if (it == t.explicit_map.end() || it->second != b)
      rep.add("limit-mismatch",
              S.family(static_cast<int>(i)).id + " does not carry its limit to the target limit");
  }
  if (!rep.ok) return rep;

  // Strictly increasing: the finite region point by point, each tail cycle
  // symbolically over every index past the exceptional members.
  const auto& tails = S.order().tails;
  std::vector<long> sym_start(tails.size(), 1);
  long depth = 8;
  for (size_t ti = 0; ti < tails.size(); ++ti) {
    long s = tails[ti].start_n, max_off = 0;
    for (const auto& [fam, off] : tails[ti].cycle) {
      s = std::max(s, pattern_from_n(t, fam) - off);
      max_off = std::max(max_off, off);
    }
    sym_start[ti] = s;
    depth = std::max(depth, s + max_off + 2);
  }
  for (size_t i = 0; i < k; ++i) depth = std::max(depth, pattern_from_n(t, static_cast<int>(i)) + 8);
  const std::vector<Rational> pts = S.materialize_points(depth);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (tau_value(t, pts[i]) < tau_value(t, pts[i + 1])) continue;
    rep.add("not-increasing", "order flips between " + pts[i].str() + " and " + pts[i + 1].str());
    return rep;
  }
  for (size_t ti = 0; ti < tails.size(); ++ti) {
    const OrderTail& tail = tails[ti];
    std::vector<GeoSeq> img;
    for (const auto& [fam, off] : tail.cycle) {
      const FamilyMap& fm = t.family_map[static_cast<size_t>(fam)];
      img.push_back(T.seq(SymRef::member(fm.target_family, off + fm.shift)));
    }
    const size_t m = img.size();
    for (size_t j = 0; j < m; ++j) {
      const FamilyMap& fm0 = t.family_map[static_cast<size_t>(tail.cycle[0].first)];
      const GeoSeq next =
          (j + 1 < m) ? img[j + 1]
                      : T.seq(SymRef::member(fm0.target_family, tail.cycle[0].second + fm0.shift + 1));
      const auto sweep = seq_compare(next, img[j], sym_start[ti]);
      const bool ordered = tail.from_below ? sweep.all_pos() : sweep.all_neg();
      if (!ordered) {
        rep.add("not-increasing", "tail at " + tail.alpha.str() + " loses its cyclic order");
        return rep;
      }
    }
  }
  return rep;
}

PatternCheck check_same_pattern(const GeneratedFn& f, const GeneratedFn& g, const PatternMap& t) {
  f.check_shape();
  g.check_shape();
  if (!same_partition(f.part, t.source) || !same_partition(g.part, t.target))
    return PatternCheck::fail(0, t.source.lo(), "map joins different partitions than f and g");
  const PartitionReport rep = validate_pattern(t);
  if (!rep.ok)
    return PatternCheck::fail(0, t.source.lo(),
                              rep.issues.front().code + ": " + rep.issues.front().detail);

  const MarkovPartition& S = t.source;
  const MarkovPartition& T = t.target;
  const size_t k = S.families().size();

  // Everything symbolic is compared from an index high enough that every
  // referenced member sits inside the shifted range on both sides.
  long span = 0;
  const auto scan = [&span](const SymRef& r) {
    if (r.kind == SymRef::Kind::Member) span = std::max(span, std::abs(r.offset));
  };
  for (const auto& [u, v] : f.family_values) { scan(u); scan(v); }
  for (const auto& [u, v] : g.family_values) { scan(u); scan(v); }
  for (const auto& tr : f.template_rules) { scan(tr.left); scan(tr.right); }
  for (const auto& tr : g.template_rules) { scan(tr.left); scan(tr.right); }
  long base = 1;
  for (const auto& gd : S.template_gaps()) { scan(gd.sym_left); scan(gd.sym_right); base = std::max(base, gd.start_n); }
  for (const auto& gd : T.template_gaps()) { scan(gd.sym_left); scan(gd.sym_right); base = std::max(base, gd.start_n); }
  long shift_span = 0;
  for (const auto& fm : t.family_map) shift_span = std::max(shift_span, std::abs(fm.shift));
  for (size_t i = 0; i < k; ++i) base = std::max(base, pattern_from_n(t, static_cast<int>(i)));
  const long start = base + span + shift_span + 4;
  const long depth = start + span + 2;

  try {
    const SetValuedFn wf(f), wg(g);
    for (const Rational& a : S.materialize_points(depth)) {
      const Rational ta = tau_value(t, a);
      const ClosedSet1D fv = f.evaluate(a);
      if (!S.classify_point(fv.min()) || !S.classify_point(fv.max()))
        return PatternCheck::fail(1, a, "value endpoint lies off the source partition");
      const ClosedSet1D want =
          ClosedSet1D::interval(tau_value(t, fv.min()), tau_value(t, fv.max()));
      if (g.evaluate(ta) != want)
        return PatternCheck::fail(1, a, "values at " + a.str() + " and " + ta.str() +
                                            " do not correspond");
      for (int side = 0; side < 2; ++side) {
        const int cond = side == 0 ? 2 : 3;
        const char* name = side == 0 ? "limit from below" : "limit from above";
        const ClosedSet1D lf = side == 0 ? lim_up(wf, a) : lim_down(wf, a);
        const ClosedSet1D lg = side == 0 ? lim_up(wg, ta) : lim_down(wg, ta);
        if (lf.is_empty() != lg.is_empty())
          return PatternCheck::fail(cond, a, std::string(name) + " exists on one side only");
        if (lf.is_empty()) continue;
        const auto intf = interval_form(S, lf);
        const auto intg = interval_form(T, lg);
        if (intf.has_value() != intg.has_value())
          return PatternCheck::fail(
              cond, a, std::string(name) + " is a partition interval on one side only");
        if (intf && (intg->first != tau_value(t, intf->first) ||
                     intg->second != tau_value(t, intf->second)))
          return PatternCheck::fail(cond, a, std::string(name) + " at " + a.str() + " and " +
                                                 ta.str() + " do not correspond");
      }
    }

    // Family rules once, covering all remaining indices.
    for (size_t i = 0; i < k; ++i) {
      const int F = static_cast<int>(i);
      const FamilyMap& fm = t.family_map[i];
      const auto& [su, sv] = f.family_values[i];
      const auto& [gu, gv] = g.family_values[static_cast<size_t>(fm.target_family)];
      for (int e = 0; e < 2; ++e) {
        const SymRef& fe = e == 0 ? su : sv;
        const SymRef& ge = e == 0 ? gu : gv;
        const auto sweep = seq_compare(T.seq(tau_sym(t, fe)), T.seq(shifted(ge, fm.shift)), start);
        if (!sweep.all_zero())
          return PatternCheck::fail(1, S.family(F).value(first_nonzero(sweep)),
                                    "family value endpoints stop corresponding");
      }
      for (int side = 0; side < 2; ++side) {
        const bool from_left = side == 0;
        const int cond = from_left ? 2 : 3;
        const auto rf = side_image_ref(f, F, from_left);
        const auto rg = side_image_ref(g, fm.target_family, from_left);
        if (rf.has_value() != rg.has_value())
          return PatternCheck::fail(cond, S.family(F).limit(),
                                    "tail gaps do not line up between the partitions");
        if (!rf) continue;
        const auto sweep =
            seq_compare(T.seq(tau_sym(t, *rf)), T.seq(shifted(*rg, fm.shift)), start);
        if (!sweep.all_zero())
          return PatternCheck::fail(cond, S.family(F).value(first_nonzero(sweep)),
                                    from_left ? "limits from below stop corresponding"
                                              : "limits from above stop corresponding");
      }
    }
  } catch (const std::invalid_argument& e) {
    return PatternCheck::fail(0, S.lo(), e.what());
  }
  return PatternCheck::pass();
}

std::optional<PatternMap> find_pattern_map(const GeneratedFn& f, const GeneratedFn& g,
                                           long shift_bound) {
  if (shift_bound < 0) throw std::invalid_argument("find_pattern_map: negative shift bound");
  f.check_shape();
  g.check_shape();
  const MarkovPartition& S = f.part;
  const MarkovPartition& T = g.part;
  const size_t k = S.families().size();
  if (T.families().size() != k) return std::nullopt;

  // Shift vectors by largest magnitude, then lexicographically.
  std::vector<std::vector<long>> shifts;
  if (k == 0) {
    shifts.push_back({});
  } else {
    std::vector<long> cur(k, -shift_bound);
    for (;;) {
      shifts.push_back(cur);
      size_t i = k;
      while (i > 0 && cur[i - 1] == shift_bound) cur[--i] = -shift_bound;
      if (i == 0) break;
      ++cur[i - 1];
    }
  }
  std::stable_sort(shifts.begin(), shifts.end(),
                   [](const std::vector<long>& a, const std::vector<long>& b) {
                     long ma = 0, mb = 0;
                     for (long v : a) ma = std::max(ma, std::abs(v));
                     for (long v : b) mb = std::max(mb, std::abs(v));
                     return ma < mb;
                   });

  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool sides = true;
    for (size_t i = 0; i < k && sides; ++i)
      sides = S.family(static_cast<int>(i)).from_below() ==
              T.family(sigma[i]).from_below();
    if (!sides) continue;
    for (const auto& c : shifts) {
      PatternMap t{S, T, {}, {}};
      t.family_map.resize(k);
      for (size_t i = 0; i < k; ++i) t.family_map[i] = {sigma[i], c[i]};
      // Leftovers on both sides must pair up; sorted order is the only
      // increasing candidate.
      std::vector<Rational> left = S.explicit_points();
      for (size_t i = 0; i < k; ++i) {
        const GeometricFamily& sf = S.family(static_cast<int>(i));
        for (long n = sf.n0; n < pattern_from_n(t, static_cast<int>(i)); ++n)
          left.push_back(sf.value(n));
      }
      std::vector<Rational> right = T.explicit_points();
      for (size_t i = 0; i < k; ++i) {
        const GeometricFamily& tf = T.family(sigma[i]);
        for (long m = tf.n0; m < pattern_from_n(t, static_cast<int>(i)) + c[i]; ++m)
          right.push_back(tf.value(m));
      }
      if (left.size() != right.size()) continue;
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      for (size_t i = 0; i < left.size(); ++i) t.explicit_map.emplace(left[i], right[i]);
      if (!validate_pattern(t).ok) continue;
      if (check_same_pattern(f, g, t).ok) return t;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

}  // namespace cmif
