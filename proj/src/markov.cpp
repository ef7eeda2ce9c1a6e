#include "cmif/markov.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmif/limits.hpp"

namespace cmif {

Membership is_point_of(const MarkovPartition& p, const Rational& v) {
  Membership m;
  m.value = v;
  std::optional<Ref> ref = p.classify_point(v);
  if (!ref) return m;
  if (ref->kind == Ref::Kind::Explicit) {
    m.kind = Membership::Kind::Explicit;
  } else {
    m.kind = Membership::Kind::Member;
    m.family = ref->family;
    m.index = ref->index;
  }
  return m;
}

namespace {

bool value_in_A(const MarkovPartition& p, const Rational& v) {
  return is_point_of(p, v).in_partition();
}

// A member ref names a point of A exactly when its index is in range;
// explicit and constant refs are decided by value.
bool ref_in_A(const MarkovPartition& p, const Ref& r) {
  if (r.kind == Ref::Kind::Member) return r.index >= p.family(r.family).n0;
  return value_in_A(p, r.value);
}

// Does r(n) name a point of A for every n >= n_from?
bool sym_in_A(const MarkovPartition& p, const SymRef& r, long n_from) {
  if (r.kind == SymRef::Kind::Member) return n_from + r.offset >= p.family(r.family).n0;
  return value_in_A(p, r.value);
}

// Composition of index shifts: a value ref attached to member n + by reads
// its own family at n + by + offset.
SymRef shifted(const SymRef& r, long by) {
  if (r.kind != SymRef::Kind::Member) return r;
  return SymRef::member(r.family, r.offset + by);
}

void add_witness(ConditionResult& c, Rational at, ClosedSet1D off, std::string why) {
  c.ok = false;
  c.witnesses.push_back({std::move(at), std::move(off), std::move(why)});
}

ConditionResult condition_values(const GeneratedFn& f, long depth) {
  ConditionResult c;
  const MarkovPartition& p = f.part;
  for (const auto& [a, uv] : f.explicit_values) {
    Rational u = p.resolve(uv.first), v = p.resolve(uv.second);
    if (u > v) add_witness(c, a, ClosedSet1D::interval(u, v), "value endpoints out of order");
    if (!ref_in_A(p, uv.first))
      add_witness(c, a, ClosedSet1D::singleton(u), "lower value endpoint not in the partition");
    if (!ref_in_A(p, uv.second))
      add_witness(c, a, ClosedSet1D::singleton(v), "upper value endpoint not in the partition");
  }
  for (size_t i = 0; i < f.family_values.size(); ++i) {
    const GeometricFamily& fam = p.family(static_cast<int>(i));
    const auto& [su, sv] = f.family_values[i];
    GeoSeq us = p.seq(su), vs = p.seq(sv);
    bool fam_ok = true;
    GeoSeq::SignSweep order = seq_compare(vs, us, fam.n0);
    if (!order.all_nonneg()) {
      long n = *order.first_neg;
      add_witness(c, fam.value(n), ClosedSet1D::interval(us.value_at(n), vs.value_at(n)),
                  "value endpoints out of order");
      fam_ok = false;
    }
    if (!sym_in_A(p, su, fam.n0)) {
      add_witness(c, fam.value(fam.n0), ClosedSet1D::singleton(us.value_at(fam.n0)),
                  "lower value endpoint not in the partition");
      fam_ok = false;
    }
    if (!sym_in_A(p, sv, fam.n0)) {
      add_witness(c, fam.value(fam.n0), ClosedSet1D::singleton(vs.value_at(fam.n0)),
                  "upper value endpoint not in the partition");
      fam_ok = false;
    }
    if (!fam_ok) continue;
    for (long n = fam.n0; n <= fam.n0 + depth; ++n) {
      Ref ru = su.at(n), rv = sv.at(n);
      Rational u = p.resolve(ru), v = p.resolve(rv);
      if (u > v || !ref_in_A(p, ru) || !ref_in_A(p, rv)) {
        add_witness(c, fam.value(n), ClosedSet1D::interval(u, v),
                    "spot check tripped after a clean symbolic pass");
        break;
      }
    }
  }
  return c;
}

ConditionResult condition_injective(const GeneratedFn& f, long depth) {
  ConditionResult c;
  const MarkovPartition& p = f.part;
  for (size_t i = 0; i < p.prefix_gaps().size(); ++i) {
    const GapDesc& g = p.prefix_gaps()[i];
    Rational wl = p.resolve(f.prefix_rules[i].left);
    Rational wr = p.resolve(f.prefix_rules[i].right);
    if (wl == wr)
      add_witness(c, (g.left_value + g.right_value) / Rational(2), ClosedSet1D::singleton(wl),
                  "gap rule collapses to a constant");
  }
  for (size_t i = 0; i < p.template_gaps().size(); ++i) {
    const GapDesc& g = p.template_gaps()[i];
    GeoSeq il = p.seq(f.template_rules[i].left);
    GeoSeq ir = p.seq(f.template_rules[i].right);
    GeoSeq::SignSweep diff = seq_compare(il, ir, g.start_n);
    if (!diff.none_zero()) {
      long n = *diff.first_zero;
      GapInstance inst = p.instantiate(static_cast<int>(i), n);
      add_witness(c, (inst.left_value + inst.right_value) / Rational(2),
                  ClosedSet1D::singleton(il.value_at(n)), "gap rule collapses to a constant");
      continue;
    }
    for (long n = g.start_n; n <= g.start_n + depth; ++n) {
      GapInstance inst = p.instantiate(static_cast<int>(i), n);
      auto [wl, wr] = f.rule_images(inst);
      if (wl == wr) {
        add_witness(c, (inst.left_value + inst.right_value) / Rational(2),
                    ClosedSet1D::singleton(wl), "spot check tripped after a clean symbolic pass");
        break;
      }
    }
  }
  return c;
}

ConditionResult condition_isolated_limits(const GeneratedFn& f, long depth) {
  ConditionResult c;
  const MarkovPartition& p = f.part;
  std::vector<Rational> derived = p.derived_set();
  auto is_derived = [&](const Rational& v) {
    return std::find(derived.begin(), derived.end(), v) != derived.end();
  };
  // The limit into a gap end is the rule image there, a single value that
  // must be a point of A whenever the end is an isolated point.
  for (size_t i = 0; i < p.prefix_gaps().size(); ++i) {
    const GapDesc& g = p.prefix_gaps()[i];
    const GapRule& rule = f.prefix_rules[i];
    if (!is_derived(g.left_value) && !ref_in_A(p, rule.left))
      add_witness(c, g.left_value, ClosedSet1D::singleton(p.resolve(rule.left)),
                  "limit into the gap misses the partition");
    if (!is_derived(g.right_value) && !ref_in_A(p, rule.right))
      add_witness(c, g.right_value, ClosedSet1D::singleton(p.resolve(rule.right)),
                  "limit into the gap misses the partition");
  }
  // Template gap ends are family members, always isolated points of A.
  for (size_t i = 0; i < p.template_gaps().size(); ++i) {
    const GapDesc& g = p.template_gaps()[i];
    const SymGapRule& rule = f.template_rules[i];
    if (!sym_in_A(p, rule.left, g.start_n))
      add_witness(c, p.seq(g.sym_left).value_at(g.start_n),
                  ClosedSet1D::singleton(p.seq(rule.left).value_at(g.start_n)),
                  "limit into the gap misses the partition");
    if (!sym_in_A(p, rule.right, g.start_n))
      add_witness(c, p.seq(g.sym_right).value_at(g.start_n),
                  ClosedSet1D::singleton(p.seq(rule.right).value_at(g.start_n)),
                  "limit into the gap misses the partition");
  }
  if (!c.ok) return c;
  // Independent cross-check through the exact limit machinery.
  SetValuedFn w(f);
  for (const Rational& a : p.materialize_points(std::min(depth, 12L))) {
    if (is_derived(a)) continue;
    for (int side = 0; side < 2; ++side) {
      ClosedSet1D L = side == 0 ? lim_up(w, a) : lim_down(w, a);
      if (L.is_empty()) continue;  // outward side of a domain end
      if (L.component_count() != 1 || L.min() != L.max())
        add_witness(c, a, L, "limit at an isolated point is not a single value");
      else if (!value_in_A(p, L.min()))
        add_witness(c, a, L, "limit into the gap misses the partition");
    }
  }
  return c;
}

ConditionResult condition_accumulation_limits(const GeneratedFn& f) {
  ConditionResult c;
  const MarkovPartition& p = f.part;
  SetValuedFn w(f);
  for (const Rational& a : p.derived_set()) {
    for (int side = 0; side < 2; ++side) {
      bool up = side == 0;
      ClosedSet1D L = up ? lim_up(w, a) : lim_down(w, a);
      if (L.is_empty()) continue;
      const char* dir = up ? " (from below)" : " (from above)";
      if (!value_in_A(p, L.min()))
        add_witness(c, a, L, std::string("smallest limit value not in the partition") + dir);
      if (!value_in_A(p, L.max()))
        add_witness(c, a, L, std::string("largest limit value not in the partition") + dir);
    }
  }
  return c;
}

}  // namespace

GraphCheck usc_check(const GeneratedFn& f, long depth) {
  f.check_shape();
  GraphCheck out;
  const MarkovPartition& p = f.part;
  auto flag = [&](const Rational& x, const Rational& y, const char* why) {
    for (const GraphViolation& v : out.violations)
      if (v.x == x && v.y == y) return;
    out.ok = false;
    out.violations.push_back({x, y, why});
  };
  // Containment is tested against the normalized span so a misordered value
  // interval surfaces once, through the interval condition, not here too.
  auto check_concrete = [&](const Ref& pt, const Rational& img, const char* why) {
    auto [u, v] = f.value_interval(pt);
    if (img < min(u, v) || img > max(u, v)) flag(p.resolve(pt), img, why);
  };
  for (size_t i = 0; i < p.prefix_gaps().size(); ++i) {
    const GapDesc& g = p.prefix_gaps()[i];
    check_concrete(g.left, p.resolve(f.prefix_rules[i].left), "limit from above escapes the value");
    check_concrete(g.right, p.resolve(f.prefix_rules[i].right), "limit from below escapes the value");
  }
  for (size_t i = 0; i < p.template_gaps().size(); ++i) {
    const GapDesc& g = p.template_gaps()[i];
    size_t flagged_before = out.violations.size();
    GeoSeq img_l = p.seq(f.template_rules[i].left);
    GeoSeq img_r = p.seq(f.template_rules[i].right);
    struct End {
      const SymRef* pt;
      const GeoSeq* img;
      const char* why;
    };
    for (End e : {End{&g.sym_left, &img_l, "limit from above escapes the value"},
                  End{&g.sym_right, &img_r, "limit from below escapes the value"}}) {
      if (e.pt->kind != SymRef::Kind::Member) continue;  // concrete sweep below covers it
      const auto& [su, sv] = f.family_values[e.pt->family];
      GeoSeq lo = p.seq(shifted(su, e.pt->offset));
      GeoSeq hi = p.seq(shifted(sv, e.pt->offset));
      GeoSeq::SignSweep below = seq_compare(*e.img, lo, g.start_n);
      GeoSeq::SignSweep above = seq_compare(hi, *e.img, g.start_n);
      std::optional<long> bad;
      if (!below.all_nonneg()) bad = *below.first_neg;
      if (!above.all_nonneg()) bad = bad ? std::min(*bad, *above.first_neg) : *above.first_neg;
      if (bad) flag(p.seq(*e.pt).value_at(*bad), e.img->value_at(*bad), e.why);
    }
    if (out.violations.size() != flagged_before) continue;
    for (long n = g.start_n; n <= g.start_n + depth; ++n) {
      GapInstance inst = p.instantiate(static_cast<int>(i), n);
      auto [rl, rr] = f.rule_refs(inst);
      check_concrete(inst.left, p.resolve(rl), "limit from above escapes the value");
      check_concrete(inst.right, p.resolve(rr), "limit from below escapes the value");
      if (out.violations.size() != flagged_before) break;
    }
  }
  // Accumulation sides and the explicit points, through the exact limits.
  SetValuedFn w(f);
  std::vector<Rational> probes = p.explicit_points();
  for (const Rational& d : p.derived_set())
    if (std::find(probes.begin(), probes.end(), d) == probes.end()) probes.push_back(d);
  for (const Rational& a : probes) {
    ClosedSet1D val = f.evaluate(a);
    for (int side = 0; side < 2; ++side) {
      ClosedSet1D L = side == 0 ? lim_up(w, a) : lim_down(w, a);
      if (L.is_empty() || L.subset_of(val)) continue;
      // Values of a generated function are single intervals, so an escaping
      // limit sticks out at one of its ends.
      Rational y = !val.contains(L.min()) ? L.min() : L.max();
      flag(a, y, side == 0 ? "limit from below escapes the value" : "limit from above escapes the value");
    }
  }
  return out;
}

MarkovReport verify_cmif(const GeneratedFn& f, long depth) {
  f.check_shape();
  MarkovReport rep;
  rep.cond1 = condition_values(f, depth);
  rep.cond2 = condition_injective(f, depth);
  rep.cond3 = condition_isolated_limits(f, depth);
  rep.cond4 = condition_accumulation_limits(f);
  rep.usc = usc_check(f, depth);
  rep.derived_set = f.part.derived_set();
  rep.overall = rep.cond1.ok && rep.cond2.ok && rep.cond3.ok && rep.cond4.ok && rep.usc.ok;
  return rep;
}

}  // namespace cmif
