#include "cmif/partition.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cmif {

namespace {

constexpr long kSolveCap = 200000;
constexpr long kPeriodScanCap = 1024;
constexpr int kTerritoryRetryCap = 512;

// Index of value v within family f, if any.
std::optional<long> member_index_of(const GeometricFamily& f, const Rational& v) {
  if (v == f.alpha) return std::nullopt;  // the limit is never attained
  Rational q = (v - f.alpha) / f.beta;
  if (q.sign() <= 0) return std::nullopt;
  return solve_geometric_index(f.rho, q, f.n0);
}

}  // namespace

std::optional<long> solve_geometric_index(const Rational& rho, const Rational& q, long n_min) {
  if (q.sign() <= 0) return std::nullopt;
  Rational p = rho.pow(n_min);
  if (p < q) return std::nullopt;
  long n = n_min;
  while (p > q) {
    p *= rho;
    ++n;
    if (n - n_min > kSolveCap) throw std::runtime_error("geometric index solve exceeded iteration cap");
  }
  return p == q ? std::optional<long>(n) : std::nullopt;
}

bool operator==(const Ref& a, const Ref& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Ref::Kind::Member) return a.family == b.family && a.index == b.index;
  return a.value == b.value;
}

bool operator==(const SymRef& a, const SymRef& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SymRef::Kind::Member) return a.family == b.family && a.offset == b.offset;
  return a.value == b.value;
}

SymRef SymRef::fixed(const Ref& r) {
  switch (r.kind) {
    case Ref::Kind::Explicit:
      return SymRef::explicit_pt(r.value);
    case Ref::Kind::Const:
      return SymRef::constant(r.value);
    case Ref::Kind::Member:
      throw std::logic_error("fixed member refs must be resolved before symbolic lifting");
  }
  throw std::logic_error("unreachable");
}

Ref SymRef::at(long n) const {
  switch (kind) {
    case Kind::Explicit:
      return Ref::explicit_pt(value);
    case Kind::Const:
      return Ref::constant(value);
    case Kind::Member:
      return Ref::member(family, n + offset);
  }
  throw std::logic_error("unreachable");
}

void PartitionReport::add(std::string code, std::string detail) {
  ok = false;
  issues.push_back({std::move(code), std::move(detail)});
}

PartitionReport MarkovPartition::validate(const Input& in) {
  PartitionReport rep;
  if (!(in.lo < in.hi)) rep.add("bad-ambient", "interval endpoints must satisfy lo < hi");
  std::vector<Rational> ex = in.explicit_points;
  std::sort(ex.begin(), ex.end());
  for (size_t i = 0; i + 1 < ex.size(); ++i)
    if (ex[i] == ex[i + 1]) rep.add("duplicate-explicit", "explicit point " + ex[i].str() + " listed twice");
  for (const Rational& e : ex)
    if (e < in.lo || e > in.hi) rep.add("explicit-out-of-range", "explicit point " + e.str());
  if (!std::binary_search(ex.begin(), ex.end(), in.lo))
    rep.add("missing-endpoint", "left endpoint " + in.lo.str() + " not a partition point");
  if (!std::binary_search(ex.begin(), ex.end(), in.hi))
    rep.add("missing-endpoint", "right endpoint " + in.hi.str() + " not a partition point");

  std::set<std::string> ids;
  for (const GeometricFamily& f : in.families) {
    if (f.id.empty()) rep.add("bad-family", "family with empty id");
    if (!ids.insert(f.id).second) rep.add("duplicate-family-id", f.id);
    if (f.beta.is_zero()) rep.add("bad-family", f.id + ": beta must be nonzero");
    if (f.rho.sign() <= 0 || f.rho >= Rational(1)) rep.add("bad-family", f.id + ": rho must lie in (0,1)");
    if (f.n0 < 1) rep.add("bad-family", f.id + ": n0 must be >= 1");
    if (f.beta.is_zero() || f.rho.sign() <= 0 || f.rho >= Rational(1) || f.n0 < 1) continue;
    if (!std::binary_search(ex.begin(), ex.end(), f.alpha))
      rep.add("family-limit-not-explicit", f.id + ": limit " + f.alpha.str());
    Rational v0 = f.value(f.n0);
    if (v0 < in.lo || v0 > in.hi)
      rep.add("member-out-of-range", f.id + "[" + std::to_string(f.n0) + "] = " + v0.str());
  }
  if (!rep.ok) return rep;

  for (size_t i = 0; i < in.families.size(); ++i)
    for (size_t j = i + 1; j < in.families.size(); ++j)
      if (in.families[i].alpha == in.families[j].alpha && in.families[i].rho != in.families[j].rho)
        rep.add("mixed-rho-at-limit",
                in.families[i].id + " and " + in.families[j].id + " share limit " +
                    in.families[i].alpha.str() + " with different ratios");
  if (!rep.ok) return rep;

  for (const GeometricFamily& f : in.families)
    for (const Rational& e : ex)
      if (auto n = member_index_of(f, e))
        rep.add("clashing-points", f.id + "[" + std::to_string(*n) + "] equals explicit point " + e.str());

  for (size_t i = 0; i < in.families.size(); ++i) {
    for (size_t j = i + 1; j < in.families.size(); ++j) {
      const GeometricFamily& a = in.families[i];
      const GeometricFamily& b = in.families[j];
      if (a.alpha == b.alpha) {
        if (a.beta.sign() != b.beta.sign()) continue;  // opposite sides never meet
        Rational ratio = a.beta / b.beta;
        std::optional<long> k;
        bool a_later = false;
        if (ratio == Rational(1)) {
          k = 0;
        } else if (ratio < Rational(1)) {
          k = solve_geometric_index(a.rho, ratio, 1);
        } else {
          k = solve_geometric_index(a.rho, b.beta / a.beta, 1);
          a_later = true;
        }
        if (k) {
          long m = a_later ? std::max(b.n0, a.n0 - *k) : std::max(a.n0, b.n0 - *k);
          const GeometricFamily& first = a_later ? b : a;
          const GeometricFamily& second = a_later ? a : b;
          rep.add("clashing-points", first.id + "[" + std::to_string(m) + "] equals " + second.id +
                                         "[" + std::to_string(m + *k) + "]");
        }
      } else {
        Rational half = (a.alpha - b.alpha).abs() / Rational(2);
        long guard = 0;
        for (long m = a.n0; a.dist(m) >= half; ++m) {
          if (auto n = member_index_of(b, a.value(m))) {
            rep.add("clashing-points",
                    a.id + "[" + std::to_string(m) + "] equals " + b.id + "[" + std::to_string(*n) + "]");
            break;
          }
          if (++guard > kSolveCap) throw std::runtime_error("collision scan exceeded iteration cap");
        }
        guard = 0;
        for (long n = b.n0; b.dist(n) >= half; ++n) {
          if (auto m = member_index_of(a, b.value(n))) {
            rep.add("clashing-points",
                    b.id + "[" + std::to_string(n) + "] equals " + a.id + "[" + std::to_string(*m) + "]");
            break;
          }
          if (++guard > kSolveCap) throw std::runtime_error("collision scan exceeded iteration cap");
        }
      }
    }
  }
  return rep;
}

MarkovPartition MarkovPartition::build(Input in) {
  PartitionReport rep = validate(in);
  if (!rep.ok) {
    std::ostringstream os;
    os << "invalid partition:";
    for (const ValidationIssue& v : rep.issues) os << " [" << v.code << "] " << v.detail << ";";
    throw std::invalid_argument(os.str());
  }
  MarkovPartition p;
  p.lo_ = std::move(in.lo);
  p.hi_ = std::move(in.hi);
  p.explicit_points_ = std::move(in.explicit_points);
  std::sort(p.explicit_points_.begin(), p.explicit_points_.end());
  p.families_ = std::move(in.families);
  p.build_order();
  p.build_gaps();
  return p;
}

int MarkovPartition::family_index(const std::string& id) const {
  for (size_t i = 0; i < families_.size(); ++i)
    if (families_[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

// Does f place a member strictly inside (lo, hi)? Assumes f.alpha is not
// strictly inside (the caller rules that out first).
bool members_meet_open(const GeometricFamily& f, const Rational& lo, const Rational& hi) {
  if (f.from_below()) {
    if (f.alpha <= lo) return false;
    CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
    auto r = cs.first_reaching(lo, f.n0);
    long m = r ? *r : f.n0;
    if (f.value(m) == lo) ++m;
    return f.value(m) > lo && f.value(m) < hi;
  }
  if (f.alpha >= hi) return false;
  CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
  auto r = cs.first_reaching(hi, f.n0);
  long m = r ? *r : f.n0;
  if (f.value(m) == hi) ++m;
  return f.value(m) > lo && f.value(m) < hi;
}

}  // namespace

void MarkovPartition::build_order() {
  struct Group {
    Rational alpha;
    bool below;
    std::vector<int> fams;
  };
  std::vector<Group> groups;
  for (size_t i = 0; i < families_.size(); ++i) {
    const GeometricFamily& f = families_[i];
    bool placed = false;
    for (Group& g : groups)
      if (g.alpha == f.alpha && g.below == f.from_below()) {
        g.fams.push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    if (!placed) groups.push_back({f.alpha, f.from_below(), {static_cast<int>(i)}});
  }

  struct El {
    int fam;
    long idx;
    Rational value;
    Rational dist;
  };

  std::vector<std::pair<Rational, Ref>> points;
  for (const Rational& e : explicit_points_) points.push_back({e, Ref::explicit_pt(e)});

  for (const Group& g : groups) {
    const int k = static_cast<int>(g.fams.size());
    std::vector<El> merged;
    std::vector<long> next(k);
    for (int s = 0; s < k; ++s) next[s] = families_[g.fams[s]].n0;
    auto gen_until = [&](size_t need) {
      while (merged.size() < need) {
        int best = -1;
        Rational bd;
        for (int s = 0; s < k; ++s) {
          Rational d = families_[g.fams[s]].dist(next[s]);
          if (best < 0 || d > bd) {
            best = s;
            bd = d;
          } else if (d == bd) {
            throw std::logic_error("tied member distances survived clash validation");
          }
        }
        int fam = g.fams[best];
        merged.push_back({fam, next[best], families_[fam].value(next[best]), bd});
        ++next[best];
      }
    };
    auto periodic_at = [&](long p) {
      gen_until(static_cast<size_t>(p) + 2 * k);
      std::set<int> seen;
      for (int j = 0; j < k; ++j)
        if (!seen.insert(merged[p + j].fam).second) return false;
      for (int j = 0; j < k; ++j) {
        const El& a = merged[p + j];
        const El& b = merged[p + k + j];
        if (b.fam != a.fam || b.idx != a.idx + 1) return false;
      }
      return true;
    };

    long p = -1;
    for (long cand = 0; cand < kPeriodScanCap; ++cand)
      if (periodic_at(cand)) {
        p = cand;
        break;
      }
    if (p < 0) throw std::logic_error("member interleaving never became periodic");

    // The tail territory (outermost period member, alpha) must be free of
    // foreign partition points so gaps inside it follow the cyclic template;
    // advance whole periods until it is.
    for (int retry = 0;; ++retry) {
      if (retry > kTerritoryRetryCap) throw std::logic_error("tail territory never became clean");
      if (!periodic_at(p)) throw std::logic_error("periodic interleaving broke down");
      const Rational& edge = merged[p].value;
      const Rational& tlo = g.below ? edge : g.alpha;
      const Rational& thi = g.below ? g.alpha : edge;
      bool dirty = false;
      auto it = std::upper_bound(explicit_points_.begin(), explicit_points_.end(), tlo);
      if (it != explicit_points_.end() && *it < thi) dirty = true;
      for (size_t fi = 0; fi < families_.size() && !dirty; ++fi) {
        if (std::find(g.fams.begin(), g.fams.end(), static_cast<int>(fi)) != g.fams.end()) continue;
        const GeometricFamily& f = families_[fi];
        if (f.alpha > tlo && f.alpha < thi)
          dirty = true;
        else if (members_meet_open(f, tlo, thi))
          dirty = true;
      }
      if (!dirty) break;
      p += k;
    }

    OrderTail tail;
    tail.alpha = g.alpha;
    tail.from_below = g.below;
    long start_n = LONG_MAX;
    for (int j = 0; j < k; ++j) start_n = std::min(start_n, merged[p + j].idx);
    tail.start_n = start_n;
    for (int j = 0; j < k; ++j) tail.cycle.push_back({merged[p + j].fam, merged[p + j].idx - start_n});
    order_.tails.push_back(tail);

    for (int j = 0; j < k; ++j) {
      int fam = merged[p + j].fam;
      for (long m = families_[fam].n0; m < merged[p + j].idx; ++m)
        points.push_back({families_[fam].value(m), Ref::member(fam, m)});
    }
  }

  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i].first == points[i + 1].first)
      throw std::logic_error("duplicate concrete points survived validation");

  for (const auto& [v, r] : points) {
    OrderItem it;
    it.kind = OrderItem::Kind::Point;
    it.value = v;
    it.ref = r;
    order_.items.push_back(it);
  }
  for (size_t t = 0; t < order_.tails.size(); ++t) {
    const OrderTail& tail = order_.tails[t];
    auto pos = std::find_if(order_.items.begin(), order_.items.end(), [&](const OrderItem& it) {
      return it.kind == OrderItem::Kind::Point && it.ref.kind == Ref::Kind::Explicit &&
             it.value == tail.alpha;
    });
    if (pos == order_.items.end()) throw std::logic_error("tail limit is not an item");
    OrderItem ti;
    ti.kind = OrderItem::Kind::Tail;
    ti.value = tail.alpha;
    ti.tail = static_cast<int>(t);
    order_.items.insert(tail.from_below ? pos : pos + 1, ti);
  }
}

void MarkovPartition::build_gaps() {
  auto outermost = [&](const OrderTail& tail) {
    int fam = tail.cycle[0].first;
    long idx = tail.start_n + tail.cycle[0].second;
    return std::pair<Ref, Rational>(Ref::member(fam, idx), families_[fam].value(idx));
  };

  const auto& items = order_.items;
  for (size_t i = 0; i + 1 < items.size(); ++i) {
    const OrderItem& a = items[i];
    const OrderItem& b = items[i + 1];
    if (a.kind == OrderItem::Kind::Point && b.kind == OrderItem::Kind::Tail &&
        !order_.tails[b.tail].from_below && order_.tails[b.tail].alpha == a.value)
      continue;  // a tail from above starts at its limit
    if (a.kind == OrderItem::Kind::Tail && order_.tails[a.tail].from_below &&
        b.kind == OrderItem::Kind::Point && b.value == order_.tails[a.tail].alpha)
      continue;  // a tail from below ends at its limit
    GapDesc g;
    g.is_template = false;
    if (a.kind == OrderItem::Kind::Point) {
      g.left = a.ref;
      g.left_value = a.value;
    } else {
      auto [r, v] = outermost(order_.tails[a.tail]);
      g.left = r;
      g.left_value = v;
    }
    if (b.kind == OrderItem::Kind::Point) {
      g.right = b.ref;
      g.right_value = b.value;
    } else {
      auto [r, v] = outermost(order_.tails[b.tail]);
      g.right = r;
      g.right_value = v;
    }
    if (!(g.left_value < g.right_value)) throw std::logic_error("misordered concrete gap");
    prefix_gaps_.push_back(std::move(g));
  }

  for (size_t t = 0; t < order_.tails.size(); ++t) {
    const OrderTail& tail = order_.tails[t];
    const int k = static_cast<int>(tail.cycle.size());
    for (int j = 0; j < k; ++j) {
      GapDesc g;
      g.is_template = true;
      g.tail = static_cast<int>(t);
      g.pos = j;
      g.start_n = tail.start_n;
      if (tail.from_below) {
        g.sym_left = SymRef::member(tail.cycle[j].first, tail.cycle[j].second);
        g.sym_right = j + 1 < k ? SymRef::member(tail.cycle[j + 1].first, tail.cycle[j + 1].second)
                                : SymRef::member(tail.cycle[0].first, tail.cycle[0].second + 1);
      } else {
        if (j + 1 < k) {
          g.sym_left = SymRef::member(tail.cycle[j + 1].first, tail.cycle[j + 1].second);
          g.sym_right = SymRef::member(tail.cycle[j].first, tail.cycle[j].second);
        } else {
          g.sym_left = SymRef::member(tail.cycle[0].first, tail.cycle[0].second + 1);
          g.sym_right = SymRef::member(tail.cycle[k - 1].first, tail.cycle[k - 1].second);
        }
      }
      template_gaps_.push_back(std::move(g));
    }
  }
  for (size_t i = 0; i < template_gaps_.size(); ++i) {
    GapInstance inst = instantiate(static_cast<int>(i), template_gaps_[i].start_n);
    if (!(inst.left_value < inst.right_value)) throw std::logic_error("misordered template gap");
  }
}

Rational MarkovPartition::resolve(const Ref& r) const {
  if (r.kind == Ref::Kind::Member) return families_.at(r.family).value(r.index);
  return r.value;
}

GeoSeq MarkovPartition::seq(const SymRef& r) const {
  if (r.kind != SymRef::Kind::Member) return GeoSeq(r.value);
  const GeometricFamily& f = families_.at(r.family);
  return GeoSeq(f.alpha, f.beta * f.rho.pow(r.offset), f.rho);
}

GapInstance MarkovPartition::instantiate(int template_gap_index, long n) const {
  const GapDesc& g = template_gaps_.at(template_gap_index);
  if (n < g.start_n) throw std::invalid_argument("template gap index below its start");
  GapInstance inst;
  inst.is_template = true;
  inst.gap_index = template_gap_index;
  inst.n = n;
  inst.left = g.sym_left.at(n);
  inst.right = g.sym_right.at(n);
  inst.left_value = resolve(inst.left);
  inst.right_value = resolve(inst.right);
  return inst;
}

std::optional<Ref> MarkovPartition::classify_point(const Rational& t) const {
  if (std::binary_search(explicit_points_.begin(), explicit_points_.end(), t))
    return Ref::explicit_pt(t);
  for (size_t i = 0; i < families_.size(); ++i)
    if (auto n = member_index_of(families_[i], t)) return Ref::member(static_cast<int>(i), *n);
  return std::nullopt;
}

Locate MarkovPartition::locate(const Rational& t) const {
  Locate res;
  if (t < lo_ || t > hi_) {
    res.kind = Locate::Kind::Outside;
    return res;
  }
  if (auto r = classify_point(t)) {
    res.kind = r->kind == Ref::Kind::Explicit ? Locate::Kind::ExplicitPoint : Locate::Kind::FamilyMember;
    res.point = *r;
    return res;
  }
  for (size_t i = 0; i < prefix_gaps_.size(); ++i) {
    const GapDesc& g = prefix_gaps_[i];
    if (g.left_value < t && t < g.right_value) {
      res.kind = Locate::Kind::InGap;
      res.gap = {false, static_cast<int>(i), 0, g.left, g.right, g.left_value, g.right_value};
      return res;
    }
  }
  for (size_t ti = 0; ti < order_.tails.size(); ++ti) {
    const OrderTail& tail = order_.tails[ti];
    int fam0 = tail.cycle[0].first;
    Rational edge = families_[fam0].value(tail.start_n + tail.cycle[0].second);
    bool inside = tail.from_below ? (edge < t && t < tail.alpha) : (tail.alpha < t && t < edge);
    if (!inside) continue;
    long n_lo = LONG_MAX;
    for (const auto& [fam, off] : tail.cycle) {
      const GeometricFamily& f = families_[fam];
      CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta * f.rho.pow(off), f.rho);
      auto r = cs.first_reaching(t, tail.start_n);
      n_lo = std::min(n_lo, r ? *r : tail.start_n);
    }
    for (long n = std::max(tail.start_n, n_lo - 2); n <= n_lo + 2; ++n) {
      for (size_t gi = 0; gi < template_gaps_.size(); ++gi) {
        if (template_gaps_[gi].tail != static_cast<int>(ti)) continue;
        GapInstance inst = instantiate(static_cast<int>(gi), n);
        if (inst.left_value < t && t < inst.right_value) {
          res.kind = Locate::Kind::InGap;
          res.gap = inst;
          return res;
        }
      }
    }
    throw std::logic_error("point inside tail territory missed every template gap");
  }
  throw std::logic_error("locate found neither point nor gap");
}

std::vector<Rational> MarkovPartition::derived_set() const {
  std::vector<Rational> out;
  for (const GeometricFamily& f : families_) out.push_back(f.alpha);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MarkovPartition::accumulates_from_below(const Rational& a) const {
  for (const GeometricFamily& f : families_)
    if (f.from_below() && f.alpha == a) return true;
  return false;
}

bool MarkovPartition::accumulates_from_above(const Rational& a) const {
  for (const GeometricFamily& f : families_)
    if (!f.from_below() && f.alpha == a) return true;
  return false;
}

std::vector<Rational> MarkovPartition::materialize_points(long depth) const {
  std::vector<Rational> out;
  for (const auto& [v, r] : materialize_refs(depth)) out.push_back(v);
  return out;
}

std::vector<std::pair<Rational, Ref>> MarkovPartition::materialize_refs(long depth) const {
  std::vector<std::pair<Rational, Ref>> out;
  for (const Rational& e : explicit_points_) out.push_back({e, Ref::explicit_pt(e)});
  for (size_t i = 0; i < families_.size(); ++i)
    for (long n = families_[i].n0; n <= depth; ++n)
      out.push_back({families_[i].value(n), Ref::member(static_cast<int>(i), n)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::optional<Rational> MarkovPartition::clearance_below(const Rational& a) const {
  if (a <= lo_) return std::nullopt;
  if (accumulates_from_below(a)) return std::nullopt;
  Rational best = lo_;
  auto it = std::lower_bound(explicit_points_.begin(), explicit_points_.end(), a);
  if (it != explicit_points_.begin()) best = max(best, *(it - 1));
  for (const GeometricFamily& f : families_) {
    if (f.from_below()) {
      if (f.alpha <= a) continue;  // members sit beyond alpha, alpha itself is explicit
      CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
      auto r = cs.first_reaching(a, f.n0);
      long p = r ? *r : f.n0;
      if (p - 1 >= f.n0) best = max(best, f.value(p - 1));
    } else {
      if (f.alpha >= a) continue;
      CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
      auto r = cs.first_reaching(a, f.n0);
      if (!r) continue;
      long p = *r;
      if (f.value(p) == a) ++p;
      best = max(best, f.value(p));
    }
  }
  return a - best;
}

std::optional<Rational> MarkovPartition::clearance_above(const Rational& a) const {
  if (a >= hi_) return std::nullopt;
  if (accumulates_from_above(a)) return std::nullopt;
  Rational best = hi_;
  auto it = std::upper_bound(explicit_points_.begin(), explicit_points_.end(), a);
  if (it != explicit_points_.end()) best = min(best, *it);
  for (const GeometricFamily& f : families_) {
    if (!f.from_below()) {
      if (f.alpha >= a) continue;
      // members descend toward alpha < a; the first one at or below a is the
      // nearest above-structure only when some member exceeds a
      CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
      if (f.value(f.n0) <= a) continue;
      auto r = cs.first_reaching(a, f.n0);
      long p = r ? *r : f.n0;
      // value(p) <= a, so the previous member is the nearest one above a
      if (p - 1 >= f.n0) best = min(best, f.value(p - 1));
    } else {
      if (f.alpha <= a) continue;
      CoordSeq cs = CoordSeq::geometric(f.alpha, f.beta, f.rho);
      auto r = cs.first_reaching(a, f.n0);
      long p = r ? *r : f.n0;
      if (f.value(p) == a) ++p;
      if (f.value(p) > a) best = min(best, f.value(p));
    }
  }
  return best - a;
}

}  // namespace cmif
