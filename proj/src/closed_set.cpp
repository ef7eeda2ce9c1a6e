#include "cmif/closed_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmif {

ClosedSet1D ClosedSet1D::singleton(Rational v) {
  ClosedSet1D s;
  s.comps_.push_back({v, v});
  return s;
}

ClosedSet1D ClosedSet1D::interval(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  ClosedSet1D s;
  s.comps_.push_back({std::move(lo), std::move(hi)});
  return s;
}

ClosedSet1D ClosedSet1D::from_intervals(std::vector<std::pair<Rational, Rational>> parts) {
  for (auto& p : parts)
    if (p.second < p.first) std::swap(p.first, p.second);
  std::sort(parts.begin(), parts.end());
  ClosedSet1D s;
  for (auto& p : parts) {
    if (!s.comps_.empty() && p.first <= s.comps_.back().second) {
      if (p.second > s.comps_.back().second) s.comps_.back().second = std::move(p.second);
    } else {
      s.comps_.push_back(std::move(p));
    }
  }
  return s;
}

bool ClosedSet1D::contains(const Rational& v) const {
  auto it = std::upper_bound(comps_.begin(), comps_.end(), v,
                             [](const Rational& x, const auto& c) { return x < c.first; });
  if (it == comps_.begin()) return false;
  --it;
  return v <= it->second;
}

bool ClosedSet1D::subset_of(const ClosedSet1D& other) const {
  for (const auto& c : comps_) {
    auto it = std::upper_bound(other.comps_.begin(), other.comps_.end(), c.first,
                               [](const Rational& x, const auto& d) { return x < d.first; });
    if (it == other.comps_.begin()) return false;
    --it;
    if (c.first > it->second || c.second > it->second) return false;
  }
  return true;
}

ClosedSet1D ClosedSet1D::union_with(const ClosedSet1D& other) const {
  std::vector<std::pair<Rational, Rational>> parts = comps_;
  parts.insert(parts.end(), other.comps_.begin(), other.comps_.end());
  return from_intervals(std::move(parts));
}

const Rational& ClosedSet1D::min() const {
  if (comps_.empty()) throw std::logic_error("min of empty set");
  return comps_.front().first;
}

const Rational& ClosedSet1D::max() const {
  if (comps_.empty()) throw std::logic_error("max of empty set");
  return comps_.back().second;
}

Rational ClosedSet1D::distance_to(const Rational& v) const {
  if (comps_.empty()) throw std::logic_error("distance to empty set");
  Rational best = (v - comps_.front().first).abs();
  for (const auto& c : comps_) {
    if (v >= c.first && v <= c.second) return Rational(0);
    best = cmif::min(best, cmif::min((v - c.first).abs(), (v - c.second).abs()));
  }
  return best;
}

std::string ClosedSet1D::str() const {
  if (comps_.empty()) return "{}";
  std::ostringstream os;
  bool first = true;
  for (const auto& c : comps_) {
    if (!first) os << " u ";
    first = false;
    if (c.first == c.second)
      os << "{" << c.first.str() << "}";
    else
      os << "[" << c.first.str() << ", " << c.second.str() << "]";
  }
  return os.str();
}

Rational hausdorff_1d(const ClosedSet1D& a, const ClosedSet1D& b) {
  if (a.is_empty() || b.is_empty()) throw std::logic_error("hausdorff distance needs nonempty sets");
  // sup_{x in a} d(x, b) is attained at a component endpoint of a or at a
  // midpoint of a gap of b that lies inside a.
  auto one_sided = [](const ClosedSet1D& from, const ClosedSet1D& to) {
    Rational best(0);
    for (const auto& c : from.components()) {
      best = cmif::max(best, to.distance_to(c.first));
      best = cmif::max(best, to.distance_to(c.second));
    }
    const auto& tc = to.components();
    for (size_t i = 0; i + 1 < tc.size(); ++i) {
      Rational mid = (tc[i].second + tc[i + 1].first) / Rational(2);
      if (from.contains(mid)) best = cmif::max(best, to.distance_to(mid));
    }
    return best;
  };
  return cmif::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace cmif
