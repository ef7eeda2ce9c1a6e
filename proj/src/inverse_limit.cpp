#include "cmif/inverse_limit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace cmif {

namespace {

// Smallest power-of-two piece count (at least floor_m) whose step across
// `width` is <= res. Power-of-two counts nest: the mesh for res/2 contains
// the mesh for res.
long mesh_pieces(const Rational& width, const Rational& res, long floor_m) {
  long m = floor_m;
  while (width > res * Rational(m)) m *= 2;
  return m;
}

// Last-coordinate seeds: materialized partition points (domain ends for a
// graph) joined by gap meshes. Gap meshes use floor 2 so the midpoint is
// always present.
std::vector<Rational> seed_mesh(const SetValuedFn& f, const Rational& res, long trunc) {
  std::set<Rational> pts;
  pts.insert(f.dom_lo());
  pts.insert(f.dom_hi());
  if (f.is_generated())
    for (const Rational& p : f.generated().part.materialize_points(trunc)) pts.insert(p);

  std::vector<Rational> anchors(pts.begin(), pts.end());
  for (size_t i = 0; i + 1 < anchors.size(); ++i) {
    const Rational& u = anchors[i];
    const Rational& v = anchors[i + 1];
    long m = mesh_pieces(v - u, res, 2);
    for (long j = 1; j < m; ++j) pts.insert(u + (v - u) * Rational(j) / Rational(m));
  }
  return {pts.begin(), pts.end()};
}

// Sample points of f(x): isolated values as they are, interval components
// meshed at step <= res with both endpoints. Candidates are filtered through
// the exact membership test, which drops removed graph endpoints.
std::vector<Rational> fiber_samples(const SetValuedFn& f, const Rational& x,
                                    const Rational& res) {
  GraphFiber fib = f.evaluate(x);
  std::vector<Rational> out;
  auto keep = [&](const Rational& y) {
    if (f.contains(x, y)) out.push_back(y);
  };
  for (const auto& [a, b] : fib.closure.components()) {
    if (a == b) {
      keep(a);
      continue;
    }
    long m = mesh_pieces(b - a, res, 1);
    for (long j = 0; j <= m; ++j) keep(a + (b - a) * Rational(j) / Rational(m));
  }
  return out;
}

const SetValuedFn& level_map(const std::vector<SetValuedFn>& fs, size_t k) {
  return fs.size() == 1 ? fs[0] : fs[k - 1];
}

void check_levels(const std::vector<SetValuedFn>& fs, size_t levels) {
  if (fs.empty()) throw std::invalid_argument("at least one bonding map required");
  if (fs.size() != 1 && fs.size() < levels)
    throw std::invalid_argument("one bonding map per adjacent pair required");
}

Rational tuple_distance(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  Rational d(0);
  for (size_t i = 0; i < p.size(); ++i) d = max(d, (p[i] - q[i]).abs());
  return d;
}

}  // namespace

MembershipCheck membership_check(const std::vector<SetValuedFn>& fs,
                                 const std::vector<Rational>& x) {
  if (x.size() < 2) throw std::invalid_argument("tuple must have at least two coordinates");
  check_levels(fs, x.size() - 1);
  for (size_t k = 1; k < x.size(); ++k)
    if (!level_map(fs, k).contains(x[k], x[k - 1])) return MembershipCheck::fail(k);
  return MembershipCheck::pass();
}

DepthNApprox approximate(const std::vector<SetValuedFn>& fs, size_t n,
                         const Rational& resolution, long truncation) {
  if (n < 2) throw std::invalid_argument("depth must be at least 2");
  if (!(resolution > Rational(0))) throw std::invalid_argument("resolution must be positive");
  check_levels(fs, n - 1);

  // Tuples grow right to left; partial[j] holds (x_n, ..., x_{k+1}).
  std::vector<std::vector<Rational>> partial;
  for (const Rational& s : seed_mesh(level_map(fs, n - 1), resolution, truncation))
    partial.push_back({s});
  for (size_t k = n - 1; k >= 1; --k) {
    const SetValuedFn& f = level_map(fs, k);
    std::vector<std::vector<Rational>> extended;
    for (const auto& t : partial)
      for (const Rational& y : fiber_samples(f, t.back(), resolution)) {
        extended.push_back(t);
        extended.back().push_back(y);
      }
    partial = std::move(extended);
  }

  DepthNApprox out;
  out.depth = n;
  out.resolution = resolution;
  out.truncation = truncation;
  out.tuples.reserve(partial.size());
  for (auto& t : partial) {
    std::reverse(t.begin(), t.end());
    out.tuples.push_back(std::move(t));
  }
  std::sort(out.tuples.begin(), out.tuples.end());
  return out;
}

Rational hausdorff_distance(const DepthNApprox& a, const DepthNApprox& b) {
  if (a.depth != b.depth) throw std::invalid_argument("clouds have different depths");
  if (a.tuples.empty() || b.tuples.empty())
    throw std::invalid_argument("empty cloud has no distance");
  for (const auto* cloud : {&a, &b})
    for (const auto& t : cloud->tuples)
      if (t.size() != cloud->depth) throw std::invalid_argument("tuple length is off depth");

  auto directed = [](const DepthNApprox& from, const DepthNApprox& to) {
    Rational worst(0);
    for (const auto& p : from.tuples) {
      Rational best = tuple_distance(p, to.tuples.front());
      for (size_t i = 1; i < to.tuples.size() && best > Rational(0); ++i)
        best = min(best, tuple_distance(p, to.tuples[i]));
      worst = max(worst, best);
    }
    return worst;
  };
  return max(directed(a, b), directed(b, a));
}

TransportCheck transport_test(const HomeoChain& chain, const DepthNApprox& approx,
                              const std::vector<SetValuedFn>& gs) {
  if (chain.maps.size() < approx.depth)
    throw std::invalid_argument("chain has fewer maps than the cloud has coordinates");
  for (const auto& t : approx.tuples) {
    std::vector<Rational> image = apply_H(chain, t, approx.depth);
    MembershipCheck mc = membership_check(gs, image);
    if (!mc.ok) return {false, t, std::move(image), mc.index};
  }
  return TransportCheck::pass();
}

}  // namespace cmif
