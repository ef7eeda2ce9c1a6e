#pragma once

#include <cstddef>
#include <vector>

#include "cmif/conjugacy.hpp"
#include "cmif/rational.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// Finite-depth stand-in for an inverse limit: a cloud of tuples
// (x_1, ..., x_n) with x_k in f_k(x_{k+1}) for every k < n, plus the
// sampling parameters the cloud was generated with. Tuples are sorted
// lexicographically; the cloud is plain data and never mutated after
// construction.
struct DepthNApprox {
  size_t depth = 0;
  std::vector<std::vector<Rational>> tuples;
  Rational resolution;   // upper bound on the sampling step
  long truncation = 16;  // largest family index seeded
};

struct MembershipCheck {
  bool ok = true;
  size_t index = 0;  // first k (1-based) with x_k outside f_k(x_{k+1})

  static MembershipCheck pass() { return {}; }
  static MembershipCheck fail(size_t k) { return {false, k}; }
};

// Check x_k in f_k(x_{k+1}) coordinate by coordinate, exactly. fs lists the
// bonding maps f_1, ..., f_{n-1}; a single entry is reused at every level.
// A coordinate outside the relevant domain simply fails (fibers there are
// empty). Throws std::invalid_argument when the tuple has fewer than two
// coordinates or fs cannot cover every adjacent pair.
MembershipCheck membership_check(const std::vector<SetValuedFn>& fs,
                                 const std::vector<Rational>& x);

// Sample the depth-n membership set by backward propagation: seed the last
// coordinate on a mesh (partition points with family index <= truncation,
// plus a mesh across each gap at step <= resolution, midpoint included),
// then extend tuples leftward, sampling each interval fiber at step
// <= resolution including both endpoints. Mesh piece counts are powers of
// two, so halving the resolution refines every mesh in place and the coarse
// cloud embeds in the fine one. Every emitted tuple satisfies the membership
// relation by construction. Throws std::invalid_argument on n < 2, a
// nonpositive resolution, or a bonding list that cannot cover n levels.
DepthNApprox approximate(const std::vector<SetValuedFn>& fs, size_t n,
                         const Rational& resolution, long truncation = 16);

// Exact Hausdorff distance between two clouds of equal depth under the
// maximum metric on tuples. Throws std::invalid_argument when depths differ,
// a tuple has the wrong length, or either cloud is empty.
Rational hausdorff_distance(const DepthNApprox& a, const DepthNApprox& b);

struct TransportCheck {
  bool ok = true;
  std::vector<Rational> witness;  // offending source tuple
  std::vector<Rational> image;    // its transported image
  size_t index = 0;               // failing position in the image

  static TransportCheck pass() { return {}; }
};

// Push every tuple of the cloud through the chain coordinatewise and check
// the images against the bonding maps gs. Exact: a chain built from a
// genuine conjugacy passes with no tolerance. Throws std::invalid_argument
// when the chain has fewer maps than the cloud has coordinates.
TransportCheck transport_test(const HomeoChain& chain, const DepthNApprox& approx,
                              const std::vector<SetValuedFn>& gs);

}  // namespace cmif
