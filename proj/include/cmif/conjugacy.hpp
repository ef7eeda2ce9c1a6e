#pragma once

#include <string>
#include <vector>

#include "cmif/pattern.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// One affine piece of a gap homeomorphism: [lo,hi] -> [img_lo,img_hi],
// increasing, endpoints included. Pieces meet only at shared endpoints.
struct HomeoPiece {
  Rational lo, hi;
  Rational img_lo, img_hi;

  Rational slope() const { return (img_hi - img_lo) / (hi - lo); }
  Rational at(const Rational& t) const {
    return img_lo + (t - lo) * (img_hi - img_lo) / (hi - lo);
  }
  Rational inverse_at(const Rational& y) const {
    return lo + (y - img_lo) * (hi - lo) / (img_hi - img_lo);
  }
};

// Increasing homeomorphism of the source interval onto the target interval
// that agrees with a pattern map on the source partition. Off the partition
// it is piecewise affine: finitely many stored pieces cover the prefix gaps
// and the early template instances, and every template instance with index
// n >= template_start(i) carries the canonical piece, the affine map of the
// instance onto the tau images of its endpoints. That piece is computed on
// demand, which is what lets one object cover infinitely many gaps.
class PiecewiseHomeo {
 public:
  PiecewiseHomeo(PatternMap tau, std::vector<HomeoPiece> concrete,
                 std::vector<long> template_starts);

  const PatternMap& tau() const { return tau_; }
  const PatternMap& tau_inverse() const { return tau_inv_; }
  const MarkovPartition& domain() const { return tau_.source; }
  const MarkovPartition& codomain() const { return tau_.target; }
  const std::vector<HomeoPiece>& concrete_pieces() const { return concrete_; }
  long template_start(int template_gap_index) const;

  // Both throw std::out_of_range off the closed domain / codomain interval.
  Rational apply(const Rational& t) const;
  Rational apply_inverse(const Rational& y) const;

 private:
  PatternMap tau_;
  PatternMap tau_inv_;
  std::vector<HomeoPiece> concrete_;
  std::vector<long> tmpl_start_;
};

// Structural audit: pieces tile exactly the concrete gaps (prefix gaps plus
// template instances below their start), increase strictly, chain
// continuously, and hit the tau images at every gap end.
PartitionReport verify_homeo(const PiecewiseHomeo& h);

// First link of a conjugating chain: the canonical piece on every gap.
// Throws std::invalid_argument when the pattern map fails validation.
PiecewiseHomeo build_h1(const PatternMap& tau);

// Next link: the homeomorphism h' with h' = tau on the partition and, on
// each gap (a,a'), g-circ-h' = h-circ-f as single valued maps of the gap.
// Supported shapes, per gap:
//   - the image interval of the gap is again a single gap (then h' is the
//     canonical piece there),
//   - h is affine across the image interval (same),
//   - the image interval contains finitely many partition points and piece
//     boundaries of h (then the gap is subdivided at their preimages).
// A gap whose image meets infinitely many pieces of h non-affinely has no
// finite description here; that raises std::logic_error. Mismatched data
// (wrong partitions, image gaps that do not correspond under tau) raises
// std::invalid_argument.
PiecewiseHomeo lift_h(const PiecewiseHomeo& h, const GeneratedFn& f, const GeneratedFn& g,
                      const PatternMap& tau);

struct CommuteCheck {
  bool ok = true;
  Rational at;      // source point witnessing the failure
  std::string why;

  static CommuteCheck pass() { return {}; }
  static CommuteCheck fail(Rational at, std::string why) {
    CommuteCheck c;
    c.ok = false;
    c.at = std::move(at);
    c.why = std::move(why);
    return c;
  }
};

// Does g-circ-h_next match h-circ-f everywhere on the source interval?
// Checked exactly: concrete points and gap subdivisions by evaluation,
// template tails by sequence identities.
CommuteCheck verify_commuting(const PiecewiseHomeo& h, const GeneratedFn& f,
                              const GeneratedFn& g, const PiecewiseHomeo& h_next);

// h_1, ..., h_{m+1} with every square verified. fs and gs hold either one
// function reused at every level or at least m functions f_1, ..., f_m.
struct HomeoChain {
  std::vector<PiecewiseHomeo> maps;  // maps[i] is h_{i+1}
  std::vector<GeneratedFn> fs, gs;
  PatternMap tau;

  const GeneratedFn& f_at(size_t i) const;  // 1-based level
  const GeneratedFn& g_at(size_t i) const;
};

// Builds h_1 and m lifted links, verifying the pattern relation per level
// and every commuting square. Throws std::invalid_argument on mismatched
// input (lengths, partitions, a level failing the pattern relation) and
// std::logic_error when a lift is unsupported or a built square fails.
HomeoChain build_chain(const std::vector<GeneratedFn>& fs, const std::vector<GeneratedFn>& gs,
                       const PatternMap& tau, size_t m);

// Coordinatewise image (h_1(x_1), ..., h_n(x_n)). n must equal the tuple
// length and not exceed the chain length (std::invalid_argument otherwise);
// each coordinate must lie in the matching domain (std::out_of_range).
std::vector<Rational> apply_H(const HomeoChain& chain, const std::vector<Rational>& xs, size_t n);

}  // namespace cmif
