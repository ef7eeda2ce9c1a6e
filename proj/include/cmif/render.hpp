#pragma once

// Deterministic SVG pictures of set-valued functions. Output depends only on
// the function and the options, so identical inputs give identical bytes.

#include <string>

#include "cmif/set_valued.hpp"

namespace cmif {

struct RenderOptions {
  long width = 640;
  long height = 480;
  long truncation = 8;  // last family index drawn
};

// Axis frame with corner labels plus the graph itself: one line per segment
// or gap chord, one rect per filled box, one vertical line per partition
// point whose value interval is nondegenerate. Coordinates are printed with
// exactly six decimals, rounded half up from the exact rational.
std::string render_svg(const SetValuedFn& f, const RenderOptions& opts = {});

}  // namespace cmif
