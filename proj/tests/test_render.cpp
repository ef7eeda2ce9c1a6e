#include "cmif/render.hpp"

#include <stdexcept>
#include <string>

#include "common/fixtures.hpp"
#include "doctest.h"

using namespace cmif;
using fixtures::r;

namespace {

size_t count(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("the identity renders as its frame, labels, and one diagonal") {
  std::string svg = render_svg(SetValuedFn(fixtures::identity_fn()));
  CHECK(count(svg, "<line ") == 1);
  CHECK(count(svg, "<rect ") == 0);
  CHECK(count(svg, "<path ") == 1);
  CHECK(count(svg, "<text ") == 4);
  CHECK(svg.starts_with(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
      "viewBox=\"0 0 640 480\">\n"));
  CHECK(svg.ends_with("</svg>\n"));
  // Margin 48 on a 640x480 canvas puts the unit square at [48,592]x[48,432],
  // y flipped, every coordinate printed with six decimals.
  CHECK(svg.find("<line x1=\"48.000000\" y1=\"432.000000\" x2=\"592.000000\" y2=\"48.000000\"") !=
        std::string::npos);
  CHECK(svg.find("M 48.000000 48.000000 L 592.000000 48.000000 L 592.000000 432.000000 "
                 "L 48.000000 432.000000 Z") != std::string::npos);
  CHECK(count(svg, ">0/1</text>") == 2);
  CHECK(count(svg, ">1/1</text>") == 2);
}

TEST_CASE("boxes become rects and the frame does not") {
  std::string svg = render_svg(SetValuedFn(fixtures::open_box_graph()));
  CHECK(count(svg, "<rect ") == 1);
  CHECK(count(svg, "<line ") == 1);
  // Half-width box over the full height: 272 wide, 384 tall.
  CHECK(svg.find("<rect x=\"48.000000\" y=\"48.000000\" width=\"272.000000\" "
                 "height=\"384.000000\"") != std::string::npos);
}

TEST_CASE("family segments are drawn up to the truncation index") {
  FiniteGraph g = fixtures::harmonic_rungs_graph();
  std::string svg = render_svg(SetValuedFn(g), {640, 480, 5});
  // Two fixed segments plus one rung per index 1..5.
  CHECK(count(svg, "<line ") == 7);
  // First rung ends at x = 1/6: 48 + 544/6 rounds half up to 138.666667.
  CHECK(svg.find("x2=\"138.666667\"") != std::string::npos);

  CHECK(count(render_svg(SetValuedFn(g), {640, 480, 9}), "<line ") == 11);
}

TEST_CASE("generated functions draw one chord per materialized gap") {
  SetValuedFn f(fixtures::bennet_fn());
  // One prefix gap, two template rules with four instances each, no
  // nondegenerate value intervals.
  CHECK(count(render_svg(f, {640, 480, 4}), "<line ") == 9);
  CHECK(count(render_svg(f, {640, 480, 6}), "<line ") == 13);

  // Every materialized point of this one carries a full vertical fiber.
  SetValuedFn full(fixtures::two_tails_full_fn());
  std::string svg = render_svg(full, {640, 480, 3});
  // Gap chords: one prefix and two templates at indices 1..3; verticals: two
  // explicit points and three members per family.
  CHECK(count(svg, "<line ") == 7 + 8);
}

TEST_CASE("rendering is deterministic and sized by its options") {
  SetValuedFn f(fixtures::harmonic_rungs_complete_graph());
  std::string a = render_svg(f, {800, 600, 6});
  std::string b = render_svg(f, {800, 600, 6});
  CHECK(a == b);
  CHECK(a.find("viewBox=\"0 0 800 600\"") != std::string::npos);

  CHECK_THROWS_AS(render_svg(f, {640, 480, 0}), std::invalid_argument);
  CHECK_THROWS_AS(render_svg(f, {96, 480, 8}), std::invalid_argument);
  CHECK_THROWS_AS(render_svg(f, {640, 80, 8}), std::invalid_argument);
}
