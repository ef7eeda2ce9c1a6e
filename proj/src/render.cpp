#include "cmif/render.hpp"

#include <stdexcept>
#include <string>

#include "cmif/partition.hpp"

namespace cmif {

namespace {

constexpr long kMargin = 48;

// Fixed six decimals, rounded half up, from the exact value.
std::string svg_coord(const Rational& v) {
  Rational scaled = v * Rational(1000000) + Rational(1, 2);
  Rational fl = scaled.floor();
  std::string digits = fl.abs().num_str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  digits.insert(digits.size() - 6, ".");
  return fl.sign() < 0 ? "-" + digits : digits;
}

struct Frame {
  Rational dlo, dhi, clo, chi;
  Rational sx, sy;
  long width = 0, height = 0;

  std::string x(const Rational& v) const { return svg_coord(Rational(kMargin) + (v - dlo) * sx); }
  std::string y(const Rational& v) const {
    return svg_coord(Rational(height - kMargin) - (v - clo) * sy);
  }
};

void add_line(std::string& out, const Frame& fr, const Rational& x1, const Rational& y1,
              const Rational& x2, const Rational& y2) {
  out += "  <line x1=\"" + fr.x(x1) + "\" y1=\"" + fr.y(y1) + "\" x2=\"" + fr.x(x2) + "\" y2=\"" +
         fr.y(y2) + "\" stroke=\"#1b6ef3\" stroke-width=\"1.5\"/>\n";
}

void add_box(std::string& out, const Frame& fr, const Box& b) {
  out += "  <rect x=\"" + fr.x(b.x1) + "\" y=\"" + fr.y(b.y2) + "\" width=\"" +
         svg_coord((b.x2 - b.x1) * fr.sx) + "\" height=\"" + svg_coord((b.y2 - b.y1) * fr.sy) +
         "\" fill=\"#1b6ef3\" fill-opacity=\"0.25\"/>\n";
}

void add_label(std::string& out, const std::string& x, const std::string& y, bool anchor_end,
               const std::string& text) {
  out += "  <text x=\"" + x + "\" y=\"" + y + "\" font-family=\"monospace\" font-size=\"12\"" +
         (anchor_end ? " text-anchor=\"end\"" : "") + " fill=\"#444\">" + text + "</text>\n";
}

void draw_graph(std::string& out, const Frame& fr, const FiniteGraph& g0, long trunc) {
  FiniteGraph g = truncate_graph(g0, trunc);
  for (const Box& b : g.boxes) add_box(out, fr, b);
  for (const Segment& s : g.segments) add_line(out, fr, s.x1, s.y1, s.x2, s.y2);
}

void draw_generated(std::string& out, const Frame& fr, const GeneratedFn& f, long trunc) {
  const MarkovPartition& P = f.part;
  for (size_t i = 0; i < P.prefix_gaps().size(); ++i) {
    const GapDesc& g = P.prefix_gaps()[i];
    GapInstance inst{false, static_cast<int>(i), 0, g.left, g.right, g.left_value, g.right_value};
    auto [l, r] = f.rule_images(inst);
    add_line(out, fr, inst.left_value, l, inst.right_value, r);
  }
  for (size_t i = 0; i < P.template_gaps().size(); ++i)
    for (long n = P.template_gaps()[i].start_n; n <= trunc; ++n) {
      GapInstance inst = P.instantiate(static_cast<int>(i), n);
      auto [l, r] = f.rule_images(inst);
      add_line(out, fr, inst.left_value, l, inst.right_value, r);
    }
  for (const auto& [x, ref] : P.materialize_refs(trunc)) {
    auto [u, v] = f.value_interval(ref);
    if (u < v) add_line(out, fr, x, u, x, v);
  }
}

}  // namespace

std::string render_svg(const SetValuedFn& f, const RenderOptions& opts) {
  if (opts.truncation < 1) throw std::invalid_argument("truncation must be positive");
  if (opts.width <= 2 * kMargin || opts.height <= 2 * kMargin)
    throw std::invalid_argument("image too small for its margin");

  Frame fr;
  fr.dlo = f.dom_lo();
  fr.dhi = f.dom_hi();
  fr.clo = f.cod_lo();
  fr.chi = f.cod_hi();
  fr.width = opts.width;
  fr.height = opts.height;
  fr.sx = Rational(opts.width - 2 * kMargin) / (fr.dhi - fr.dlo);
  fr.sy = Rational(opts.height - 2 * kMargin) / (fr.chi - fr.clo);

  std::string w = std::to_string(opts.width), h = std::to_string(opts.height);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
                    "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  out += "  <path d=\"M " + fr.x(fr.dlo) + " " + fr.y(fr.chi) + " L " + fr.x(fr.dhi) + " " +
         fr.y(fr.chi) + " L " + fr.x(fr.dhi) + " " + fr.y(fr.clo) + " L " + fr.x(fr.dlo) + " " +
         fr.y(fr.clo) + " Z\" fill=\"none\" stroke=\"#888\"/>\n";

  if (f.is_graph())
    draw_graph(out, fr, f.graph(), opts.truncation);
  else
    draw_generated(out, fr, f.generated(), opts.truncation);

  std::string below = svg_coord(Rational(opts.height - kMargin + 16));
  std::string left = svg_coord(Rational(kMargin - 8));
  add_label(out, fr.x(fr.dlo), below, false, fr.dlo.str());
  add_label(out, fr.x(fr.dhi), below, true, fr.dhi.str());
  add_label(out, left, fr.y(fr.clo), true, fr.clo.str());
  add_label(out, left, fr.y(fr.chi), true, fr.chi.str());
  out += "</svg>\n";
  return out;
}

}  // namespace cmif
