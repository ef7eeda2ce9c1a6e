#include "cmif/document.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cmif {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string text_of(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

long int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

bool bool_of(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected a boolean");
  return j.get<bool>();
}

Rational rat(const json& j, const std::string& where) {
  std::string s = text_of(j, where);
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument&) {
    fail(where, "\"" + s + "\" is not a rational \"p/q\"");
  }
}

// ---- point references ----

int family_of(const std::string& id, const MarkovPartition& part, const std::string& where) {
  int i = part.family_index(id);
  if (i < 0) fail(where, "unknown family \"" + id + "\"");
  return i;
}

// "explicit:p/q", "family:id[k]", "const:p/q"
Ref parse_ref(const std::string& s, const MarkovPartition& part, const std::string& where) {
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(where, "\"" + s + "\" has no reference prefix");
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "explicit") return Ref::explicit_pt(rat(json(rest), where));
  if (kind == "const") return Ref::constant(rat(json(rest), where));
  if (kind != "family") fail(where, "unknown reference kind \"" + kind + "\"");
  auto open = rest.find('[');
  if (open == std::string::npos || rest.back() != ']')
    fail(where, "\"" + s + "\" needs an index like family:id[3]");
  std::string id = rest.substr(0, open);
  std::string idx = rest.substr(open + 1, rest.size() - open - 2);
  long n = 0;
  try {
    size_t used = 0;
    n = std::stol(idx, &used);
    if (used != idx.size()) throw std::invalid_argument(idx);
  } catch (const std::logic_error&) {
    fail(where, "\"" + idx + "\" is not an index");
  }
  return Ref::member(family_of(id, part, where), n);
}

// "explicit:p/q", "family:id[n]", "family:id[n+2]", "family:id[n-2]", "const:p/q"
SymRef parse_symref(const std::string& s, const MarkovPartition& part, const std::string& where) {
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(where, "\"" + s + "\" has no reference prefix");
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "explicit") return SymRef::explicit_pt(rat(json(rest), where));
  if (kind == "const") return SymRef::constant(rat(json(rest), where));
  if (kind != "family") fail(where, "unknown reference kind \"" + kind + "\"");
  auto open = rest.find('[');
  if (open == std::string::npos || rest.back() != ']')
    fail(where, "\"" + s + "\" needs an offset like family:id[n+1]");
  std::string id = rest.substr(0, open);
  std::string off = rest.substr(open + 1, rest.size() - open - 2);
  if (off.empty() || off[0] != 'n')
    fail(where, "\"" + s + "\" must index by n, n+c, or n-c");
  long shift = 0;
  if (off.size() > 1) {
    try {
      size_t used = 0;
      shift = std::stol(off.substr(1), &used);
      if (used + 1 != off.size()) throw std::invalid_argument(off);
    } catch (const std::logic_error&) {
      fail(where, "\"" + off + "\" is not an offset");
    }
  }
  return SymRef::member(family_of(id, part, where), shift);
}

std::string ref_str(const Ref& r, const MarkovPartition& part) {
  switch (r.kind) {
    case Ref::Kind::Explicit:
      return "explicit:" + r.value.str();
    case Ref::Kind::Const:
      return "const:" + r.value.str();
    case Ref::Kind::Member:
      return "family:" + part.families().at(r.family).id + "[" + std::to_string(r.index) + "]";
  }
  throw std::logic_error("unreachable");
}

std::string symref_str(const SymRef& r, const MarkovPartition& part) {
  switch (r.kind) {
    case SymRef::Kind::Explicit:
      return "explicit:" + r.value.str();
    case SymRef::Kind::Const:
      return "const:" + r.value.str();
    case SymRef::Kind::Member: {
      std::string off = "n";
      if (r.offset > 0) off += "+" + std::to_string(r.offset);
      if (r.offset < 0) off += std::to_string(r.offset);
      return "family:" + part.families().at(r.family).id + "[" + off + "]";
    }
  }
  throw std::logic_error("unreachable");
}

// ---- coordinate sequences ----

json coordseq_to_json(const CoordSeq& s) {
  json j;
  switch (s.kind()) {
    case CoordSeq::Kind::Constant:
      j["kind"] = "constant";
      j["c"] = s.p0().str();
      break;
    case CoordSeq::Kind::LinFrac:
      j["kind"] = "lin-frac";
      j["a"] = s.p0().str();
      j["b"] = s.p1().str();
      j["c"] = s.p2().str();
      j["d"] = s.p3().str();
      break;
    case CoordSeq::Kind::Geometric:
      j["kind"] = "geometric";
      j["alpha"] = s.p0().str();
      j["beta"] = s.p1().str();
      j["rho"] = s.p2().str();
      break;
  }
  return j;
}

CoordSeq coordseq_from_json(const json& j, const std::string& where) {
  std::string kind = text_of(field(j, "kind", where), where + ".kind");
  if (kind == "constant") return CoordSeq::constant(rat(field(j, "c", where), where + ".c"));
  if (kind == "lin-frac")
    return CoordSeq::lin_frac(rat(field(j, "a", where), where + ".a"),
                              rat(field(j, "b", where), where + ".b"),
                              rat(field(j, "c", where), where + ".c"),
                              rat(field(j, "d", where), where + ".d"));
  if (kind == "geometric")
    return CoordSeq::geometric(rat(field(j, "alpha", where), where + ".alpha"),
                               rat(field(j, "beta", where), where + ".beta"),
                               rat(field(j, "rho", where), where + ".rho"));
  fail(where + ".kind", "unknown sequence kind \"" + kind + "\"");
}

// ---- representations ----

json graph_to_json(const FiniteGraph& g) {
  json rep;
  rep["kind"] = "finite-graph";
  rep["segments"] = json::array();
  for (const Segment& s : g.segments)
    rep["segments"].push_back({{"x1", s.x1.str()},
                               {"y1", s.y1.str()},
                               {"x2", s.x2.str()},
                               {"y2", s.y2.str()},
                               {"open1", s.open1},
                               {"open2", s.open2}});
  rep["boxes"] = json::array();
  for (const Box& b : g.boxes)
    rep["boxes"].push_back({{"x1", b.x1.str()},
                            {"x2", b.x2.str()},
                            {"y1", b.y1.str()},
                            {"y2", b.y2.str()},
                            {"open_left", b.open_left},
                            {"open_right", b.open_right},
                            {"open_bottom", b.open_bottom},
                            {"open_top", b.open_top}});
  rep["seg_families"] = json::array();
  for (const SegFamily& f : g.families)
    rep["seg_families"].push_back({{"x_start", coordseq_to_json(f.x_start)},
                                   {"x_end", coordseq_to_json(f.x_end)},
                                   {"y_start", f.y_start.str()},
                                   {"y_end", f.y_end.str()},
                                   {"n0", f.n0}});
  return rep;
}

FiniteGraph graph_from_json(const json& rep, const Rational& dom_lo, const Rational& dom_hi,
                            const Rational& cod_lo, const Rational& cod_hi,
                            const std::string& where) {
  FiniteGraph g;
  g.dom_lo = dom_lo;
  g.dom_hi = dom_hi;
  g.cod_lo = cod_lo;
  g.cod_hi = cod_hi;
  const json& segs = field(rep, "segments", where);
  if (!segs.is_array()) fail(where + ".segments", "expected an array");
  for (size_t i = 0; i < segs.size(); ++i) {
    std::string w = where + ".segments[" + std::to_string(i) + "]";
    const json& s = segs[i];
    g.segments.push_back({rat(field(s, "x1", w), w + ".x1"), rat(field(s, "y1", w), w + ".y1"),
                          rat(field(s, "x2", w), w + ".x2"), rat(field(s, "y2", w), w + ".y2"),
                          bool_of(field(s, "open1", w), w + ".open1"),
                          bool_of(field(s, "open2", w), w + ".open2")});
  }
  const json& boxes = field(rep, "boxes", where);
  if (!boxes.is_array()) fail(where + ".boxes", "expected an array");
  for (size_t i = 0; i < boxes.size(); ++i) {
    std::string w = where + ".boxes[" + std::to_string(i) + "]";
    const json& b = boxes[i];
    g.boxes.push_back({rat(field(b, "x1", w), w + ".x1"), rat(field(b, "x2", w), w + ".x2"),
                       rat(field(b, "y1", w), w + ".y1"), rat(field(b, "y2", w), w + ".y2"),
                       bool_of(field(b, "open_left", w), w + ".open_left"),
                       bool_of(field(b, "open_right", w), w + ".open_right"),
                       bool_of(field(b, "open_bottom", w), w + ".open_bottom"),
                       bool_of(field(b, "open_top", w), w + ".open_top")});
  }
  const json& fams = field(rep, "seg_families", where);
  if (!fams.is_array()) fail(where + ".seg_families", "expected an array");
  for (size_t i = 0; i < fams.size(); ++i) {
    std::string w = where + ".seg_families[" + std::to_string(i) + "]";
    const json& f = fams[i];
    SegFamily fam;
    fam.x_start = coordseq_from_json(field(f, "x_start", w), w + ".x_start");
    fam.x_end = coordseq_from_json(field(f, "x_end", w), w + ".x_end");
    fam.y_start = rat(field(f, "y_start", w), w + ".y_start");
    fam.y_end = rat(field(f, "y_end", w), w + ".y_end");
    fam.n0 = int_of(field(f, "n0", w), w + ".n0");
    g.families.push_back(std::move(fam));
  }
  return g;
}

json generated_to_json(const GeneratedFn& f) {
  const MarkovPartition& P = f.part;
  json rep;
  rep["kind"] = "generated";
  rep["values"] = json::object();
  for (const auto& [x, pair] : f.explicit_values)
    rep["values"][x.str()] = {ref_str(pair.first, P), ref_str(pair.second, P)};
  rep["family_values"] = json::array();
  for (const auto& [lo, hi] : f.family_values)
    rep["family_values"].push_back({symref_str(lo, P), symref_str(hi, P)});
  rep["prefix_rules"] = json::array();
  for (const GapRule& r : f.prefix_rules)
    rep["prefix_rules"].push_back({ref_str(r.left, P), ref_str(r.right, P)});
  rep["template_rules"] = json::array();
  for (const SymGapRule& r : f.template_rules)
    rep["template_rules"].push_back({symref_str(r.left, P), symref_str(r.right, P)});
  return rep;
}

std::pair<std::string, std::string> ref_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a pair");
  return {text_of(j[0], where + "[0]"), text_of(j[1], where + "[1]")};
}

GeneratedFn generated_from_json(const json& rep, MarkovPartition part, const Rational& cod_lo,
                                const Rational& cod_hi, const std::string& where) {
  GeneratedFn f(std::move(part));
  f.cod_lo = cod_lo;
  f.cod_hi = cod_hi;
  const json& values = field(rep, "values", where);
  if (!values.is_object()) fail(where + ".values", "expected an object");
  for (const auto& [key, val] : values.items()) {
    std::string w = where + ".values[\"" + key + "\"]";
    Rational x = rat(json(key), w);
    auto [lo, hi] = ref_pair(val, w);
    f.explicit_values[x] = {parse_ref(lo, f.part, w), parse_ref(hi, f.part, w)};
  }
  const json& famv = field(rep, "family_values", where);
  if (!famv.is_array()) fail(where + ".family_values", "expected an array");
  for (size_t i = 0; i < famv.size(); ++i) {
    std::string w = where + ".family_values[" + std::to_string(i) + "]";
    auto [lo, hi] = ref_pair(famv[i], w);
    f.family_values.push_back({parse_symref(lo, f.part, w), parse_symref(hi, f.part, w)});
  }
  const json& pre = field(rep, "prefix_rules", where);
  if (!pre.is_array()) fail(where + ".prefix_rules", "expected an array");
  for (size_t i = 0; i < pre.size(); ++i) {
    std::string w = where + ".prefix_rules[" + std::to_string(i) + "]";
    auto [l, r] = ref_pair(pre[i], w);
    f.prefix_rules.push_back({parse_ref(l, f.part, w), parse_ref(r, f.part, w)});
  }
  const json& tmpl = field(rep, "template_rules", where);
  if (!tmpl.is_array()) fail(where + ".template_rules", "expected an array");
  for (size_t i = 0; i < tmpl.size(); ++i) {
    std::string w = where + ".template_rules[" + std::to_string(i) + "]";
    auto [l, r] = ref_pair(tmpl[i], w);
    f.template_rules.push_back({parse_symref(l, f.part, w), parse_symref(r, f.part, w)});
  }
  f.check_shape();
  return f;
}

// ---- whole documents ----

json doc_to_json(const FunctionDocument& doc) {
  json j;
  j["format"] = "cmif-doc/1";
  j["meta"] = {{"name", doc.name}, {"provenance", doc.provenance}};
  j["domain"] = {{"lo", doc.fn.dom_lo().str()}, {"hi", doc.fn.dom_hi().str()}};
  j["codomain"] = {{"lo", doc.fn.cod_lo().str()}, {"hi", doc.fn.cod_hi().str()}};
  if (doc.fn.is_graph()) {
    j["representation"] = graph_to_json(doc.fn.graph());
    return j;
  }
  const GeneratedFn& f = doc.fn.generated();
  json part;
  part["explicit"] = json::array();
  for (const Rational& p : f.part.explicit_points()) part["explicit"].push_back(p.str());
  part["families"] = json::array();
  for (const GeometricFamily& fam : f.part.families())
    part["families"].push_back({{"id", fam.id},
                                {"alpha", fam.alpha.str()},
                                {"beta", fam.beta.str()},
                                {"rho", fam.rho.str()},
                                {"n0", fam.n0}});
  j["partition"] = std::move(part);
  j["representation"] = generated_to_json(f);
  return j;
}

FunctionDocument doc_from_json(const json& j, const std::string& where) {
  std::string fmt = text_of(field(j, "format", where), where + ".format");
  if (fmt != "cmif-doc/1") fail(where + ".format", "unsupported format \"" + fmt + "\"");

  std::string name, provenance;
  if (auto it = j.find("meta"); it != j.end()) {
    if (auto n = it->find("name"); n != it->end()) name = text_of(*n, where + ".meta.name");
    if (auto p = it->find("provenance"); p != it->end())
      provenance = text_of(*p, where + ".meta.provenance");
  }

  const json& dom = field(j, "domain", where);
  Rational dom_lo = rat(field(dom, "lo", where + ".domain"), where + ".domain.lo");
  Rational dom_hi = rat(field(dom, "hi", where + ".domain"), where + ".domain.hi");
  const json& cod = field(j, "codomain", where);
  Rational cod_lo = rat(field(cod, "lo", where + ".codomain"), where + ".codomain.lo");
  Rational cod_hi = rat(field(cod, "hi", where + ".codomain"), where + ".codomain.hi");
  if (!(dom_lo < dom_hi)) fail(where + ".domain", "ambient interval is empty");
  if (!(cod_lo < cod_hi)) fail(where + ".codomain", "ambient interval is empty");

  const json& rep = field(j, "representation", where);
  std::string kind = text_of(field(rep, "kind", where + ".representation"),
                             where + ".representation.kind");
  if (kind == "finite-graph") {
    FiniteGraph g =
        graph_from_json(rep, dom_lo, dom_hi, cod_lo, cod_hi, where + ".representation");
    return {std::move(name), std::move(provenance), SetValuedFn(std::move(g))};
  }
  if (kind != "generated")
    fail(where + ".representation.kind", "unknown representation \"" + kind + "\"");

  const json& pj = field(j, "partition", where);
  MarkovPartition::Input in;
  in.lo = dom_lo;
  in.hi = dom_hi;
  const json& expl = field(pj, "explicit", where + ".partition");
  if (!expl.is_array()) fail(where + ".partition.explicit", "expected an array");
  for (size_t i = 0; i < expl.size(); ++i)
    in.explicit_points.push_back(
        rat(expl[i], where + ".partition.explicit[" + std::to_string(i) + "]"));
  for (const Rational& end : {dom_lo, dom_hi})
    if (std::find(in.explicit_points.begin(), in.explicit_points.end(), end) ==
        in.explicit_points.end())
      fail(where + ".partition.explicit",
           "a partition must contain the ambient endpoint " + end.str());
  const json& fams = field(pj, "families", where + ".partition");
  if (!fams.is_array()) fail(where + ".partition.families", "expected an array");
  for (size_t i = 0; i < fams.size(); ++i) {
    std::string w = where + ".partition.families[" + std::to_string(i) + "]";
    const json& fj = fams[i];
    GeometricFamily fam;
    fam.id = text_of(field(fj, "id", w), w + ".id");
    fam.alpha = rat(field(fj, "alpha", w), w + ".alpha");
    fam.beta = rat(field(fj, "beta", w), w + ".beta");
    fam.rho = rat(field(fj, "rho", w), w + ".rho");
    fam.n0 = int_of(field(fj, "n0", w), w + ".n0");
    for (const GeometricFamily& prev : in.families)
      if (prev.id == fam.id) fail(w + ".id", "duplicate family id \"" + fam.id + "\"");
    in.families.push_back(std::move(fam));
  }

  MarkovPartition part = MarkovPartition::build(std::move(in));
  GeneratedFn f =
      generated_from_json(rep, std::move(part), cod_lo, cod_hi, where + ".representation");
  return {std::move(name), std::move(provenance), SetValuedFn(std::move(f))};
}

json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(where, e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- pattern maps ----

json tau_to_json(const PatternMap& t) {
  json j;
  j["format"] = "cmif-tau/1";
  j["explicit"] = json::object();
  for (const auto& [a, b] : t.explicit_map) j["explicit"][a.str()] = b.str();
  j["families"] = json::array();
  for (const FamilyMap& fm : t.family_map)
    j["families"].push_back({{"target", fm.target_family}, {"shift", fm.shift}});
  return j;
}

PatternMap tau_from_json(const json& j, const MarkovPartition& source,
                         const MarkovPartition& target, const std::string& where) {
  std::string fmt = text_of(field(j, "format", where), where + ".format");
  if (fmt != "cmif-tau/1") fail(where + ".format", "unsupported format \"" + fmt + "\"");
  PatternMap t{source, target, {}, {}};
  const json& expl = field(j, "explicit", where);
  if (!expl.is_object()) fail(where + ".explicit", "expected an object");
  for (const auto& [key, val] : expl.items()) {
    std::string w = where + ".explicit[\"" + key + "\"]";
    t.explicit_map.emplace(rat(json(key), w), rat(val, w));
  }
  const json& fams = field(j, "families", where);
  if (!fams.is_array()) fail(where + ".families", "expected an array");
  if (fams.size() != source.families().size())
    fail(where + ".families", "one entry per source family required");
  for (size_t i = 0; i < fams.size(); ++i) {
    std::string w = where + ".families[" + std::to_string(i) + "]";
    long tf = int_of(field(fams[i], "target", w), w + ".target");
    long shift = int_of(field(fams[i], "shift", w), w + ".shift");
    if (tf < 0 || tf >= static_cast<long>(target.families().size()))
      fail(w + ".target", "no target family " + std::to_string(tf));
    t.family_map.push_back({static_cast<int>(tf), shift});
  }
  return t;
}

}  // namespace

FunctionDocument parse_document(const std::string& text) {
  return doc_from_json(parse_text(text, "document"), "document");
}

std::string serialize_document(const FunctionDocument& doc) { return dump(doc_to_json(doc)); }

PatternMap parse_pattern_file(const std::string& text, const MarkovPartition& source,
                              const MarkovPartition& target) {
  return tau_from_json(parse_text(text, "pattern"), source, target, "pattern");
}

std::string serialize_pattern_file(const PatternMap& t) { return dump(tau_to_json(t)); }

ChainDocument parse_chain_file(const std::string& text) {
  json j = parse_text(text, "chain");
  std::string fmt = text_of(field(j, "format", "chain"), "chain.format");
  if (fmt != "cmif-chain/1") fail("chain.format", "unsupported format \"" + fmt + "\"");
  long depth = int_of(field(j, "depth", "chain"), "chain.depth");
  if (depth < 1) fail("chain.depth", "depth must be at least 1");
  FunctionDocument f = doc_from_json(field(j, "f", "chain"), "chain.f");
  FunctionDocument g = doc_from_json(field(j, "g", "chain"), "chain.g");
  if (!f.fn.is_generated() || !g.fn.is_generated())
    fail("chain", "chain functions must use the generated representation");
  PatternMap tau = tau_from_json(field(j, "tau", "chain"), f.fn.generated().part,
                                 g.fn.generated().part, "chain.tau");
  return {std::move(f), std::move(g), std::move(tau), depth};
}

std::string serialize_chain_file(const FunctionDocument& f, const FunctionDocument& g,
                                 const PatternMap& tau, long depth) {
  if (!f.fn.is_generated() || !g.fn.is_generated())
    fail("chain", "chain functions must use the generated representation");
  json j;
  j["format"] = "cmif-chain/1";
  j["depth"] = depth;
  j["f"] = doc_to_json(f);
  j["g"] = doc_to_json(g);
  j["tau"] = tau_to_json(tau);
  return dump(j);
}

std::string cloud_csv(const DepthNApprox& a) {
  std::string out;
  for (const auto& t : a.tuples) {
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) out += ',';
      out += t[i].str();
    }
    out += '\n';
  }
  return out;
}

DepthNApprox cloud_from_csv(const std::string& text) {
  DepthNApprox a;
  a.resolution = Rational(0);
  a.truncation = 0;
  size_t pos = 0, lineno = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++lineno;
    if (line.empty()) continue;
    std::vector<Rational> tuple;
    size_t c = 0;
    while (true) {
      size_t comma = line.find(',', c);
      std::string cell = line.substr(c, comma == std::string::npos ? std::string::npos : comma - c);
      try {
        tuple.push_back(Rational::parse(cell));
      } catch (const std::invalid_argument&) {
        fail("csv line " + std::to_string(lineno), "\"" + cell + "\" is not a rational");
      }
      if (comma == std::string::npos) break;
      c = comma + 1;
    }
    if (a.tuples.empty())
      a.depth = tuple.size();
    else if (tuple.size() != a.depth)
      fail("csv line " + std::to_string(lineno), "tuple length differs from the first line");
    a.tuples.push_back(std::move(tuple));
  }
  std::sort(a.tuples.begin(), a.tuples.end());
  return a;
}

}  // namespace cmif
