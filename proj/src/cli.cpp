#include "cmif/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmif/conjugacy.hpp"
#include "cmif/document.hpp"
#include "cmif/inverse_limit.hpp"
#include "cmif/limits.hpp"
#include "cmif/markov.hpp"
#include "cmif/pattern.hpp"
#include "cmif/render.hpp"

namespace cmif {

namespace {

using nlohmann::json;

// Reads input files and folds every byte into one FNV-1a digest, so the run
// report pins down exactly what the command saw.
struct InputLog {
  uint64_t h = 1469598103934665603ULL;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return bytes;
  }

  std::string digest() const {
    static const char* hexd = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 0; i < 16; ++i) s[15 - i] = hexd[(h >> (4 * i)) & 0xF];
    return "fnv1a64:" + s;
  }
};

int report(std::ostream& out, const std::string& command, const InputLog& log, int code,
           json results) {
  json j;
  j["command"] = command;
  j["exit"] = code;
  j["inputs"] = log.digest();
  j["results"] = std::move(results);
  out << j.dump(2) << "\n";
  return code;
}

// Text payloads go to --out when given, else inline under `key`.
void place(json& results, const std::string& key, const std::string& payload,
           const std::string& out_path) {
  if (out_path.empty()) {
    results[key] = payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << payload;
  if (!f) throw std::runtime_error("cannot write " + out_path);
  results["out"] = out_path;
}

// JSON payloads inline as objects rather than escaped strings.
void place_json(json& results, const std::string& key, const std::string& payload,
                const std::string& out_path) {
  if (out_path.empty()) {
    results[key] = json::parse(payload);
    return;
  }
  place(results, key, payload, out_path);
}

json strings(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const Rational& x : xs) a.push_back(x.str());
  return a;
}

json check_json(const GraphCheck& c) {
  json j;
  j["ok"] = c.ok;
  j["violations"] = json::array();
  for (const GraphViolation& v : c.violations)
    j["violations"].push_back({{"x", v.x.str()}, {"y", v.y.str()}, {"why", v.why}});
  return j;
}

json condition_json(const ConditionResult& c) {
  json j;
  j["ok"] = c.ok;
  j["witnesses"] = json::array();
  for (const MarkovWitness& w : c.witnesses)
    j["witnesses"].push_back(
        {{"at", w.at.str()}, {"offending", w.offending.str()}, {"why", w.why}});
  return j;
}

json markov_json(const MarkovReport& rep) {
  json j;
  j["overall"] = rep.overall;
  j["interval_values"] = condition_json(rep.cond1);
  j["injective_gaps"] = condition_json(rep.cond2);
  j["isolated_limits"] = condition_json(rep.cond3);
  j["accumulation_limits"] = condition_json(rep.cond4);
  j["usc"] = check_json(rep.usc);
  j["derived_set"] = strings(rep.derived_set);
  return j;
}

const GeneratedFn& need_generated(const FunctionDocument& doc, const char* command) {
  if (!doc.fn.is_generated())
    throw std::invalid_argument(std::string(command) +
                                " needs the generated representation: " + doc.name);
  return doc.fn.generated();
}

// ---- command bodies; anything thrown is an input error (exit 2) ----

int run_validate(std::ostream& out, const std::string& path, long depth) {
  InputLog log;
  FunctionDocument doc = parse_document(log.read(path));
  json results;
  int code = 0;
  if (doc.fn.is_generated()) {
    MarkovReport rep = verify_cmif(doc.fn.generated(), depth);
    results = markov_json(rep);
    code = rep.overall ? 0 : 1;
  } else {
    GraphCheck closed = closed_graph_check(doc.fn.graph());
    GraphCheck total = total_graph_check(doc.fn.graph());
    results["closed"] = check_json(closed);
    results["total"] = check_json(total);
    code = closed.ok && total.ok ? 0 : 1;
  }
  return report(out, "validate", log, code, std::move(results));
}

int run_limits(std::ostream& out, const std::string& path, const std::string& at_str,
               const std::string& side) {
  InputLog log;
  FunctionDocument doc = parse_document(log.read(path));
  Rational at = Rational::parse(at_str);
  ClosedSet1D value =
      side == "up" ? lim_up(doc.fn, at) : lim_down(doc.fn, at);
  json results;
  results["at"] = at.str();
  results["side"] = side;
  results["value"] = value.str();
  results["components"] = value.component_count();
  return report(out, "limits", log, value.is_empty() ? 1 : 0, std::move(results));
}

int run_pattern(std::ostream& out, const std::string& f_path, const std::string& g_path,
                const std::string& tau_path, long shift_bound, const std::string& out_path) {
  InputLog log;
  FunctionDocument fd = parse_document(log.read(f_path));
  FunctionDocument gd = parse_document(log.read(g_path));
  const GeneratedFn& f = need_generated(fd, "pattern");
  const GeneratedFn& g = need_generated(gd, "pattern");
  json results;
  if (!tau_path.empty()) {
    PatternMap t = parse_pattern_file(log.read(tau_path), f.part, g.part);
    PatternCheck pc = check_same_pattern(f, g, t);
    results["mode"] = "check";
    results["ok"] = pc.ok;
    if (!pc.ok) {
      results["condition"] = pc.condition;
      results["at"] = pc.at.str();
      results["detail"] = pc.detail;
    }
    return report(out, "pattern", log, pc.ok ? 0 : 1, std::move(results));
  }
  auto found = find_pattern_map(f, g, shift_bound);
  results["mode"] = "search";
  results["found"] = found.has_value();
  if (found) place_json(results, "tau", serialize_pattern_file(*found), out_path);
  return report(out, "pattern", log, found ? 0 : 1, std::move(results));
}

int run_conjugate(std::ostream& out, const std::string& f_path, const std::string& g_path,
                  const std::string& tau_path, long depth, const std::string& out_path) {
  InputLog log;
  FunctionDocument fd = parse_document(log.read(f_path));
  FunctionDocument gd = parse_document(log.read(g_path));
  const GeneratedFn& f = need_generated(fd, "conjugate");
  const GeneratedFn& g = need_generated(gd, "conjugate");
  PatternMap tau = parse_pattern_file(log.read(tau_path), f.part, g.part);
  json results;
  int code = 0;
  try {
    HomeoChain chain = build_chain({f}, {g}, tau, depth);
    results["built"] = true;
    results["links"] = chain.maps.size();
    json pieces = json::array();
    for (const PiecewiseHomeo& h : chain.maps) pieces.push_back(h.concrete_pieces().size());
    results["pieces"] = std::move(pieces);
    place_json(results, "chain", serialize_chain_file(fd, gd, tau, depth), out_path);
  } catch (const std::invalid_argument& e) {
    results["built"] = false;
    results["error"] = e.what();
    code = 1;
  } catch (const std::logic_error& e) {
    results["built"] = false;
    results["error"] = e.what();
    code = 1;
  }
  return report(out, "conjugate", log, code, std::move(results));
}

int run_approx(std::ostream& out, const std::vector<std::string>& doc_paths, long depth,
               const std::string& res_str, long truncation, const std::string& out_path) {
  InputLog log;
  std::vector<SetValuedFn> fs;
  for (const std::string& p : doc_paths) fs.push_back(parse_document(log.read(p)).fn);
  Rational res = Rational::parse(res_str);
  DepthNApprox a = approximate(fs, depth, res, truncation);
  json results;
  results["depth"] = a.depth;
  results["resolution"] = a.resolution.str();
  results["tuples"] = a.tuples.size();
  place(results, "cloud", cloud_csv(a), out_path);
  return report(out, "approx", log, a.tuples.empty() ? 1 : 0, std::move(results));
}

int run_transport(std::ostream& out, const std::string& chain_path, const std::string& csv_path,
                  const std::vector<std::string>& g_paths) {
  InputLog log;
  ChainDocument cd = parse_chain_file(log.read(chain_path));
  DepthNApprox cloud = cloud_from_csv(log.read(csv_path));
  std::vector<SetValuedFn> gs;
  for (const std::string& p : g_paths) gs.push_back(parse_document(log.read(p)).fn);
  if (gs.empty()) gs.push_back(cd.g.fn);
  HomeoChain chain = build_chain({cd.f.fn.generated()}, {cd.g.fn.generated()}, cd.tau, cd.depth);
  TransportCheck tc = transport_test(chain, cloud, gs);
  json results;
  results["ok"] = tc.ok;
  results["depth"] = cloud.depth;
  results["tuples"] = cloud.tuples.size();
  if (!tc.ok) {
    results["witness"] = strings(tc.witness);
    results["image"] = strings(tc.image);
    results["index"] = tc.index;
  }
  return report(out, "transport", log, tc.ok ? 0 : 1, std::move(results));
}

int run_render(std::ostream& out, const std::string& path, const RenderOptions& opts,
               const std::string& out_path) {
  InputLog log;
  FunctionDocument doc = parse_document(log.read(path));
  std::string svg = render_svg(doc.fn, opts);
  json results;
  results["height"] = opts.height;
  results["width"] = opts.width;
  place(results, "svg", svg, out_path);
  return report(out, "render", log, 0, std::move(results));
}

}  // namespace

int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"countably Markov interval function toolkit"};
  app.name("cmif");
  app.require_subcommand(1);

  std::string doc_path, f_path, g_path, tau_path, chain_path, csv_path;
  std::string at_str, side, res_str, out_path;
  std::vector<std::string> doc_paths, g_paths;
  long depth = 64;
  long shift_bound = 8;
  long truncation = 16;
  RenderOptions render_opts;

  CLI::App* validate = app.add_subcommand("validate", "check a function document");
  validate->add_option("document", doc_path, "function document")->required();
  validate->add_option("--depth", depth, "family indices checked concretely");

  CLI::App* limits = app.add_subcommand("limits", "one-sided limit at a point");
  limits->add_option("document", doc_path, "function document")->required();
  limits->add_option("--at", at_str, "point, as p/q")->required();
  limits->add_option("--side", side, "up or down")
      ->required()
      ->check(CLI::IsMember({"up", "down"}));

  CLI::App* pattern = app.add_subcommand("pattern", "check or search for a pattern map");
  pattern->add_option("f", f_path, "source document")->required();
  pattern->add_option("g", g_path, "target document")->required();
  pattern->add_option("--tau", tau_path, "pattern map to check instead of searching");
  pattern->add_option("--shift-bound", shift_bound, "largest index shift tried");
  pattern->add_option("--out", out_path, "write the found map here");

  CLI::App* conjugate = app.add_subcommand("conjugate", "build a conjugating chain");
  conjugate->add_option("f", f_path, "source document")->required();
  conjugate->add_option("g", g_path, "target document")->required();
  conjugate->add_option("--tau", tau_path, "pattern map file")->required();
  conjugate->add_option("--depth", depth, "links lifted beyond the first")->required();
  conjugate->add_option("--out", out_path, "write the chain file here");

  CLI::App* approx = app.add_subcommand("approx", "finite-depth inverse limit cloud");
  approx->add_option("documents", doc_paths, "one document reused, or one per level")
      ->required();
  approx->add_option("--depth", depth, "tuple length")->required();
  approx->add_option("--resolution", res_str, "mesh bound, as p/q")->required();
  approx->add_option("--truncation", truncation, "last family index seeded");
  approx->add_option("--out", out_path, "write the cloud CSV here");

  CLI::App* transport = app.add_subcommand("transport", "push a cloud through a chain");
  transport->add_option("chain", chain_path, "chain file")->required();
  transport->add_option("cloud", csv_path, "cloud CSV")->required();
  transport->add_option("targets", g_paths, "target documents, defaulting to the chain's g");

  CLI::App* render = app.add_subcommand("render", "draw a document as SVG");
  render->add_option("document", doc_path, "function document")->required();
  render->add_option("--width", render_opts.width, "image width");
  render->add_option("--height", render_opts.height, "image height");
  render->add_option("--truncation", render_opts.truncation, "last family index drawn");
  render->add_option("--out", out_path, "write the SVG here");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return run_validate(out, doc_path, depth);
    if (limits->parsed()) return run_limits(out, doc_path, at_str, side);
    if (pattern->parsed())
      return run_pattern(out, f_path, g_path, tau_path, shift_bound, out_path);
    if (conjugate->parsed())
      return run_conjugate(out, f_path, g_path, tau_path, depth, out_path);
    if (approx->parsed())
      return run_approx(out, doc_paths, depth, res_str, truncation, out_path);
    if (transport->parsed()) return run_transport(out, chain_path, csv_path, g_paths);
    if (render->parsed()) return run_render(out, doc_path, render_opts, out_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace cmif
