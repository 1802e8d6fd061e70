// Batch front end for the GTOM / root-polytope subdivision library.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtom/generation.hpp"
#include "gtom/geometry.hpp"
#include "gtom/json_io.hpp"
#include "gtom/render.hpp"
#include "gtom/subdivision.hpp"

using namespace gtom;
using io::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string format = "json";
  std::string path;
};

void write(const Output& out, const std::string& body) {
  if (out.path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw io::SchemaError("", "cannot write '" + out.path + "'");
  f << body;
}

void emit(const Output& out, const ordered_json& j, const std::string& text) {
  write(out, out.format == "text" ? text : j.dump(2) + "\n");
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

std::string set_text(RightSet s) { return s == 0 ? "-" : join(elements(s)); }

std::string verdict_text(const GtomVerdict& v) {
  std::ostringstream t;
  for (const AxiomReport& r : v.reports) {
    t << r.axiom << ": " << (r.holds ? "holds" : "fails") << "\n";
    for (const Witness& w : r.witnesses) {
      t << "  " << w.note;
      for (const auto& ty : w.types) t << " " << to_string(ty);
      if (w.position != 0) t << " at position " << w.position;
      if (w.missing) t << ": " << to_string(*w.missing);
      t << "\n";
    }
  }
  t << (v.holds ? "GTOM: yes\n" : "GTOM: no\n");
  return t.str();
}

std::string check_text(const SubdivisionCheck& c) {
  std::ostringstream t;
  for (const auto& [a, b] : c.incompatible_pairs) t << "incompatible: " << to_string(a) << " and " << to_string(b) << "\n";
  for (const auto& u : c.unshared_facets) {
    t << "unshared internal facet " << to_string(u.facet) << " of cell " << to_string(u.cell) << "\n";
  }
  t << (c.valid ? "subdivision: valid\n" : "subdivision: invalid\n");
  return t.str();
}

std::string labeling_text(const Labeling& l) {
  std::ostringstream t;
  t << "  level  agreeing      opposing      right\n";
  for (std::size_t k = 0; k < l.levels.size(); ++k) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-6zu %-13s %-13s %s\n", k, set_text(l.levels[k].agreeing).c_str(),
                  set_text(l.levels[k].opposing).c_str(), set_text(l.levels[k].right).c_str());
    t << line;
  }
  t << "  uncovered: " << set_text(l.uncovered) << "\n";
  if (l.root != 0) t << "  root: " << l.root << ", position order: " << join(l.position_order) << "\n";
  return t.str();
}

std::string types_text(const std::vector<BipartiteType>& ts) {
  std::string s;
  for (const auto& t : ts) s += to_string(t) + "\n";
  return s;
}

// Subcommand bodies. Each returns an exit code.

int run_check_gtom(const std::string& file, bool exhaustive, const Output& out) {
  const Gtom m = io::gtom_from_json(io::read_json_file(file));
  CheckOptions opt;
  if (exhaustive) opt.surrounding = SurroundingMode::kExhaustive;
  const GtomVerdict v = is_gtom(m, opt);
  emit(out, io::to_json(v), verdict_text(v));
  return v.holds ? kOk : kCheckFailed;
}

int run_check_subdiv(const std::string& file, const Output& out) {
  const SubdivisionCheck c = check_subdivision(io::subdivision_from_json(io::read_json_file(file)));
  emit(out, io::to_json(c), check_text(c));
  return c.valid ? kOk : kCheckFailed;
}

int run_to_gtom(const std::string& file, const Output& out) {
  const Gtom m = subdiv_to_gtom(io::subdivision_from_json(io::read_json_file(file)));
  emit(out, io::to_json(m), types_text(m.types()));
  return kOk;
}

int run_to_subdiv(const std::string& file, bool skip_check, const Output& out) {
  const Gtom m = io::gtom_from_json(io::read_json_file(file));
  if (!skip_check && !is_gtom(m, {CheckMode::kFast, SurroundingMode::kCoarse}).holds) {
    throw PreconditionError("input is not a GTOM (run check-gtom for details)");
  }
  const Subdivision s = gtom_to_subdiv(m);
  emit(out, io::to_json(s), types_text(s.cells()));
  return kOk;
}

int run_faces(const std::string& file, const Output& out) {
  const Subdivision s = io::subdivision_from_json(io::read_json_file(file));
  const Gtom m(s.ambient(), faces_of_subdivision(s));
  emit(out, io::to_json(m), types_text(m.types()));
  return kOk;
}

int run_facets(const std::string& file, bool geometric, const Output& out) {
  const BipartiteType g = io::graph_from_json(io::read_json_file(file));
  const auto facets = facets_graphtheoretic(g);
  ordered_json j{{"facets", io::to_json(facets)}};
  std::ostringstream t;
  for (const auto& f : facets) t << to_string(f.graph) << "\n";
  if (!geometric) {
    emit(out, j, t.str());
    return kOk;
  }
  std::vector<BipartiteType> combinatorial, hull;
  for (const auto& f : facets) combinatorial.push_back(f.graph);
  ordered_json geo = ordered_json::array();
  for (const auto& f : facets_geometric(g)) {
    hull.push_back(f.vertex_set);
    geo.push_back(io::to_json(f.vertex_set));
  }
  std::sort(combinatorial.begin(), combinatorial.end());
  const bool agree = combinatorial == hull;
  j["geometric"] = geo;
  j["agree"] = agree;
  t << (agree ? "geometric facets agree\n" : "geometric facets DISAGREE\n");
  emit(out, j, t.str());
  return agree ? kOk : kCheckFailed;
}

int run_regular(const std::string& file, const std::string& heights, bool dual, const Output& out) {
  const BipartiteType g = io::graph_from_json(io::read_json_file(file));
  const HeightFunction h = io::heights_from_json(g, io::read_json_file(heights));
  const Subdivision s = dual ? regular_subdivision_dual(g, h) : regular_subdivision(g, h);
  emit(out, io::to_json(s), types_text(s.cells()));
  return kOk;
}

int run_sample(const std::string& file, int trials, std::uint64_t seed, const Output& out) {
  const BipartiteType g = io::graph_from_json(io::read_json_file(file));
  const auto subs = sample_subdivisions(g, trials, seed);
  int triangulations = 0;
  ordered_json list = ordered_json::array();
  std::ostringstream t;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    triangulations += is_triangulation(subs[k]) ? 1 : 0;
    list.push_back(io::to_json(subs[k]));
    t << "subdivision " << k + 1 << ":\n";
    for (const auto& c : subs[k].cells()) t << "  " << to_string(c) << "\n";
  }
  t << subs.size() << " distinct subdivisions, " << triangulations << " triangulations\n";
  emit(out,
       ordered_json{{"trials", trials},
                    {"seed", seed},
                    {"count", subs.size()},
                    {"triangulations", triangulations},
                    {"subdivisions", list}},
       t.str());
  return kOk;
}

int run_generate(const std::string& gtom_file, const std::string& type_file, bool trace, const Output& out) {
  const Gtom m = io::gtom_from_json(io::read_json_file(gtom_file));
  const BipartiteType a = io::type_from_json(io::read_json_file(type_file));
  const TypeOracle oracle(m);
  EliminationCertificate cert = generate_type(oracle, a);
  const ReplayResult replay = replay_certificate(oracle, cert);
  std::ostringstream t;
  if (trace) {
    for (const auto& r : cert.rounds) {
      t << "round " << r.vertex << "\n" << labeling_text(r.labeling);
      t << "  B: " << to_string(r.b) << "\n  result: " << to_string(r.result) << "\n";
    }
  }
  t << "order: " << join(cert.order) << "\n";
  t << cert.leaves.size() << " boundary types, " << cert.steps.size() << " eliminations\n";
  t << "replay: " << (replay.sound ? "sound" : "UNSOUND: " + replay.problem) << "\n";
  if (!trace) cert.rounds.clear();
  ordered_json j = io::to_json(cert);
  j["replay"] = {{"sound", replay.sound}, {"problem", replay.problem}};
  emit(out, j, t.str());
  return replay.sound ? kOk : kCheckFailed;
}

int run_extend(const std::string& gtom_file, const std::string& type_file, const Output& out) {
  const Gtom m = io::gtom_from_json(io::read_json_file(gtom_file));
  const BipartiteType a = io::type_from_json(io::read_json_file(type_file));
  std::vector<ExtensionStep> steps;
  const BipartiteType c = extend_to_connected(m, a, &steps);
  ordered_json list = ordered_json::array();
  std::ostringstream t;
  for (const auto& s : steps) {
    list.push_back(io::to_json(s));
    t << to_string(s.result) << "  (bad positions: " << join(s.bad_counts, " -> ") << ")\n";
  }
  t << "connected: " << to_string(c) << "\n";
  emit(out, ordered_json{{"result", io::to_json(c)}, {"steps", list}}, t.str());
  return kOk;
}

int run_cayley(const std::string& file, const Output& out) {
  const Subdivision s = io::subdivision_from_json(io::read_json_file(file));
  const auto cells = cayley_to_mixed(s);
  std::ostringstream t;
  for (const auto& c : cells) {
    t << "cell";
    for (RightSet r : c.summands) t << " [" << set_text(r) << "]";
    t << ":";
    for (const auto& v : c.vertices) {
      t << " (";
      for (Eigen::Index k = 0; k < v.size(); ++k) t << (k ? "," : "") << to_fraction_string(v(k));
      t << ")";
    }
    t << "\n";
  }
  emit(out, io::to_json(cells), t.str());
  return kOk;
}

int run_render(const std::string& file, const RenderSpec& spec, const Output& out) {
  const Subdivision s = io::subdivision_from_json(io::read_json_file(file));
  write(out, render_mixed(s, spec));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized tropical oriented matroids and subdivisions of root polytopes"};
  app.require_subcommand(1);
  Output out;
  std::string file, gtom_file, type_file, heights_file;
  std::uint64_t seed = 0;
  int trials = 100;
  bool exhaustive = false, geometric = false, dual = false, trace = false, skip_check = false;
  RenderSpec spec;
  std::function<int()> action;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", out.path, "Write the result to a file");
  };
  auto with_file = [&](CLI::App* sub, const char* what) { sub->add_option("file", file, what)->required(); };

  auto* check_gtom = app.add_subcommand("check-gtom", "Check the five GTOM axioms");
  with_file(check_gtom, "GTOM JSON");
  check_gtom->add_flag("--exhaustive", exhaustive, "Check Surrounding against all ordered partitions");
  common(check_gtom);
  check_gtom->callback([&] { action = [&] { return run_check_gtom(file, exhaustive, out); }; });

  auto* check_subdiv = app.add_subcommand("check-subdiv", "Check compatibility and facet sharing of cells");
  with_file(check_subdiv, "Subdivision JSON");
  common(check_subdiv);
  check_subdiv->callback([&] { action = [&] { return run_check_subdiv(file, out); }; });

  auto* to_gtom = app.add_subcommand("to-gtom", "Faces of a subdivision as a GTOM");
  with_file(to_gtom, "Subdivision JSON");
  common(to_gtom);
  to_gtom->callback([&] { action = [&] { return run_to_gtom(file, out); }; });

  auto* to_subdiv = app.add_subcommand("to-subdiv", "Connected spanning types of a GTOM as a subdivision");
  with_file(to_subdiv, "GTOM JSON");
  to_subdiv->add_flag("--no-check", skip_check, "Skip the axiom check of the input");
  common(to_subdiv);
  to_subdiv->callback([&] { action = [&] { return run_to_subdiv(file, skip_check, out); }; });

  auto* faces = app.add_subcommand("faces", "Refinement closure of the cells");
  with_file(faces, "Subdivision JSON");
  common(faces);
  faces->callback([&] { action = [&] { return run_faces(file, out); }; });

  auto* cayley = app.add_subcommand("cayley", "Mixed cells of the subdivision with exact vertices");
  with_file(cayley, "Subdivision JSON");
  common(cayley);
  cayley->callback([&] { action = [&] { return run_cayley(file, out); }; });

  auto* generate = app.add_subcommand("generate", "Generate a connected type by eliminations");
  generate->add_option("--gtom", gtom_file, "GTOM JSON")->required();
  generate->add_option("--type", type_file, "Type JSON")->required();
  generate->add_flag("--trace", trace, "Include the labeling of every round");
  common(generate);
  generate->callback([&] { action = [&] { return run_generate(gtom_file, type_file, trace, out); }; });

  auto* extend = app.add_subcommand("extend", "Extend a type to a connected type of the GTOM");
  extend->add_option("--gtom", gtom_file, "GTOM JSON")->required();
  extend->add_option("--type", type_file, "Type JSON")->required();
  common(extend);
  extend->callback([&] { action = [&] { return run_extend(gtom_file, type_file, out); }; });

  auto* render = app.add_subcommand("render", "SVG of the mixed subdivision (d = 2 or 3)");
  with_file(render, "Subdivision JSON");
  render->add_flag("--dual", spec.show_dual, "Overlay the dual arrangement, dashed");
  render->add_flag("--labels", spec.labels, "Number the cells");
  render->add_option("--scale", spec.scale, "Pixels per unit")->check(CLI::PositiveNumber);
  render->add_option("-o,--output", out.path, "Write the SVG to a file");
  render->callback([&] { action = [&] { return run_render(file, spec, out); }; });

  // Geometric oracle commands, also reachable as `oracle <name>`.
  auto add_oracle_commands = [&](CLI::App* parent) {
    auto* facets = parent->add_subcommand("facets", "Facets of Q_G as maximal disconnected subgraphs");
    with_file(facets, "Graph JSON (or any file with an \"ambient\" graph)");
    facets->add_flag("--geometric", geometric, "Cross-check against the exact convex hull");
    common(facets);
    facets->callback([&] { action = [&] { return run_facets(file, geometric, out); }; });

    auto* regular = parent->add_subcommand("regular", "Regular subdivision from a height function");
    with_file(regular, "Graph JSON");
    regular->add_option("--heights", heights_file, "Heights JSON")->required();
    regular->add_flag("--dual", dual, "Walk the dual potentials instead of enumerating the lower hull");
    common(regular);
    regular->callback([&] { action = [&] { return run_regular(file, heights_file, dual, out); }; });

    auto* sample = parent->add_subcommand("sample", "Distinct regular subdivisions from seeded heights");
    with_file(sample, "Graph JSON");
    sample->add_option("--trials", trials, "Number of height functions")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Random seed");
    common(sample);
    sample->callback([&] { action = [&] { return run_sample(file, trials, seed, out); }; });
  };
  add_oracle_commands(&app);
  auto* oracle = app.add_subcommand("oracle", "Geometric oracle commands");
  oracle->require_subcommand(1);
  add_oracle_commands(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    return action();
  } catch (const io::SchemaError& e) {
    std::cout << "malformed input at " << e.what() << "\n";
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cout << "precondition failed: " << e.what() << "\n";
    return kBadInput;
  } catch (const DimensionMismatch& e) {
    std::cout << "dimension mismatch: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cout << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
