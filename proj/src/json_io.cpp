#include "gtom/json_io.hpp"

#include <fstream>
#include <set>

namespace gtom::io {

namespace {

std::string at(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string at(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

const json& member(const json& j, const std::string& pointer, const std::string& key) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(pointer, key), "missing member");
  return *it;
}

int small_int(const json& j, const std::string& pointer, int lo, int hi) {
  if (!j.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) {
    throw SchemaError(pointer, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

const json& array(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array");
  return j;
}

ordered_json set_list(RightSet s) {
  ordered_json out = ordered_json::array();
  for (int v : elements(s)) out.push_back(v);
  return out;
}

ordered_json vector_json(const RationalVector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_fraction_string(v(k)));
  return out;
}

std::vector<BipartiteType> type_list(const json& j, const std::string& pointer) {
  std::vector<BipartiteType> out;
  const json& arr = array(j, pointer);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(type_from_json(arr[k], at(pointer, k)));
  return out;
}

void same_shape(const BipartiteType& ambient, const BipartiteType& t, const std::string& pointer) {
  if (t.n() != ambient.n() || t.d() != ambient.d()) throw SchemaError(pointer, "shape differs from the ambient graph");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

BipartiteType type_from_json(const json& j, const std::string& pointer, bool allow_empty_rows) {
  const int n = small_int(member(j, pointer, "n"), at(pointer, "n"), 1, kMaxSide);
  const int d = small_int(member(j, pointer, "d"), at(pointer, "d"), 1, kMaxSide);
  const std::string rp = at(pointer, "rows");
  const json& rows = array(member(j, pointer, "rows"), rp);
  if (static_cast<int>(rows.size()) != n) throw SchemaError(rp, "expected " + std::to_string(n) + " rows");
  std::vector<RightSet> masks;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string ip = at(rp, i);
    RightSet row = 0;
    const json& entries = array(rows[i], ip);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const int v = small_int(entries[k], at(ip, k), 1, d);
      if (contains(row, v)) throw SchemaError(at(ip, k), "repeated right vertex " + std::to_string(v));
      row |= bit(v);
    }
    if (row == 0 && !allow_empty_rows) throw SchemaError(ip, "row must be nonempty");
    masks.push_back(row);
  }
  return BipartiteType(n, d, std::move(masks));
}

ordered_json to_json(const BipartiteType& t) {
  ordered_json rows = ordered_json::array();
  for (RightSet r : t.rows()) rows.push_back(set_list(r));
  return ordered_json{{"n", t.n()}, {"d", t.d()}, {"rows", rows}};
}

BipartiteType graph_from_json(const json& j) {
  if (j.is_object() && j.contains("ambient")) return type_from_json(j["ambient"], "/ambient");
  return type_from_json(j);
}

Gtom gtom_from_json(const json& j) {
  const BipartiteType ambient = type_from_json(member(j, "", "ambient"), "/ambient");
  std::vector<BipartiteType> types = type_list(member(j, "", "types"), "/types");
  for (std::size_t k = 0; k < types.size(); ++k) same_shape(ambient, types[k], at("/types", k));
  return Gtom(ambient, std::move(types));
}

ordered_json to_json(const Gtom& m) {
  ordered_json types = ordered_json::array();
  for (const auto& t : m.types()) types.push_back(to_json(t));
  return ordered_json{{"ambient", to_json(m.ambient())}, {"types", types}};
}

Subdivision subdivision_from_json(const json& j) {
  const BipartiteType ambient = type_from_json(member(j, "", "ambient"), "/ambient");
  std::vector<BipartiteType> cells = type_list(member(j, "", "cells"), "/cells");
  for (std::size_t k = 0; k < cells.size(); ++k) same_shape(ambient, cells[k], at("/cells", k));
  return Subdivision(ambient, std::move(cells));
}

ordered_json to_json(const Subdivision& s) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : s.cells()) cells.push_back(to_json(c));
  return ordered_json{{"ambient", to_json(s.ambient())}, {"cells", cells}};
}

HeightFunction heights_from_json(const BipartiteType& g, const json& j) {
  const json& edges = array(member(j, "", "edges"), "/edges");
  const json& values = array(member(j, "", "values"), "/values");
  if (edges.size() != values.size()) throw SchemaError("/values", "expected one value per edge");
  std::vector<Edge> es;
  std::vector<Rational> vs;
  std::set<Edge> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string ep = at("/edges", k);
    const json& e = array(edges[k], ep);
    if (e.size() != 2) throw SchemaError(ep, "expected [position, right vertex]");
    const Edge edge{small_int(e[0], at(ep, 0), 1, g.n()), small_int(e[1], at(ep, 1), 1, g.d())};
    if (!g.has_edge(edge.first, edge.second)) throw SchemaError(ep, "not an edge of the graph");
    if (!seen.insert(edge).second) throw SchemaError(ep, "repeated edge");
    es.push_back(edge);
    const std::string vp = at("/values", k);
    if (!values[k].is_string() && !values[k].is_number_integer()) throw SchemaError(vp, "expected \"p/q\"");
    try {
      vs.push_back(values[k].is_string() ? parse_fraction(values[k].get<std::string>())
                                         : Rational(values[k].get<long long>()));
    } catch (const std::invalid_argument& err) {
      throw SchemaError(vp, err.what());
    }
  }
  if (static_cast<int>(es.size()) != g.edge_count()) throw SchemaError("/edges", "every edge needs a height");
  return HeightFunction(g, es, std::move(vs));
}

ordered_json to_json(const HeightFunction& h) {
  ordered_json edges = ordered_json::array();
  ordered_json values = ordered_json::array();
  for (std::size_t k = 0; k < h.edges().size(); ++k) {
    edges.push_back({h.edges()[k].first, h.edges()[k].second});
    values.push_back(to_fraction_string(h.values()[k]));
  }
  return ordered_json{{"edges", edges}, {"values", values}};
}

ordered_json to_json(const std::vector<MixedCell>& cells) {
  ordered_json out = ordered_json::array();
  for (const auto& c : cells) {
    ordered_json summands = ordered_json::array();
    for (RightSet r : c.summands) summands.push_back(set_list(r));
    ordered_json vertices = ordered_json::array();
    for (const auto& v : c.vertices) vertices.push_back(vector_json(v));
    out.push_back(ordered_json{{"summands", summands}, {"vertices", vertices}});
  }
  return out;
}

ordered_json to_json(const AxiomReport& r) {
  ordered_json witnesses = ordered_json::array();
  for (const Witness& w : r.witnesses) {
    ordered_json o;
    ordered_json types = ordered_json::array();
    for (const auto& t : w.types) types.push_back(to_json(t));
    o["types"] = types;
    if (w.position != 0) o["position"] = w.position;
    if (w.missing) o["missing"] = to_json(*w.missing);
    if (!w.walk.empty()) o["walk"] = w.walk;
    o["note"] = w.note;
    witnesses.push_back(o);
  }
  return ordered_json{{"axiom", r.axiom}, {"holds", r.holds}, {"witnesses", witnesses}};
}

ordered_json to_json(const GtomVerdict& v) {
  ordered_json reports = ordered_json::array();
  for (const auto& r : v.reports) reports.push_back(to_json(r));
  return ordered_json{{"holds", v.holds}, {"axioms", reports}};
}

ordered_json to_json(const Split& s) {
  return ordered_json{{"left1", set_list(s.left1)},
                      {"right1", set_list(s.right1)},
                      {"left2", set_list(s.left2)},
                      {"right2", set_list(s.right2)}};
}

ordered_json to_json(const SubdivisionCheck& c) {
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : c.incompatible_pairs) {
    pairs.push_back(ordered_json{{"cells", {to_json(a), to_json(b)}}, {"walk", incompatibility_witness(a, b)}});
  }
  ordered_json unshared = ordered_json::array();
  for (const auto& u : c.unshared_facets) {
    unshared.push_back(ordered_json{{"cell", to_json(u.cell)}, {"facet", to_json(u.facet)}, {"split", to_json(u.split)}});
  }
  return ordered_json{{"valid", c.valid}, {"incompatible_pairs", pairs}, {"unshared_facets", unshared}};
}

ordered_json to_json(const std::vector<FacetSubgraph>& facets) {
  ordered_json out = ordered_json::array();
  for (const auto& f : facets) out.push_back(ordered_json{{"graph", to_json(f.graph)}, {"split", to_json(f.split)}});
  return out;
}

ordered_json to_json(const Labeling& l) {
  ordered_json levels = ordered_json::array();
  for (std::size_t k = 0; k < l.levels.size(); ++k) {
    levels.push_back(ordered_json{{"level", k},
                                  {"agreeing", set_list(l.levels[k].agreeing)},
                                  {"opposing", set_list(l.levels[k].opposing)},
                                  {"right", set_list(l.levels[k].right)}});
  }
  ordered_json out{{"root", l.root}, {"levels", levels}, {"uncovered", set_list(l.uncovered)}};
  if (!l.position_order.empty()) out["position_order"] = l.position_order;
  return out;
}

ordered_json to_json(const EliminationCertificate& c) {
  ordered_json leaves = ordered_json::array();
  for (const auto& t : c.leaves) leaves.push_back(to_json(t));
  ordered_json steps = ordered_json::array();
  for (const auto& s : c.steps) {
    steps.push_back(ordered_json{
        {"left", to_json(s.left)}, {"right", to_json(s.right)}, {"position", s.position}, {"result", to_json(s.result)}});
  }
  ordered_json rounds = ordered_json::array();
  for (const auto& r : c.rounds) {
    rounds.push_back(ordered_json{
        {"vertex", r.vertex}, {"labeling", to_json(r.labeling)}, {"b", to_json(r.b)}, {"result", to_json(r.result)}});
  }
  return ordered_json{{"target", to_json(c.target)}, {"order", c.order}, {"leaves", leaves},
                      {"steps", steps}, {"rounds", rounds}};
}

ordered_json to_json(const ExtensionStep& e) {
  return ordered_json{{"component", {{"left", set_list(e.component.left)}, {"right", set_list(e.component.right)}}},
                      {"labeling", to_json(e.labeling)},
                      {"b", to_json(e.b)},
                      {"bad_counts", e.bad_counts},
                      {"joins_component", e.joins_component},
                      {"result", to_json(e.result)}};
}

}  // namespace gtom::io
