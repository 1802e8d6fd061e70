#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gtom/generation.hpp"
#include "gtom/geometry.hpp"
#include "gtom/gtom.hpp"
#include "gtom/subdivision.hpp"
#include "gtom/types.hpp"

namespace gtom::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Malformed input; `pointer` is the JSON pointer of the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

json read_json_file(const std::string& path);

/// {"n": .., "d": .., "rows": [[right vertices], ...]}. Rows may be empty
/// only when allow_empty_rows is set.
BipartiteType type_from_json(const json& j, const std::string& pointer = "", bool allow_empty_rows = false);
ordered_json to_json(const BipartiteType& t);

/// A bare graph, or the "ambient" member of a collection or subdivision.
BipartiteType graph_from_json(const json& j);

Gtom gtom_from_json(const json& j);
ordered_json to_json(const Gtom& m);

Subdivision subdivision_from_json(const json& j);
ordered_json to_json(const Subdivision& s);

/// {"edges": [[i, j], ...], "values": ["p/q", ...]}
HeightFunction heights_from_json(const BipartiteType& g, const json& j);
ordered_json to_json(const HeightFunction& h);

ordered_json to_json(const std::vector<MixedCell>& cells);
ordered_json to_json(const AxiomReport& r);
ordered_json to_json(const GtomVerdict& v);
ordered_json to_json(const SubdivisionCheck& c);
ordered_json to_json(const std::vector<FacetSubgraph>& facets);
ordered_json to_json(const Split& s);
ordered_json to_json(const Labeling& l);
ordered_json to_json(const EliminationCertificate& c);
ordered_json to_json(const ExtensionStep& e);

}  // namespace gtom::io
