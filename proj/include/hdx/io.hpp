#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hdx/complex.hpp"
#include "hdx/graph.hpp"
#include "hdx/group.hpp"

namespace hdx {

using Json = nlohmann::json;

/// Throws IoError, ParseError.
Json load_json(const std::filesystem::path& path);
/// Writes text atomically enough for batch use. Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);
/// Pretty JSON with sorted keys and a trailing newline.
std::string dump_json(const Json& j);

/// {"dim": d, "faces": [[v..]..], "weights": [..]} (weights optional).
/// Shorthand {"complete": {"n": n, "d": d}} builds a complete complex.
PureComplex complex_from_json(const Json& j);
Json complex_to_json(const PureComplex& X);

/// {"kind": "cyclic", "n": 12} | dihedral(n) | symmetric(k) |
/// {"kind": "product", "factors": [g, h]} | {"kind": "table", "mul": [[..]..]}.
GroupTable group_from_json(const Json& j, std::size_t cap = GroupTable::kDefaultCap);
Json group_to_json(const GroupTable& G);

/// Element-id list, or {"gens": [...]}. Validated against G.
GenSet genset_from_json(const Json& j, const GroupTable& G);
Json genset_to_json(const GenSet& S);

/// {"edges": [[u, v, w] or [u, v] ..], "left": [ids] (optional)}.
WGraph graph_from_json(const Json& j);
Json graph_to_json(const WGraph& G);

Json face_to_json(const Face& f);

/// Resolves a value that is either inline JSON or a path (relative to base).
Json resolve_input(const Json& value, const std::filesystem::path& base);

}  // namespace hdx
