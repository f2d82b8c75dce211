#include "hdx/io.hpp"

#include <fstream>
#include <sstream>

#include "hdx/error.hpp"

namespace hdx {

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

PureComplex complex_from_json(const Json& j) {
  if (j.is_object() && j.contains("complete")) {
    const auto& c = j.at("complete");
    return complete_complex(get_field<std::uint32_t>(c, "n"), get_field<int>(c, "d"));
  }
  const int d = get_field<int>(j, "dim");
  auto faces = get_field<std::vector<std::vector<VertexId>>>(j, "faces");
  std::vector<double> weights;
  if (j.contains("weights")) weights = get_field<std::vector<double>>(j, "weights");
  return PureComplex::build(d, std::move(faces), std::move(weights));
}

Json complex_to_json(const PureComplex& X) {
  Json j;
  j["dim"] = X.dim();
  Json faces = Json::array();
  for (const Face& f : X.top_faces()) faces.push_back(f);
  j["faces"] = std::move(faces);
  j["weights"] = std::vector<double>(X.top_weights().begin(), X.top_weights().end());
  return j;
}

GroupTable group_from_json(const Json& j, std::size_t cap) {
  const auto kind = get_field<std::string>(j, "kind");
  if (kind == "cyclic") return GroupTable::cyclic(get_field<std::size_t>(j, "n"), cap);
  if (kind == "dihedral") return GroupTable::dihedral(get_field<std::size_t>(j, "n"), cap);
  if (kind == "symmetric") return GroupTable::symmetric(get_field<std::size_t>(j, "k"), cap);
  if (kind == "trivial") return GroupTable::trivial();
  if (kind == "product") {
    const auto& factors = j.at("factors");
    if (!factors.is_array() || factors.size() < 2) {
      throw Error(ErrorCode::ParseError, "product needs at least two factors");
    }
    GroupTable G = group_from_json(factors[0], cap);
    for (std::size_t i = 1; i < factors.size(); ++i) G = GroupTable::product(G, group_from_json(factors[i], cap), cap);
    return G;
  }
  if (kind == "table") {
    return GroupTable::from_table(get_field<std::vector<std::vector<Element>>>(j, "mul"), cap);
  }
  throw Error(ErrorCode::ParseError, "unknown group kind '" + kind + "'");
}

Json group_to_json(const GroupTable& G) {
  Json j;
  j["kind"] = "table";
  j["name"] = G.name();
  j["mul"] = G.table();
  return j;
}

GenSet genset_from_json(const Json& j, const GroupTable& G) {
  std::vector<Element> gens;
  try {
    gens = j.is_array() ? j.get<std::vector<Element>>() : j.at("gens").get<std::vector<Element>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("genset: ") + e.what());
  }
  return make_genset(G, std::move(gens));
}

Json genset_to_json(const GenSet& S) { return Json(S.gens); }

WGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("edges")) throw Error(ErrorCode::ParseError, "graph needs 'edges'");
  std::vector<LabeledEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw Error(ErrorCode::ParseError, "edge must be [u, v] or [u, v, w]");
    }
    edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e.size() == 3 ? e[2].get<double>() : 1.0});
  }
  if (j.contains("left")) {
    auto left = j.at("left").get<std::vector<VertexId>>();
    std::sort(left.begin(), left.end());
    return WGraph::from_labeled_bipartite(
        edges, [&](VertexId id) { return std::binary_search(left.begin(), left.end(), id); });
  }
  return WGraph::from_labeled(edges);
}

Json graph_to_json(const WGraph& G) {
  Json j;
  Json edges = Json::array();
  for (const auto& e : G.edges()) edges.push_back(Json::array({G.label(e.u), G.label(e.v), e.weight}));
  j["edges"] = std::move(edges);
  if (G.bipartite()) {
    std::vector<VertexId> left;
    for (std::uint32_t i = 0; i < G.num_vertices(); ++i)
      if (G.side(i) == Side::Left) left.push_back(G.label(i));
    j["left"] = left;
  }
  return j;
}

Json face_to_json(const Face& f) { return Json(f); }

Json resolve_input(const Json& value, const std::filesystem::path& base) {
  if (value.is_string()) {
    std::filesystem::path p = value.get<std::string>();
    if (p.is_relative()) p = base / p;
    return load_json(p);
  }
  return value;
}

}  // namespace hdx
