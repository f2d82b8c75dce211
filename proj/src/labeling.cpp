#include "hdx/labeling.hpp"

#include <algorithm>

#include "hdx/error.hpp"
#include "hdx/util.hpp"

namespace hdx {

EdgeIndex::EdgeIndex(const PureComplex& X) {
  if (X.dim() < 1) return;
  const auto& edges = X.faces(1);
  count_ = edges.size();
  const auto vs = X.vertices();
  const VertexId top = vs.empty() ? 0 : *std::max_element(vs.begin(), vs.end());
  if (static_cast<std::size_t>(top) + 1 <= kDenseLimit) {
    side_ = static_cast<std::size_t>(top) + 1;
    dense_.assign(side_ * side_, kNone);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      dense_[edges[i][0] * side_ + edges[i][1]] = i;
      dense_[edges[i][1] * side_ + edges[i][0]] = i;
    }
    return;
  }
  map_.reserve(edges.size() * 2);
  for (std::uint32_t i = 0; i < edges.size(); ++i) map_.emplace(key(edges[i][0], edges[i][1]), i);
}

std::uint32_t EdgeIndex::lookup(VertexId u, VertexId v) const {
  if (side_) return u < side_ && v < side_ ? dense_[u * side_ + v] : kNone;
  auto it = map_.find(key(u, v));
  return it == map_.end() || u == v ? kNone : it->second;
}

std::int64_t EdgeIndex::find(VertexId u, VertexId v) const {
  const auto i = lookup(u, v);
  return i == kNone ? -1 : static_cast<std::int64_t>(i);
}

std::uint32_t EdgeIndex::at_slow(VertexId u, VertexId v) const {
  const auto i = lookup(u, v);
  if (i == kNone) {
    throw Error(ErrorCode::NotAnEdge, "{" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  return i;
}

Element dir_label(const EdgeIndex& edges, const GroupTable& G, std::span<const Element> f,
                  VertexId u, VertexId v) {
  const Element x = f[edges.at(u, v)];
  return u < v ? x : G.inv(x);
}

Element dir_label(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                  VertexId u, VertexId v) {
  if (u == v || !X.contains(Face{std::min(u, v), std::max(u, v)})) {
    throw Error(ErrorCode::NotAnEdge, "{" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  const Element x = f[X.face_position(Face{std::min(u, v), std::max(u, v)})];
  return u < v ? x : G.inv(x);
}

bool is_satisfied(const EdgeIndex& edges, const GroupTable& G, std::span<const Element> f,
                  const Face& face) {
  const std::size_t n = face.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Element a = f[edges.at(face[i], face[j])];
      for (std::size_t k = j + 1; k < n; ++k) {
        const Element b = f[edges.at(face[j], face[k])];
        const Element c = f[edges.at(face[i], face[k])];
        if (G.mul(a, b) != c) return false;
      }
    }
  return true;
}

bool is_satisfied(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                  const Face& face) {
  if (!X.contains(face)) throw Error(ErrorCode::NotAFace, face_to_string(face));
  auto label = [&](VertexId u, VertexId v) { return f[X.face_position(Face{u, v})]; };
  const std::size_t n = face.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (G.mul(label(face[i], face[j]), label(face[j], face[k])) != label(face[i], face[k])) {
          return false;
        }
  return true;
}

}  // namespace hdx
