#include "hdx/graph.hpp"

#include <algorithm>
#include <cmath>

#include "hdx/error.hpp"

namespace hdx {

WGraph WGraph::build(std::vector<VertexId> labels, std::vector<WEdge> edges,
                     std::vector<Side> sides) {
  if (labels.empty() || edges.empty()) throw Error(ErrorCode::EmptyGraph, "graph has no edges");
  if (!sides.empty() && sides.size() != labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "bipartition size mismatch");
  }
  const auto n = static_cast<std::uint32_t>(labels.size());
  double total = 0.0;
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) {
      throw Error(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(labels[e.u]));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::InvalidArgument, "edge weight must be positive");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!sides.empty() && sides[e.u] == sides[e.v]) {
      throw Error(ErrorCode::NotBipartite, "edge {" + std::to_string(labels[e.u]) + "," +
                                               std::to_string(labels[e.v]) + "} inside one side");
    }
    total += e.weight;
  }
  std::sort(edges.begin(), edges.end(),
            [](const WEdge& a, const WEdge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge {" + std::to_string(labels[edges[i].u]) +
                                                  "," + std::to_string(labels[edges[i].v]) + "}");
    }
  }

  WGraph G;
  G.sorted_labels_ = std::is_sorted(labels.begin(), labels.end());
  G.labels_ = std::move(labels);
  G.sides_ = std::move(sides);
  G.vertex_measure_.assign(n, 0.0);
  std::vector<std::size_t> deg(n, 0);
  for (auto& e : edges) {
    e.weight /= total;
    G.vertex_measure_[e.u] += 0.5 * e.weight;
    G.vertex_measure_[e.v] += 0.5 * e.weight;
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (deg[i] == 0) throw Error(ErrorCode::IsolatedVertex, std::to_string(G.labels_[i]));
  }
  G.offsets_.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) G.offsets_[i + 1] = G.offsets_[i] + deg[i];
  G.adjacency_.resize(G.offsets_[n]);
  std::vector<std::size_t> fill(G.offsets_.begin(), G.offsets_.end() - 1);
  for (std::uint32_t k = 0; k < edges.size(); ++k) {
    G.adjacency_[fill[edges[k].u]++] = {edges[k].v, k};
    G.adjacency_[fill[edges[k].v]++] = {edges[k].u, k};
  }
  G.edges_ = std::move(edges);
  return G;
}

std::vector<VertexId> sorted_endpoints(std::span<const LabeledEdge> edges) {
  std::vector<VertexId> labels;
  labels.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    labels.push_back(e.a);
    labels.push_back(e.b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::vector<WEdge> localize(std::span<const LabeledEdge> edges, std::span<const VertexId> labels) {
  std::vector<WEdge> out;
  out.reserve(edges.size());
  auto pos = [&](VertexId id) {
    return static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), id) -
                                      labels.begin());
  };
  for (const auto& e : edges) out.push_back({pos(e.a), pos(e.b), e.weight});
  return out;
}

WGraph WGraph::from_labeled(std::span<const LabeledEdge> edges) {
  std::vector<VertexId> labels = sorted_endpoints(edges);
  auto local = localize(edges, labels);
  return build(std::move(labels), std::move(local));
}

std::int64_t WGraph::index_of(VertexId id) const {
  if (!sorted_labels_) {
    auto it = std::find(labels_.begin(), labels_.end(), id);
    return it == labels_.end() ? -1 : it - labels_.begin();
  }
  auto it = std::lower_bound(labels_.begin(), labels_.end(), id);
  if (it == labels_.end() || *it != id) return -1;
  return it - labels_.begin();
}

WGraph one_skeleton(const PureComplex& X) {
  if (X.dim() < 1) throw Error(ErrorCode::InvalidArgument, "one_skeleton needs dim >= 1");
  std::vector<LabeledEdge> edges;
  edges.reserve(X.num_faces(1));
  for (const Face& e : X.faces(1)) edges.push_back({e[0], e[1], face_measure(X, e)});
  return WGraph::from_labeled(edges);
}

bool is_connected(const WGraph& G) {
  std::vector<char> seen(G.num_vertices(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto nb : G.neighbors(u)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count == G.num_vertices();
}

}  // namespace hdx
