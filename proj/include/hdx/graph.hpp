#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

struct WEdge {
  std::uint32_t u = 0;  // local vertex index
  std::uint32_t v = 0;
  double weight = 0.0;
};

/// Edge between external vertex ids; the graph assigns local indices.
struct LabeledEdge {
  VertexId a = 0;
  VertexId b = 0;
  double weight = 0.0;
};

enum class Side : std::uint8_t { Left = 0, Right = 1 };

struct Neighbor {
  std::uint32_t vertex;
  std::uint32_t edge;
};

/// Undirected weighted graph with edge and vertex probability measures.
/// Vertex measure is half the incident edge mass, so both sum to one.
class WGraph {
 public:
  /// labels[i] is the external id of local vertex i. Throws EmptyGraph,
  /// IsolatedVertex, InvalidArgument (loops, duplicates, bad weights),
  /// NotBipartite (an edge inside one side).
  static WGraph build(std::vector<VertexId> labels, std::vector<WEdge> edges,
                      std::vector<Side> sides = {});

  /// Vertices are the endpoints of the edges, sorted by id.
  static WGraph from_labeled(std::span<const LabeledEdge> edges);

  /// Same, with a bipartition chosen by `left(id)`.
  template <typename LeftPredicate>
  static WGraph from_labeled_bipartite(std::span<const LabeledEdge> edges, LeftPredicate left);

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const VertexId> labels() const { return labels_; }
  VertexId label(std::uint32_t i) const { return labels_[i]; }
  /// Local index of an external id, or -1.
  std::int64_t index_of(VertexId id) const;

  std::span<const WEdge> edges() const { return edges_; }
  double vertex_measure(std::uint32_t i) const { return vertex_measure_[i]; }
  std::span<const double> vertex_measures() const { return vertex_measure_; }
  std::span<const Neighbor> neighbors(std::uint32_t i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }

  bool bipartite() const { return !sides_.empty(); }
  Side side(std::uint32_t i) const { return sides_[i]; }
  std::span<const Side> sides() const { return sides_; }

 private:
  std::vector<VertexId> labels_;
  std::vector<WEdge> edges_;
  std::vector<double> vertex_measure_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<Side> sides_;
  bool sorted_labels_ = true;
};

std::vector<VertexId> sorted_endpoints(std::span<const LabeledEdge> edges);
std::vector<WEdge> localize(std::span<const LabeledEdge> edges, std::span<const VertexId> labels);

template <typename LeftPredicate>
WGraph WGraph::from_labeled_bipartite(std::span<const LabeledEdge> edges, LeftPredicate left) {
  std::vector<VertexId> labels = sorted_endpoints(edges);
  std::vector<Side> sides;
  sides.reserve(labels.size());
  for (VertexId id : labels) sides.push_back(left(id) ? Side::Left : Side::Right);
  auto local = localize(edges, labels);
  return build(std::move(labels), std::move(local), std::move(sides));
}

/// Weighted graph of X(0) and X(1); edge measure is the edge face measure.
/// Throws InvalidArgument when dim < 1.
WGraph one_skeleton(const PureComplex& X);

/// Whether the graph's edges connect all its vertices.
bool is_connected(const WGraph& G);

}  // namespace hdx
