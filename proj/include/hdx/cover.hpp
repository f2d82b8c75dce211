#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/group.hpp"
#include "hdx/labeling.hpp"

namespace hdx {

/// Group element per edge position of X(1).
using Cocycle = std::vector<Element>;

struct CocycleCheck {
  bool ok = true;
  std::optional<Face> witness;
};

CocycleCheck is_cocycle(const PureComplex& X, const GroupTable& G, std::span<const Element> f);

/// f(ij) = g(i)^{-1} g(j) for a vertex potential g.
Cocycle coboundary(const PureComplex& X, const GroupTable& G,
                   const std::function<Element(VertexId)>& potential);

struct CoverComplex {
  PureComplex complex;
  std::size_t group_order = 0;

  /// Vertex (v, g) has id v * |G| + g.
  VertexId lift(VertexId v, Element g) const { return v * static_cast<VertexId>(group_order) + g; }
  VertexId base_vertex(VertexId id) const { return id / static_cast<VertexId>(group_order); }
  Element element(VertexId id) const { return id % static_cast<VertexId>(group_order); }
  Face project(const Face& s) const;
};

/// Faces (v_0,g_0),...,(v_d,g_d) with g_j = g_0 f(v_0 v_j), each carrying
/// the base weight over |G|. Throws NotACocycle, InvalidArgument (d < 2).
CoverComplex build_cover(const PureComplex& X, const GroupTable& G, std::span<const Element> f);

enum class TreeKind { Bfs, Dfs };

/// Subgroup generated by cycle products at v through a spanning tree.
/// Throws Disconnected.
std::vector<Element> holonomy_subgroup(const PureComplex& X, const GroupTable& G,
                                       std::span<const Element> f, VertexId v,
                                       TreeKind tree = TreeKind::Bfs);

struct Components {
  std::size_t count = 0;
  std::vector<VertexId> vertices;   // sorted vertex ids
  std::vector<std::uint32_t> label; // component per vertex, parallel to `vertices`
};

/// Components of the 1-skeleton (a 0-dimensional complex has singletons).
Components connected_components(const PureComplex& X);

struct CoverVerification {
  bool pass = true;
  bool surjective = true;
  bool homomorphism = true;
  std::size_t faces_checked = 0;
  std::vector<Face> violations;  // faces of the cover whose link is not mapped isomorphically
};

/// Checks that phi is a simplicial homomorphism onto X and that it maps the
/// link of every nonempty face isomorphically (with weights) onto the link
/// of its image.
CoverVerification verify_cover(const PureComplex& cover, const PureComplex& X,
                               const std::function<VertexId(VertexId)>& phi);

/// pi applied edgewise. Throws NotACocycle when f is not a cocycle.
Cocycle push_cocycle(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                     const Quotient& q);

}  // namespace hdx
