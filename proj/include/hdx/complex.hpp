#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace hdx {

using VertexId = std::uint32_t;

/// Strictly increasing vertex list; dimension is size() - 1. The empty face
/// has dimension -1.
using Face = std::vector<VertexId>;

/// Vertex sequence in a chosen order; its sorted set must be a Face.
using OrientedFace = std::vector<VertexId>;

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

/// Sorts and checks for repeated vertices (InvalidArgument on repeats).
Face canonical_face(std::vector<VertexId> vertices);

inline int face_dim(const Face& f) { return static_cast<int>(f.size()) - 1; }

/// Union of two disjoint faces, canonicalized.
Face face_union(const Face& a, const Face& b);

/// Vertices of `outer` not in `inner` (both canonical).
Face face_difference(const Face& outer, const Face& inner);

bool is_subface(const Face& inner, const Face& outer);

/// A pure d-dimensional complex with a probability measure on its top faces.
/// Immutable once built; every subface is indexed to the top faces above it.
class PureComplex {
 public:
  /// Validates purity and distinctness, drops nothing, normalizes weights.
  /// Throws NonPure, DuplicateFace, ZeroMeasure, InvalidArgument.
  static PureComplex build(int dim, std::vector<Face> faces, std::vector<double> weights);
  static PureComplex build_uniform(int dim, std::vector<Face> faces);

  int dim() const { return dim_; }
  std::span<const Face> top_faces() const { return top_; }
  std::span<const double> top_weights() const { return weights_; }
  double top_weight(std::size_t index) const { return weights_[index]; }

  /// All faces of a level, sorted lexicographically. level in [-1, dim].
  const std::vector<Face>& faces(int level) const;
  std::span<const VertexId> vertices() const { return vertex_list_; }
  std::size_t num_faces(int level) const { return faces(level).size(); }

  bool contains(const Face& s) const { return index_.contains(s); }

  /// Indices into top_faces() of the top faces containing s (ascending).
  /// Throws NotAFace.
  std::span<const std::uint32_t> cofaces(const Face& s) const;

  /// Position of s in faces(face_dim(s)); throws NotAFace.
  std::size_t face_position(const Face& s) const;

 private:
  struct Entry {
    std::uint32_t position = 0;
    std::vector<std::uint32_t> cofaces;
  };

  int dim_ = 0;
  std::vector<Face> top_;
  std::vector<double> weights_;
  std::vector<std::vector<Face>> levels_;  // levels_[k+1] holds X(k)
  std::vector<VertexId> vertex_list_;
  std::unordered_map<Face, Entry, FaceHash> index_;
};

/// Prob{s}: the chance that s is the set of the first |s| vertices of a
/// randomly ordered top face drawn from the top measure.
double face_measure(const PureComplex& X, const Face& s);

/// Prob of an ordered prefix: face_measure / (k+1)!.
double oriented_face_measure(const PureComplex& X, const OrientedFace& s);

/// The link complex with its conditional measure. Vertex ids are preserved.
/// Throws NotAFace, TopFace.
PureComplex link(const PureComplex& X, const Face& s);

/// Number of level-`level` faces containing s. Throws NotAFace, BadLevel.
std::size_t degree(const PureComplex& X, const Face& s, int level);

/// Max over vertices of the number of top faces containing the vertex.
std::size_t max_vertex_degree(const PureComplex& X);

/// Vertex id of (copy, v) in the tensor complex: v * t + copy, copy in [0, t).
inline VertexId tensor_vertex(VertexId v, std::uint32_t copy, std::uint32_t t) {
  return v * t + copy;
}

/// Tensor of X with the complete complex on t vertices: top faces are all
/// matchings between a top face of X and a (d+1)-subset of the t copies.
/// Throws TooSmallT when t < d + 1.
PureComplex tensor_with_complete(const PureComplex& X, std::uint32_t t);

/// Complete d-dimensional complex on vertices 0..n-1 with uniform measure.
PureComplex complete_complex(std::uint32_t n, int dim);

}  // namespace hdx
