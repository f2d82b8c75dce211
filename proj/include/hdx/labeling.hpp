#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/group.hpp"

namespace hdx {

/// Constant-time lookup of an edge's position in X.faces(1).
class EdgeIndex {
 public:
  explicit EdgeIndex(const PureComplex& X);
  /// Position or -1.
  std::int64_t find(VertexId u, VertexId v) const;
  /// Throws NotAnEdge.
  std::uint32_t at(VertexId u, VertexId v) const {
    if (side_ && u < side_ && v < side_) {
      const std::uint32_t i = dense_[u * side_ + v];
      if (i != kNone) return i;
    }
    return at_slow(u, v);
  }
  std::size_t size() const { return count_; }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  static constexpr std::size_t kDenseLimit = 2048;
  std::uint32_t lookup(VertexId u, VertexId v) const;
  std::uint32_t at_slow(VertexId u, VertexId v) const;
  static std::uint64_t key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  std::size_t count_ = 0;
  std::size_t side_ = 0;               // dense table side, 0 when hashing
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> map_;
};

/// f(uv) read from u to v: the stored element when u < v, else its inverse.
/// `f` is indexed by edge position. Throws NotAnEdge.
Element dir_label(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                  VertexId u, VertexId v);
Element dir_label(const EdgeIndex& edges, const GroupTable& G, std::span<const Element> f,
                  VertexId u, VertexId v);

/// Every i<j<k in the face has f(v_i v_j) f(v_j v_k) = f(v_i v_k).
/// Throws NotAFace.
bool is_satisfied(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                  const Face& face);
bool is_satisfied(const EdgeIndex& edges, const GroupTable& G, std::span<const Element> f,
                  const Face& face);

}  // namespace hdx
