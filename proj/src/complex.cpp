#include "hdx/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hdx/error.hpp"
#include "hdx/util.hpp"

namespace hdx {

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ f.size();
  for (VertexId v : f) h = (h ^ v) * 0x100000001b3ULL + (h >> 29);
  return h;
}

Face canonical_face(std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorCode::InvalidArgument, "face has repeated vertex: " + face_to_string(vertices));
  }
  return vertices;
}

Face face_union(const Face& a, const Face& b) {
  Face out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Face face_difference(const Face& outer, const Face& inner) {
  Face out;
  std::set_difference(outer.begin(), outer.end(), inner.begin(), inner.end(),
                      std::back_inserter(out));
  return out;
}

bool is_subface(const Face& inner, const Face& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

PureComplex PureComplex::build(int dim, std::vector<Face> faces, std::vector<double> weights) {
  if (dim < 0) throw Error(ErrorCode::InvalidArgument, "negative dimension");
  if (faces.empty()) throw Error(ErrorCode::ZeroMeasure, "no top faces");
  if (weights.empty()) weights.assign(faces.size(), 1.0);
  if (weights.size() != faces.size()) {
    throw Error(ErrorCode::InvalidArgument, "weights and faces differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].size() != static_cast<std::size_t>(dim) + 1) {
      throw Error(ErrorCode::NonPure, "face " + face_to_string(faces[i]) + " is not of size " +
                                          std::to_string(dim + 1));
    }
    faces[i] = canonical_face(std::move(faces[i]));
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::InvalidArgument, "weight must be finite and nonnegative");
    }
    total += weights[i];
  }
  if (total <= 0.0) throw Error(ErrorCode::ZeroMeasure, "all top weights are zero");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (weights[i] == 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "zero-weight top face " + face_to_string(faces[i]));
    }
  }

  std::vector<std::size_t> order(faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return faces[a] < faces[b]; });

  PureComplex X;
  X.dim_ = dim;
  X.top_.reserve(faces.size());
  X.weights_.reserve(faces.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Face& f = faces[order[k]];
    if (k > 0 && f == X.top_.back()) {
      throw Error(ErrorCode::DuplicateFace, face_to_string(f));
    }
    X.top_.push_back(std::move(f));
    X.weights_.push_back(weights[order[k]] / total);
  }

  // Index every subface (including the empty face) by the top faces above it.
  const std::size_t width = static_cast<std::size_t>(dim) + 1;
  const std::uint32_t subsets = 1u << width;
  X.levels_.assign(width + 1, {});
  for (std::uint32_t ti = 0; ti < X.top_.size(); ++ti) {
    const Face& t = X.top_[ti];
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      Face s;
      s.reserve(width);
      for (std::size_t b = 0; b < width; ++b) {
        if (mask & (1u << b)) s.push_back(t[b]);
      }
      auto [it, inserted] = X.index_.try_emplace(std::move(s));
      if (inserted) X.levels_[it->first.size()].push_back(it->first);
      it->second.cofaces.push_back(ti);
    }
  }
  for (auto& level : X.levels_) {
    std::sort(level.begin(), level.end());
    for (std::uint32_t p = 0; p < level.size(); ++p) X.index_[level[p]].position = p;
  }
  X.vertex_list_.reserve(X.levels_[1].size());
  for (const Face& v : X.levels_[1]) X.vertex_list_.push_back(v[0]);
  return X;
}

PureComplex PureComplex::build_uniform(int dim, std::vector<Face> faces) {
  return build(dim, std::move(faces), {});
}

const std::vector<Face>& PureComplex::faces(int level) const {
  if (level < -1 || level > dim_) {
    throw Error(ErrorCode::BadLevel, "level " + std::to_string(level) + " outside [-1, " +
                                         std::to_string(dim_) + "]");
  }
  return levels_[static_cast<std::size_t>(level + 1)];
}

std::span<const std::uint32_t> PureComplex::cofaces(const Face& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw Error(ErrorCode::NotAFace, face_to_string(s));
  return it->second.cofaces;
}

std::size_t PureComplex::face_position(const Face& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw Error(ErrorCode::NotAFace, face_to_string(s));
  return it->second.position;
}

double face_measure(const PureComplex& X, const Face& s) {
  double sum = 0.0;
  for (std::uint32_t t : X.cofaces(s)) sum += X.top_weight(t);
  return sum / binomial(X.dim() + 1, static_cast<int>(s.size()));
}

double oriented_face_measure(const PureComplex& X, const OrientedFace& s) {
  const Face set = canonical_face(s);
  return face_measure(X, set) / factorial(static_cast<int>(s.size()));
}

PureComplex link(const PureComplex& X, const Face& s) {
  const auto above = X.cofaces(s);
  if (static_cast<int>(s.size()) == X.dim() + 1) {
    throw Error(ErrorCode::TopFace, "link of top face " + face_to_string(s) + " is empty");
  }
  std::vector<Face> faces;
  std::vector<double> weights;
  faces.reserve(above.size());
  weights.reserve(above.size());
  for (std::uint32_t t : above) {
    faces.push_back(face_difference(X.top_faces()[t], s));
    weights.push_back(X.top_weight(t));
  }
  return PureComplex::build(X.dim() - static_cast<int>(s.size()), std::move(faces),
                            std::move(weights));
}

std::size_t degree(const PureComplex& X, const Face& s, int level) {
  const auto above = X.cofaces(s);
  if (level < face_dim(s) || level > X.dim()) {
    throw Error(ErrorCode::BadLevel, "level " + std::to_string(level) + " for face " +
                                         face_to_string(s));
  }
  if (level == X.dim()) return above.size();
  const std::size_t extra = static_cast<std::size_t>(level + 1) - s.size();
  std::vector<Face> found;
  for (std::uint32_t t : above) {
    const Face rest = face_difference(X.top_faces()[t], s);
    for_each_combination(rest.size(), extra, [&](std::span<const std::size_t> pick) {
      Face f = s;
      for (std::size_t p : pick) f.push_back(rest[p]);
      std::sort(f.begin(), f.end());
      found.push_back(std::move(f));
    });
  }
  std::sort(found.begin(), found.end());
  return static_cast<std::size_t>(std::unique(found.begin(), found.end()) - found.begin());
}

std::size_t max_vertex_degree(const PureComplex& X) {
  std::size_t q = 0;
  for (VertexId v : X.vertices()) q = std::max(q, X.cofaces(Face{v}).size());
  return q;
}

PureComplex tensor_with_complete(const PureComplex& X, std::uint32_t t) {
  const std::size_t width = static_cast<std::size_t>(X.dim()) + 1;
  if (t < width) {
    throw Error(ErrorCode::TooSmallT,
                "t=" + std::to_string(t) + " < d+1=" + std::to_string(width));
  }
  std::vector<Face> faces;
  std::vector<double> weights;
  const double per_match =
      1.0 / (binomial(static_cast<int>(t), static_cast<int>(width)) * factorial(static_cast<int>(width)));
  for (std::size_t ti = 0; ti < X.top_faces().size(); ++ti) {
    const Face& base = X.top_faces()[ti];
    for_each_combination(t, width, [&](std::span<const std::size_t> copies) {
      std::vector<std::size_t> perm(copies.begin(), copies.end());
      do {
        Face f(width);
        for (std::size_t j = 0; j < width; ++j) {
          f[j] = tensor_vertex(base[j], static_cast<std::uint32_t>(perm[j]), t);
        }
        faces.push_back(std::move(f));
        weights.push_back(X.top_weight(ti) * per_match);
      } while (std::next_permutation(perm.begin(), perm.end()));
    });
  }
  return PureComplex::build(X.dim(), std::move(faces), std::move(weights));
}

PureComplex complete_complex(std::uint32_t n, int dim) {
  if (dim < 0 || n < static_cast<std::uint32_t>(dim) + 1) {
    throw Error(ErrorCode::InvalidArgument, "complete complex needs n >= d+1");
  }
  std::vector<Face> faces;
  for_each_combination(n, static_cast<std::size_t>(dim) + 1,
                       [&](std::span<const std::size_t> pick) {
                         faces.emplace_back(pick.begin(), pick.end());
                       });
  return PureComplex::build_uniform(dim, std::move(faces));
}

}  // namespace hdx
