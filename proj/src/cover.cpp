#include "hdx/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/util.hpp"

namespace hdx {

CocycleCheck is_cocycle(const PureComplex& X, const GroupTable& G, std::span<const Element> f) {
  CocycleCheck check;
  if (X.dim() < 2) return check;
  if (f.size() != X.num_faces(1)) throw Error(ErrorCode::InvalidArgument, "labeling size mismatch");
  const EdgeIndex edges(X);
  for (const Face& t : X.faces(2)) {
    if (!is_satisfied(edges, G, f, t)) {
      check.ok = false;
      check.witness = t;
      return check;
    }
  }
  return check;
}

Cocycle coboundary(const PureComplex& X, const GroupTable& G,
                   const std::function<Element(VertexId)>& potential) {
  Cocycle f;
  for (const Face& e : X.faces(1)) f.push_back(G.mul(G.inv(potential(e[0])), potential(e[1])));
  return f;
}

Face CoverComplex::project(const Face& s) const {
  std::vector<VertexId> out;
  for (VertexId v : s) out.push_back(base_vertex(v));
  return canonical_face(std::move(out));
}

CoverComplex build_cover(const PureComplex& X, const GroupTable& G, std::span<const Element> f) {
  if (X.dim() < 2) throw Error(ErrorCode::InvalidArgument, "covers are built for d >= 2");
  const auto check = is_cocycle(X, G, f);
  if (!check.ok) throw Error(ErrorCode::NotACocycle, "triangle " + face_to_string(*check.witness));
  const EdgeIndex edges(X);
  CoverComplex cover;
  cover.group_order = G.order();
  std::vector<Face> faces;
  std::vector<double> weights;
  faces.reserve(X.top_faces().size() * G.order());
  for (std::size_t i = 0; i < X.top_faces().size(); ++i) {
    const Face& t = X.top_faces()[i];
    for (Element g0 = 0; g0 < G.order(); ++g0) {
      Face lifted;
      lifted.reserve(t.size());
      lifted.push_back(cover.lift(t[0], g0));
      for (std::size_t j = 1; j < t.size(); ++j) {
        lifted.push_back(cover.lift(t[j], G.mul(g0, dir_label(edges, G, f, t[0], t[j]))));
      }
      faces.push_back(std::move(lifted));
      weights.push_back(X.top_weight(i) / static_cast<double>(G.order()));
    }
  }
  cover.complex = PureComplex::build(X.dim(), std::move(faces), std::move(weights));
  return cover;
}

std::vector<Element> holonomy_subgroup(const PureComplex& X, const GroupTable& G,
                                       std::span<const Element> f, VertexId v, TreeKind tree) {
  if (!X.contains(Face{v})) throw Error(ErrorCode::NotAFace, "vertex " + std::to_string(v));
  const EdgeIndex edges(X);
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Face& e : X.faces(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  // potential p(w) = product of directed labels along the tree path v -> w
  std::map<VertexId, Element> p;
  std::map<std::pair<VertexId, VertexId>, bool> tree_edge;
  p[v] = 0;
  std::vector<VertexId> work{v};
  std::size_t head = 0;
  while (head < work.size()) {
    VertexId u;
    if (tree == TreeKind::Bfs) {
      u = work[head++];
    } else {
      u = work.back();
      work.pop_back();
    }
    for (VertexId w : adj[u]) {
      if (p.count(w)) continue;
      p[w] = G.mul(p[u], dir_label(edges, G, f, u, w));
      tree_edge[{std::min(u, w), std::max(u, w)}] = true;
      work.push_back(w);
    }
    if (tree == TreeKind::Dfs) head = 0;
  }
  if (p.size() != X.vertices().size()) {
    throw Error(ErrorCode::Disconnected, "1-skeleton reaches " + std::to_string(p.size()) + " of " +
                                             std::to_string(X.vertices().size()) + " vertices");
  }
  std::vector<Element> seeds;
  for (const Face& e : X.faces(1)) {
    if (tree_edge.count({e[0], e[1]})) continue;
    const Element loop = G.mul(G.mul(p[e[0]], dir_label(edges, G, f, e[0], e[1])), G.inv(p[e[1]]));
    seeds.push_back(loop);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return subgroup_closure(G, seeds);
}

Components connected_components(const PureComplex& X) {
  Components c;
  c.vertices.assign(X.vertices().begin(), X.vertices().end());
  const std::size_t n = c.vertices.size();
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto pos = [&](VertexId id) {
    return static_cast<std::uint32_t>(std::lower_bound(c.vertices.begin(), c.vertices.end(), id) -
                                      c.vertices.begin());
  };
  if (X.dim() >= 1) {
    for (const Face& e : X.faces(1)) {
      const auto a = find(pos(e[0])), b = find(pos(e[1]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::uint32_t, std::uint32_t> ids;
  c.label.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto root = find(i);
    auto [it, inserted] = ids.emplace(root, static_cast<std::uint32_t>(ids.size()));
    c.label[i] = it->second;
  }
  c.count = ids.size();
  return c;
}

CoverVerification verify_cover(const PureComplex& cover, const PureComplex& X,
                               const std::function<VertexId(VertexId)>& phi) {
  CoverVerification report;
  auto image = [&](const Face& s) {
    std::vector<VertexId> out;
    for (VertexId v : s) out.push_back(phi(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  // homomorphism on top faces and surjectivity onto top faces
  std::vector<char> hit(X.top_faces().size(), 0);
  for (const Face& t : cover.top_faces()) {
    const auto img = image(t);
    if (std::adjacent_find(img.begin(), img.end()) != img.end() || !X.contains(img) ||
        static_cast<int>(img.size()) != X.dim() + 1) {
      report.homomorphism = false;
      report.violations.push_back(t);
      continue;
    }
    hit[X.cofaces(img)[0]] = 1;
  }
  report.surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  if (!report.homomorphism) {
    report.pass = false;
    return report;
  }

  std::vector<Face> faces;
  for (int k = 0; k <= cover.dim(); ++k) {
    const auto& level = cover.faces(k);
    faces.insert(faces.end(), level.begin(), level.end());
  }
  report.faces_checked = faces.size();
  std::vector<char> bad(faces.size(), 0);
  // link measure of s: top weights over cofaces, normalized
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& s = faces[i];
    const Face base = image(s);
    const auto up = cover.cofaces(s);
    const auto down = X.cofaces(base);
    if (up.size() != down.size()) {
      bad[i] = 1;
      return;
    }
    double up_total = 0.0, down_total = 0.0;
    for (auto t : up) up_total += cover.top_weight(t);
    for (auto t : down) down_total += X.top_weight(t);
    std::map<Face, double> expected;
    for (auto t : down) expected[face_difference(X.top_faces()[t], base)] = X.top_weight(t) / down_total;
    std::map<VertexId, VertexId> vertex_map;
    for (auto t : up) {
      const Face rest = face_difference(cover.top_faces()[t], s);
      for (VertexId v : rest) {
        auto [it, inserted] = vertex_map.emplace(v, phi(v));
        (void)it;
        (void)inserted;
      }
      auto it = expected.find(image(rest));
      if (it == expected.end() ||
          std::abs(it->second - cover.top_weight(t) / up_total) > 1e-12) {
        bad[i] = 1;
        return;
      }
      expected.erase(it);
    }
    // phi must be injective on the link's vertices
    std::vector<VertexId> imgs;
    for (const auto& [v, w] : vertex_map) imgs.push_back(w);
    std::sort(imgs.begin(), imgs.end());
    if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end() || !expected.empty()) bad[i] = 1;
  });
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (bad[i]) report.violations.push_back(faces[i]);
  report.pass = report.surjective && report.homomorphism && report.violations.empty();
  return report;
}

Cocycle push_cocycle(const PureComplex& X, const GroupTable& G, std::span<const Element> f,
                     const Quotient& q) {
  const auto check = is_cocycle(X, G, f);
  if (!check.ok) throw Error(ErrorCode::NotACocycle, "triangle " + face_to_string(*check.witness));
  Cocycle out;
  out.reserve(f.size());
  for (Element x : f) out.push_back(q.projection.at(x));
  return out;
}

}  // namespace hdx
