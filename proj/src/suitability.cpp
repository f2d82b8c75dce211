#include "hdx/suitability.hpp"

#include <algorithm>
#include <cmath>

#include "hdx/error.hpp"
#include "hdx/graph.hpp"
#include "hdx/parallel.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

SuitabilityReport check_suitable(const PureComplex& X, double c, double r, double eta) {
  if (!(c > 1.0) || !(r > 1.0) || !(eta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need c > 1, r > 1, eta > 0");
  }
  if (X.dim() < 2) throw Error(ErrorCode::InvalidArgument, "suitability needs d >= 2");
  SuitabilityReport rep;
  rep.c = c;
  rep.r = r;
  rep.eta = eta;
  const HdxReport hdx = is_hdx(X, eta);
  rep.hdx = hdx.pass;
  rep.hdx_worst = hdx.worst;
  rep.hdx_witness = hdx.worst_face;

  rep.Q = max_vertex_degree(X);
  rep.degree_bound = c * (1.0 + std::log(static_cast<double>(rep.Q)));
  rep.min_degree = SIZE_MAX;

  std::vector<Face> faces;
  for (int k = -1; k <= X.dim() - 2; ++k) {
    const auto& level = X.faces(k);
    faces.insert(faces.end(), level.begin(), level.end());
  }
  struct Local {
    std::size_t min_degree = SIZE_MAX;
    double ratio = 1.0;
  };
  std::vector<Local> local(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const WGraph G = faces[i].empty() ? one_skeleton(X) : one_skeleton(link(X, faces[i]));
    Local& l = local[i];
    for (std::uint32_t v = 0; v < G.num_vertices(); ++v) l.min_degree = std::min(l.min_degree, G.neighbors(v).size());
    const double nv = static_cast<double>(G.num_vertices());
    const double ne = static_cast<double>(G.num_edges());
    for (double x : G.vertex_measures()) l.ratio = std::max({l.ratio, x * nv, 1.0 / (x * nv)});
    for (const auto& e : G.edges()) l.ratio = std::max({l.ratio, e.weight * ne, 1.0 / (e.weight * ne)});
  });
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (local[i].min_degree < rep.min_degree) rep.min_degree = local[i].min_degree;
    if (static_cast<double>(local[i].min_degree) < rep.degree_bound && !rep.degree_witness) {
      rep.degree = false;
      rep.degree_witness = faces[i];
    }
    if (local[i].ratio > rep.worst_weight_ratio) rep.worst_weight_ratio = local[i].ratio;
    if (local[i].ratio > r * (1.0 + 1e-12) && !rep.weight_witness) {
      rep.weights = false;
      rep.weight_witness = faces[i];
    }
  }
  return rep;
}

}  // namespace hdx
