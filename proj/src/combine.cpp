#include "hdx/combine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hdx/cover.hpp"
#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/spectral.hpp"
#include "hdx/util.hpp"

namespace hdx {

namespace {

std::uint32_t position_in(std::span<const VertexId> vertices, VertexId v) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw Error(ErrorCode::NotAFace, "vertex " + std::to_string(v));
  return static_cast<std::uint32_t>(it - vertices.begin());
}

std::vector<VertexId> image_of(const PureComplex& X, const VertexColoring& f, const Face& s) {
  std::vector<VertexId> img;
  img.reserve(s.size());
  for (VertexId v : s) img.push_back(f[position_in(X.vertices(), v)]);
  std::sort(img.begin(), img.end());
  return img;
}

bool satisfied_image(const PureComplex& C, const std::vector<VertexId>& img) {
  if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
  return C.contains(img);
}

int kind_rank(EventKind k) { return k == EventKind::AC ? 0 : 1; }

}  // namespace

bool c_satisfied(const PureComplex& X, const PureComplex& C, const VertexColoring& f,
                 const Face& face) {
  if (!X.contains(face)) throw Error(ErrorCode::NotAFace, face_to_string(face));
  if (f.size() != X.vertices().size()) throw Error(ErrorCode::InvalidArgument, "coloring size mismatch");
  return satisfied_image(C, image_of(X, f, face));
}

CPruneResult c_pruning(const PureComplex& X, const PureComplex& C, const VertexColoring& f) {
  if (f.size() != X.vertices().size()) throw Error(ErrorCode::InvalidArgument, "coloring size mismatch");
  CPruneResult out;
  std::vector<Face> faces;
  std::vector<Face> images;
  std::vector<double> weights;
  for (std::size_t i = 0; i < X.top_faces().size(); ++i) {
    auto img = image_of(X, f, X.top_faces()[i]);
    if (!satisfied_image(C, img)) continue;
    faces.push_back(X.top_faces()[i]);
    images.push_back(std::move(img));
    weights.push_back(X.top_weight(i));
  }
  out.satisfied_top = faces.size();
  std::map<Face, double> fiber;
  for (std::size_t i = 0; i < faces.size(); ++i) fiber[images[i]] += weights[i];
  for (const Face& c : C.top_faces()) {
    if (!fiber.count(c)) {
      out.degenerate = true;
      out.missing = c;
      break;
    }
  }
  if (faces.empty()) return out;
  if (!out.degenerate) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const double nu_c = C.top_weight(C.cofaces(images[i])[0]);
      weights[i] = nu_c * weights[i] / fiber[images[i]];
    }
  }
  out.Y = PureComplex::build(X.dim(), std::move(faces), std::move(weights));
  return out;
}

CombineProblem::CombineProblem(const PureComplex& X, const PureComplex& C, CombineConfig config)
    : X_(X), C_(C), config_(config) {
  if (X.dim() != C.dim()) throw Error(ErrorCode::InvalidArgument, "X and C differ in dimension");
  if (X.dim() < 2) throw Error(ErrorCode::InvalidArgument, "combine needs d >= 2");
  colors_.assign(C.vertices().begin(), C.vertices().end());
  const int d = X.dim();
  for (int k = 0; k <= d - 2; ++k) {
    for (const Face& a : C.faces(k)) target_links_.emplace(a, one_skeleton(link(C, a)));
  }
  for (int k = 0; k <= d - 1; ++k) {
    for (const Face& tau : X.faces(k)) {
      std::set<VertexId> vs;
      std::set<std::pair<VertexId, VertexId>> es;
      for (auto t : X.cofaces(tau)) {
        const Face rest = face_difference(X.top_faces()[t], tau);
        vs.insert(rest.begin(), rest.end());
        if (k <= d - 2) {
          for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j) es.insert({rest[i], rest[j]});
        }
      }
      link_vertices_[tau].assign(vs.begin(), vs.end());
      if (k <= d - 2) link_edges_[tau].assign(es.begin(), es.end());
      if (config_.kinds & 0x1) events_.push_back({EventKind::AC, tau});
      if ((config_.kinds & 0x2) && k <= d - 2) events_.push_back({EventKind::NE, tau});
    }
  }
  std::sort(events_.begin(), events_.end(), [](const EventRef& a, const EventRef& b) {
    if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.face < b.face;
  });
  for (const auto& e : events_) {
    std::vector<std::uint32_t> s;
    for (VertexId v : e.face) s.push_back(vertex_position(v));
    for (VertexId v : link_vertices_.at(e.face)) s.push_back(vertex_position(v));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    scopes_.push_back(std::move(s));
  }
}

std::uint32_t CombineProblem::vertex_position(VertexId v) const {
  return position_in(X_.vertices(), v);
}

const std::vector<std::uint32_t>& CombineProblem::scope(std::size_t event_index) const {
  return scopes_.at(event_index);
}

std::optional<VertexId> CombineProblem::missing_color(const Face& tau, const VertexColoring& f) const {
  const auto img = image_of(X_, f, tau);
  if (!satisfied_image(C_, img)) return std::nullopt;
  std::set<VertexId> seen;
  for (VertexId u : link_vertices_.at(tau)) seen.insert(f[vertex_position(u)]);
  for (auto t : C_.cofaces(img)) {
    for (VertexId b : face_difference(C_.top_faces()[t], img)) {
      if (!seen.count(b)) return b;
    }
  }
  return std::nullopt;
}

SatisfactionGraph CombineProblem::satisfaction(const Face& tau, const VertexColoring& f) const {
  const auto img = image_of(X_, f, tau);
  if (!satisfied_image(C_, img)) throw Error(ErrorCode::UnsatisfiedBase, face_to_string(tau));
  SatisfactionGraph out;
  out.base = tau;
  out.target = img;
  for (VertexId u : link_vertices_.at(tau)) {
    if (satisfied_image(C_, image_of(X_, f, face_union(tau, Face{u})))) {
      out.vertices.push_back(u);
      out.colors.push_back(f[vertex_position(u)]);
    }
  }
  for (auto [u, w] : link_edges_.at(tau)) {
    const Face full = face_union(tau, Face{u, w});
    if (satisfied_image(C_, image_of(X_, f, full))) {
      out.edges.push_back({u, w, face_measure(X_, full)});
    }
  }
  if (out.edges.empty()) {
    out.failure = "no satisfied link edges";
    return out;
  }
  const auto endpoints = sorted_endpoints(out.edges);
  if (endpoints.size() != out.vertices.size()) {
    out.failure = "isolated vertex in satisfaction graph";
    return out;
  }
  auto it = target_links_.find(img);
  if (it == target_links_.end()) {
    out.failure = "no target link for " + face_to_string(img);
    return out;
  }
  const WGraph& H = it->second;
  std::vector<std::uint32_t> color(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const auto idx = H.index_of(out.colors[i]);
    if (idx < 0) {
      out.failure = "color outside target link";
      return out;
    }
    color[i] = static_cast<std::uint32_t>(idx);
  }
  try {
    out.graph = coloring_measure(WGraph::from_labeled(out.edges), H, color);
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

bool CombineProblem::evaluate(const EventRef& e, const VertexColoring& f) const {
  const int level = face_dim(e.face);
  const int d = X_.dim();
  switch (e.kind) {
    case EventKind::AC: {
      if (level < 0 || level > d - 1) throw Error(ErrorCode::BadKindForFace, "AC needs level <= d-1");
      return missing_color(e.face, f).has_value();
    }
    case EventKind::NE: {
      if (level < 0 || level > d - 2) throw Error(ErrorCode::BadKindForFace, "NE needs level <= d-2");
      if (!satisfied_image(C_, image_of(X_, f, e.face))) return false;
      const auto sat = satisfaction(e.face, f);
      if (!sat.ok()) return true;
      return adjacency_spectrum(*sat.graph).two_sided > config_.lambda;
    }
    default:
      break;
  }
  throw Error(ErrorCode::BadKindForFace, std::string(to_string(e.kind)) + " is not a combine event");
}

bool CombineProblem::evaluate(std::size_t event_index, const VertexColoring& f) const {
  return evaluate(events_.at(event_index), f);
}

CombineOutcome moser_tardos_combine(const CombineProblem& problem, Rng& rng) {
  const PureComplex& X = problem.complex();
  const auto colors = problem.target().vertices();
  const auto& events = problem.events();
  const std::size_t N = events.size();
  const auto& cfg = problem.config();
  const std::size_t budget = cfg.max_resamples ? cfg.max_resamples : 10000 * std::max<std::size_t>(N, 1);

  CombineOutcome out;
  out.num_events = N;
  VertexColoring f(X.vertices().size());
  for (auto& c : f) c = colors[rng.uniform_index(colors.size())];

  std::vector<std::vector<std::uint32_t>> readers(f.size());
  for (std::uint32_t i = 0; i < N; ++i)
    for (auto v : problem.scope(i)) readers[v].push_back(i);
  std::vector<char> truth(N, 0);
  parallel_for(N, [&](std::size_t i) { truth[i] = problem.evaluate(i, f); });
  std::vector<char> mark(N, 0);
  std::vector<std::size_t> touched;
  for (std::size_t iteration = 0;; ++iteration) {
    const auto it = std::find(truth.begin(), truth.end(), 1);
    if (it == truth.end()) {
      out.status = PruneStatus::Clean;
      break;
    }
    if (out.resamples >= budget) {
      out.status = PruneStatus::BudgetExhausted;
      break;
    }
    const auto chosen = static_cast<std::size_t>(it - truth.begin());
    const auto& scope = problem.scope(chosen);
    CombineLogEntry entry;
    entry.iteration = iteration;
    entry.event = events[chosen];
    std::vector<std::uint32_t> changed;
    for (auto v : scope) {
      const VertexId next = colors[rng.uniform_index(colors.size())];
      if (next != f[v]) {
        changed.push_back(v);
        entry.changed.push_back(X.vertices()[v]);
      }
      f[v] = next;
    }
    ++out.resamples;
    touched.clear();
    for (auto v : changed)
      for (auto i : readers[v])
        if (!mark[i]) {
          mark[i] = 1;
          touched.push_back(i);
        }
    parallel_for(touched.size(), [&](std::size_t k) { truth[touched[k]] = problem.evaluate(touched[k], f); });
    for (auto i : touched) mark[i] = 0;
    if (out.log.size() < cfg.max_log_entries) {
      if (cfg.log_scopes) {
        for (auto v : scope) entry.scope.push_back(X.vertices()[v]);
      }
      out.log.push_back(std::move(entry));
    } else {
      out.log_truncated = true;
    }
  }
  for (char t : truth) out.violated_at_end += t ? 1 : 0;
  out.colors = f;
  out.pruned = c_pruning(X, problem.target(), f);
  out.fail = out.status == PruneStatus::Clean && (out.pruned.degenerate || !out.pruned.Y);
  return out;
}

CombineVerification verify_combine(const CombineOutcome& outcome, const PureComplex& X,
                                   const PureComplex& C, double lambda) {
  CombineVerification v;
  v.threshold = lambda < 0.5 ? 2.0 * lambda / (1.0 - 2.0 * lambda)
                             : std::numeric_limits<double>::infinity();
  if (!outcome.pruned.Y) {
    v.homomorphism = v.non_degenerate = v.hdx = v.connected = v.path_argument = false;
    v.fraction_positive = false;
    return v;
  }
  const PureComplex& Y = *outcome.pruned.Y;
  const VertexColoring& f = outcome.colors;
  // Y keeps every vertex of X, so the coloring positions agree.
  for (int k = 0; k <= Y.dim() && v.homomorphism; ++k) {
    for (const Face& s : Y.faces(k)) {
      if (!c_satisfied(X, C, f, s)) {
        v.homomorphism = false;
        v.homomorphism_witness = s;
        break;
      }
    }
  }
  std::set<Face> images;
  for (const Face& t : Y.top_faces()) images.insert(image_of(X, f, t));
  for (int k = 0; k <= C.dim() && v.non_degenerate; ++k) {
    for (const Face& c : C.faces(k)) {
      bool found = false;
      for (const Face& img : images) {
        if (is_subface(c, img)) {
          found = true;
          break;
        }
      }
      if (!found) {
        v.non_degenerate = false;
        v.missing = c;
        break;
      }
    }
  }
  const HdxReport hdx = is_hdx(Y, v.threshold);
  v.worst_lambda = hdx.worst;
  v.hdx = hdx.pass;
  v.margin_headline = v.threshold - hdx.worst;
  v.margin_claim = (lambda < 1.0 ? 2.0 * lambda / (1.0 - lambda) : std::numeric_limits<double>::infinity()) -
                   hdx.worst;

  v.connected = connected_components(Y).count == 1;
  // path argument: from v, step to a neighbor whose color is one step
  // closer (in C) to the color of w, until the colors are adjacent or equal
  std::map<VertexId, std::size_t> cpos;
  for (std::size_t i = 0; i < C.vertices().size(); ++i) cpos[C.vertices()[i]] = i;
  const std::size_t nc = C.vertices().size();
  std::vector<std::vector<std::size_t>> dist(nc, std::vector<std::size_t>(nc, SIZE_MAX));
  std::vector<std::vector<std::size_t>> cadj(nc);
  for (const Face& e : C.faces(1)) {
    cadj[cpos[e[0]]].push_back(cpos[e[1]]);
    cadj[cpos[e[1]]].push_back(cpos[e[0]]);
  }
  for (std::size_t s = 0; s < nc; ++s) {
    std::vector<std::size_t> q{s};
    dist[s][s] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto w : cadj[q[h]])
        if (dist[s][w] == SIZE_MAX) {
          dist[s][w] = dist[s][q[h]] + 1;
          q.push_back(w);
        }
  }
  const auto yv = Y.vertices();
  std::vector<std::vector<std::uint32_t>> yadj(yv.size());
  for (const Face& e : Y.faces(1)) {
    const auto a = position_in(yv, e[0]), b = position_in(yv, e[1]);
    yadj[a].push_back(b);
    yadj[b].push_back(a);
  }
  auto color_of = [&](std::uint32_t i) { return cpos[f[position_in(X.vertices(), yv[i])]]; };
  for (std::uint32_t a = 0; a < yv.size() && v.path_argument; ++a) {
    for (std::uint32_t b = 0; b < yv.size(); ++b) {
      const auto target = color_of(b);
      std::size_t p = dist[color_of(a)][target];
      if (p == SIZE_MAX) {
        v.path_argument = false;
        break;
      }
      if (p <= 1) continue;
      ++v.path_pairs;
      std::uint32_t cur = a;
      while (p > 1) {
        bool stepped = false;
        for (auto nb : yadj[cur]) {
          if (dist[color_of(nb)][target] == p - 1) {
            cur = nb;
            --p;
            stepped = true;
            break;
          }
        }
        if (!stepped) {
          v.path_argument = false;
          break;
        }
      }
      if (!v.path_argument) break;
    }
  }
  v.fractions = face_fractions(Y, X);
  v.fraction_positive = std::all_of(v.fractions.begin(), v.fractions.end(), [](double x) { return x > 0.0; });
  return v;
}

}  // namespace hdx
