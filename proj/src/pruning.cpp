#include "hdx/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/spectral.hpp"
#include "hdx/util.hpp"

namespace hdx {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::AT: return "AT";
    case EventKind::NE: return "NE";
    case EventKind::BC: return "BC";
    case EventKind::AC: return "AC";
  }
  return "?";
}

const char* to_string(PruneStatus s) {
  return s == PruneStatus::Clean ? "clean" : "budget_exhausted";
}

Labeling sample_labeling(const PureComplex& X, std::size_t m, Rng& rng) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "labeling needs m >= 1");
  Labeling f(X.dim() >= 1 ? X.num_faces(1) : 0);
  for (auto& x : f) x = static_cast<std::uint32_t>(rng.uniform_index(m));
  return f;
}

std::vector<Element> label_elements(const GenSet& S, const Labeling& f) {
  std::vector<Element> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= S.size()) throw Error(ErrorCode::InvalidArgument, "label out of range");
    out[i] = S[f[i]];
  }
  return out;
}

PrunedComplex f_pruning(const PureComplex& X, const GroupTable& G, std::span<const Element> f) {
  const EdgeIndex edges(X);
  std::vector<Face> faces;
  std::vector<double> weights;
  for (std::size_t i = 0; i < X.top_faces().size(); ++i) {
    if (is_satisfied(edges, G, f, X.top_faces()[i])) {
      faces.push_back(X.top_faces()[i]);
      weights.push_back(X.top_weight(i));
    }
  }
  PrunedComplex out;
  out.satisfied_top = faces.size();
  if (!faces.empty()) out.complex = PureComplex::build(X.dim(), std::move(faces), std::move(weights));
  return out;
}

TargetLinks::TargetLinks(const PureComplex& C, int max_level) {
  for (int k = 0; k <= std::min(max_level, C.dim() - 1); ++k) {
    for (const Face& a : C.faces(k)) {
      if (a[0] != 0) continue;
      const PureComplex L = link(C, a);
      if (L.dim() >= 1) graphs_.emplace(a, one_skeleton(L));
    }
  }
}

const WGraph* TargetLinks::find(const Face& a) const {
  auto it = graphs_.find(a);
  return it == graphs_.end() ? nullptr : &it->second;
}

namespace {

// Vertices u with base + u in X, and pairs u < w with base + uw in X.
void link_census(const PureComplex& X, const Face& base, std::vector<VertexId>& vertices,
                 std::vector<std::pair<VertexId, VertexId>>* edges) {
  std::set<VertexId> vs;
  std::set<std::pair<VertexId, VertexId>> es;
  for (std::uint32_t t : X.cofaces(base)) {
    const Face rest = face_difference(X.top_faces()[t], base);
    vs.insert(rest.begin(), rest.end());
    if (edges) {
      for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j) es.insert({rest[i], rest[j]});
    }
  }
  vertices.assign(vs.begin(), vs.end());
  if (edges) edges->assign(es.begin(), es.end());
}

}  // namespace

namespace {

// Satisfaction graph from a precomputed link census; `out` carries the base.
SatisfactionGraph satisfaction_core(const EdgeIndex& edges, const GroupTable& G,
                                    std::span<const Element> f, const Face& base,
                                    std::span<const VertexId> link_vs,
                                    std::span<const std::pair<VertexId, VertexId>> link_es,
                                    std::span<const double> link_mass, const TargetLinks& targets,
                                    SatisfactionGraph out) {
  for (VertexId u : link_vs) {
    if (is_satisfied(edges, G, f, face_union(base, Face{u}))) out.vertices.push_back(u);
  }
  for (std::size_t i = 0; i < link_es.size(); ++i) {
    const auto [u, w] = link_es[i];
    if (is_satisfied(edges, G, f, face_union(base, Face{u, w}))) out.edges.push_back({u, w, link_mass[i]});
  }
  const VertexId u0 = base[0];
  for (VertexId v : out.vertices) out.colors.push_back(dir_label(edges, G, f, u0, v));

  std::vector<VertexId> target{0};
  for (std::size_t j = 1; j < base.size(); ++j) target.push_back(dir_label(edges, G, f, u0, base[j]));
  std::sort(target.begin(), target.end());
  out.target = target;

  if (out.edges.empty()) {
    out.failure = "no satisfied link edges";
    return out;
  }
  const auto endpoints = sorted_endpoints(out.edges);
  if (endpoints.size() != out.vertices.size()) {
    for (VertexId v : out.vertices) {
      if (!std::binary_search(endpoints.begin(), endpoints.end(), v)) {
        out.failure = "isolated vertex " + std::to_string(v);
        return out;
      }
    }
  }
  if (std::adjacent_find(target.begin(), target.end()) != target.end()) {
    out.failure = "repeated label in target face";
    return out;
  }
  const WGraph* H = targets.find(out.target);
  if (!H) {
    out.failure = "target " + face_to_string(out.target) + " is not a face of C";
    return out;
  }
  std::vector<std::uint32_t> color(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const auto idx = H->index_of(out.colors[i]);
    if (idx < 0) {
      out.failure = "color " + std::to_string(out.colors[i]) + " outside target link";
      return out;
    }
    color[i] = static_cast<std::uint32_t>(idx);
  }
  try {
    const WGraph base_graph = WGraph::from_labeled(out.edges);
    out.graph = coloring_measure(base_graph, *H, color);
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

}  // namespace

SatisfactionGraph satisfaction_graph(const PureComplex& X, const EdgeIndex& edges,
                                     const GroupTable& G, std::span<const Element> f,
                                     const Face& base, const TargetLinks& targets) {
  if (!X.contains(base)) throw Error(ErrorCode::NotAFace, face_to_string(base));
  if (face_dim(base) > X.dim() - 2) {
    throw Error(ErrorCode::BadLevel, "satisfaction graph needs dim(base) <= d-2");
  }
  if (!is_satisfied(edges, G, f, base)) {
    throw Error(ErrorCode::UnsatisfiedBase, face_to_string(base));
  }
  SatisfactionGraph out;
  out.base = base;
  if (base.empty()) {
    for (VertexId v : X.vertices()) out.vertices.push_back(v);
    for (const Face& e : X.faces(1)) out.edges.push_back({e[0], e[1], face_measure(X, e)});
    out.graph = one_skeleton(X);
    return out;
  }
  std::vector<VertexId> link_vs;
  std::vector<std::pair<VertexId, VertexId>> link_es;
  link_census(X, base, link_vs, &link_es);
  std::vector<double> link_mass;
  for (auto [u, w] : link_es) link_mass.push_back(face_measure(X, face_union(base, Face{u, w})));
  return satisfaction_core(edges, G, f, base, link_vs, link_es, link_mass, targets, std::move(out));
}

PruneProblem::PruneProblem(const PureComplex& X, const GroupTable& G, const GenSet& S,
                           PruneConfig config)
    : X_(X),
      G_(G),
      S_(S),
      config_(config),
      C_(X.dim() >= 2 ? cayley_clique_complex(G, S, X.dim()).complex : PureComplex{}),
      edges_(X),
      targets_(C_, X.dim() - 2),
      inverse_(inverse_indices(G, S)) {
  if (X.dim() < 2) throw Error(ErrorCode::InvalidArgument, "pruning needs d >= 2");
  if (!(config_.r > 1.0)) throw Error(ErrorCode::InvalidArgument, "r must exceed 1");
  if (!(config_.lambda > 0.0 && config_.lambda < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0,1)");
  }
  const int d = X.dim();
  const int at_max = std::min(config_.at_max_level.value_or(d - 1), d - 1);
  for (int k = 0; k <= d - 1; ++k) {
    for (const Face& tau : X.faces(k)) {
      slots_.emplace(tau, link_vertices_.size());
      link_vertices_.emplace_back();
      link_edges_.emplace_back();
      link_census(X, tau, link_vertices_.back(), k <= d - 2 ? &link_edges_.back() : nullptr);
      std::vector<double> mass;
      double total = 0.0;
      for (VertexId u : link_vertices_.back()) {
        mass.push_back(face_measure(X, face_union(tau, Face{u})));
        total += mass.back();
      }
      for (auto& x : mass) x /= total;
      link_vertex_measure_.push_back(std::move(mass));
      std::vector<double> edge_mass;
      for (auto [u, w] : link_edges_.back()) edge_mass.push_back(face_measure(X, face_union(tau, Face{u, w})));
      link_edge_measure_.push_back(std::move(edge_mass));
      if ((config_.kinds & kEventAT) && k <= at_max) events_.push_back({EventKind::AT, tau});
      if ((config_.kinds & kEventNE) && k <= d - 2) events_.push_back({EventKind::NE, tau});
      if ((config_.kinds & kEventBC) && k == 0) events_.push_back({EventKind::BC, tau});
    }
  }
  std::sort(events_.begin(), events_.end());
  read_sets_.reserve(events_.size());
  for (const auto& e : events_) read_sets_.push_back(read_set(e));
}

std::size_t PruneProblem::face_slot(const Face& tau) const {
  auto it = slots_.find(tau);
  if (it == slots_.end()) throw Error(ErrorCode::NotAFace, face_to_string(tau));
  return it->second;
}

std::uint32_t PruneProblem::dir_index(const Labeling& f, VertexId u, VertexId v) const {
  const std::uint32_t x = f[edges_.at(u, v)];
  return u < v ? x : inverse_[x];
}

std::vector<std::uint32_t> PruneProblem::read_set(const EventRef& e) const {
  std::vector<std::uint32_t> out;
  const Face& tau = e.face;
  const std::size_t slot = face_slot(tau);
  const auto& lv = link_vertices_[slot];
  for (VertexId v : tau)
    for (VertexId u : lv) out.push_back(edges_.at(v, u));
  if (e.kind == EventKind::NE || e.kind == EventKind::BC) {
    for (std::size_t i = 0; i < tau.size(); ++i)
      for (std::size_t j = i + 1; j < tau.size(); ++j) out.push_back(edges_.at(tau[i], tau[j]));
    for (auto [u, w] : link_edges_[slot]) out.push_back(edges_.at(u, w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<std::uint32_t>& PruneProblem::read_set(std::size_t event_index) const {
  return read_sets_.at(event_index);
}

std::vector<double> PruneProblem::tuple_distribution(const Face& tau, const Labeling& f) const {
  const std::size_t slot = face_slot(tau);
  const std::size_t m = S_.size();
  std::size_t M = 1;
  for (std::size_t j = 0; j < tau.size(); ++j) M *= m;
  std::vector<double> prob(M, 0.0);
  const auto& lv = link_vertices_[slot];
  const auto& mass = link_vertex_measure_[slot];
  for (std::size_t i = 0; i < lv.size(); ++i) {
    std::size_t idx = 0, scale = 1;
    for (VertexId v : tau) {
      idx += dir_index(f, v, lv[i]) * scale;
      scale *= m;
    }
    prob[idx] += mass[i];
  }
  return prob;
}

bool PruneProblem::eval_at(const Face& tau, const Labeling& f) const {
  const auto prob = tuple_distribution(tau, f);
  const double M = static_cast<double>(prob.size());
  const double r2 = config_.r * config_.r;
  const double lo = 1.0 / (r2 * M), hi = r2 / M;
  for (double p : prob)
    if (p <= lo || p >= hi) return true;
  return false;
}

SatisfactionGraph PruneProblem::satisfaction(const Face& base, const Labeling& f) const {
  const auto elems = label_elements(S_, f);
  return satisfaction_graph(X_, edges_, G_, elems, base, targets_);
}

bool PruneProblem::eval_ne(const Face& tau, const Labeling& f) const {
  const auto elems = label_elements(S_, f);
  if (!is_satisfied(edges_, G_, elems, tau)) return false;
  const std::size_t slot = face_slot(tau);
  SatisfactionGraph seed;
  seed.base = tau;
  const auto sat = satisfaction_core(edges_, G_, elems, tau, link_vertices_[slot], link_edges_[slot],
                                     link_edge_measure_[slot], targets_, std::move(seed));
  if (!sat.ok()) return true;
  return adjacency_spectrum(*sat.graph).two_sided > config_.ne();
}

bool PruneProblem::eval_bc(const Face& tau, const Labeling& f) const {
  const VertexId v = tau[0];
  const std::size_t slot = face_slot(tau);
  std::vector<char> realized(G_.order(), 0);
  auto elem = [&](VertexId a, VertexId b) { return S_[dir_index(f, a, b)]; };
  for (auto [u, w] : link_edges_[slot]) {
    const Element p = G_.mul(G_.mul(elem(v, u), elem(u, w)), elem(w, v));
    realized[p] = 1;
    realized[G_.inv(p)] = 1;
  }
  for (Element s : S_.gens)
    if (!realized[s]) return true;
  return false;
}

bool PruneProblem::evaluate(const EventRef& e, const Labeling& f) const {
  if (f.size() != edges_.size()) throw Error(ErrorCode::InvalidArgument, "labeling size mismatch");
  const int level = face_dim(e.face);
  const int d = X_.dim();
  switch (e.kind) {
    case EventKind::AT:
      if (level < 0 || level > d - 1) throw Error(ErrorCode::BadKindForFace, "AT needs level <= d-1");
      return eval_at(e.face, f);
    case EventKind::NE:
      if (level < 0 || level > d - 2) throw Error(ErrorCode::BadKindForFace, "NE needs level <= d-2");
      return eval_ne(e.face, f);
    case EventKind::BC:
      if (level != 0) throw Error(ErrorCode::BadKindForFace, "BC needs a vertex");
      return eval_bc(e.face, f);
    case EventKind::AC:
      break;
  }
  throw Error(ErrorCode::BadKindForFace, "AC belongs to the combine construction");
}

bool PruneProblem::evaluate(std::size_t event_index, const Labeling& f) const {
  return evaluate(events_.at(event_index), f);
}

ScopeReport dependency_scope(const PureComplex& X, const Face& tau) {
  if (!X.contains(tau)) throw Error(ErrorCode::NotAFace, face_to_string(tau));
  const auto& edge_faces = X.faces(1);
  std::map<VertexId, std::vector<std::uint32_t>> incident;
  for (std::uint32_t i = 0; i < edge_faces.size(); ++i) {
    incident[edge_faces[i][0]].push_back(i);
    incident[edge_faces[i][1]].push_back(i);
  }
  auto scope_of = [&](const Face& t) {
    std::vector<VertexId> lv;
    if (face_dim(t) < X.dim()) link_census(X, t, lv, nullptr);
    lv.insert(lv.end(), t.begin(), t.end());
    std::vector<std::uint32_t> s;
    for (VertexId v : lv) {
      const auto& inc = incident[v];
      s.insert(s.end(), inc.begin(), inc.end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  ScopeReport report;
  report.edges = scope_of(tau);
  for (int k = 0; k <= X.dim() - 1; ++k) {
    for (const Face& other : X.faces(k)) {
      if (other == tau) continue;
      const auto s = scope_of(other);
      std::vector<std::uint32_t> common;
      std::set_intersection(s.begin(), s.end(), report.edges.begin(), report.edges.end(),
                            std::back_inserter(common));
      if (!common.empty()) ++report.neighbor_faces;
    }
  }
  std::size_t R = 0;
  for (const auto& [v, inc] : incident) R = std::max(R, inc.size());
  const double Q = static_cast<double>(max_vertex_degree(X));
  const double d = X.dim();
  const double Rd = static_cast<double>(R);
  report.bound = d * std::pow(2.0, d) * Q * (1.0 + Rd + Rd * Rd);
  report.within_bound = static_cast<double>(report.neighbor_faces) <= report.bound;
  return report;
}

PruneOutcome moser_tardos_prune(const PruneProblem& problem, Rng& rng) {
  const PureComplex& X = problem.complex();
  const std::size_t m = problem.gens().size();
  const auto& events = problem.events();
  const std::size_t N = events.size();
  const auto& cfg = problem.config();
  const std::size_t budget = cfg.max_resamples ? cfg.max_resamples : 10000 * std::max<std::size_t>(N, 1);

  PruneOutcome out;
  out.num_events = N;
  Labeling f = sample_labeling(X, m, rng);

  std::vector<std::vector<std::uint32_t>> readers(f.size());
  for (std::uint32_t i = 0; i < N; ++i)
    for (std::uint32_t e : problem.read_set(i)) readers[e].push_back(i);

  // Events are evaluated lazily: the first true event in order is all the
  // engine needs, so stale entries past it are left dirty.
  std::vector<char> truth(N, 0), dirty(N, 1);
  auto first_true = [&]() -> std::size_t {
    for (std::size_t i = 0; i < N; ++i) {
      if (dirty[i]) {
        truth[i] = problem.evaluate(i, f);
        dirty[i] = 0;
      }
      if (truth[i]) return i;
    }
    return N;
  };

  for (std::size_t iteration = 0;; ++iteration) {
    const std::size_t chosen = first_true();
    if (chosen == N) {
      out.status = PruneStatus::Clean;
      break;
    }
    if (out.resamples >= budget) {
      out.status = PruneStatus::BudgetExhausted;
      break;
    }
    const auto& scope = problem.read_set(chosen);
    LogEntry entry;
    entry.iteration = iteration;
    entry.event = events[chosen];
    for (std::uint32_t e : scope) {
      const auto next = static_cast<std::uint32_t>(rng.uniform_index(m));
      if (next != f[e]) entry.changed.push_back(e);
      f[e] = next;
    }
    ++out.resamples;
    for (std::uint32_t e : entry.changed)
      for (std::uint32_t i : readers[e]) dirty[i] = 1;
    if (out.log.size() < cfg.max_log_entries) {
      if (cfg.log_scopes) entry.scope = scope;
      out.log.push_back(std::move(entry));
    } else {
      out.log_truncated = true;
    }
  }
  std::vector<std::size_t> stale;
  for (std::size_t i = 0; i < N; ++i)
    if (dirty[i]) stale.push_back(i);
  parallel_for(stale.size(), [&](std::size_t k) { truth[stale[k]] = problem.evaluate(stale[k], f); });
  for (std::size_t i = 0; i < N; ++i) {
    if (truth[i]) {
      ++out.violated_at_end;
      ++out.violated_by_kind[events[i].kind];
    }
  }
  out.labels = f;
  out.elements = label_elements(problem.gens(), f);
  auto pruned = f_pruning(X, problem.group(), out.elements);
  if (!pruned.empty()) {
    out.Y = std::move(pruned.complex);
    try {
      out.Y_measured = pruned_measure(*out.Y, X, problem.edge_index(), problem.group(),
                                      out.elements, problem.cayley())
                           .complex;
    } catch (const Error& e) {
      out.unmeasurable = e.what();
    }
  }
  return out;
}

PrunedMeasure pruned_measure(const PureComplex& Y, const PureComplex& X, const EdgeIndex& edges,
                             const GroupTable& G, std::span<const Element> f,
                             const PureComplex& C) {
  const int d = Y.dim();
  if (d != X.dim() || d != C.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const PureComplex Ce = link(C, Face{0});
  const double orderings_c = factorial(d);
  std::map<std::vector<Element>, double> pattern_prob;
  for (std::size_t i = 0; i < Ce.top_faces().size(); ++i) {
    std::vector<Element> p(Ce.top_faces()[i].begin(), Ce.top_faces()[i].end());
    do pattern_prob[p] += Ce.top_weight(i) / orderings_c;
    while (std::next_permutation(p.begin(), p.end()));
  }
  auto pattern_of = [&](const std::vector<VertexId>& o) {
    std::vector<Element> p(o.size() - 1);
    for (std::size_t j = 1; j < o.size(); ++j) p[j - 1] = dir_label(edges, G, f, o[0], o[j]);
    return p;
  };
  std::map<std::vector<Element>, double> fiber_mass;
  for (std::size_t i = 0; i < Y.top_faces().size(); ++i) {
    std::vector<VertexId> o = Y.top_faces()[i];
    do fiber_mass[pattern_of(o)] += Y.top_weight(i);
    while (std::next_permutation(o.begin(), o.end()));
  }
  for (const auto& [p, prob] : pattern_prob) {
    if (fiber_mass.find(p) == fiber_mass.end()) {
      std::string w = "(";
      for (std::size_t j = 0; j < p.size(); ++j) w += (j ? "," : "") + std::to_string(p[j]);
      throw Error(ErrorCode::Unmeasurable, "no top face realizes pattern " + w + ")");
    }
  }
  std::vector<Face> faces(Y.top_faces().begin(), Y.top_faces().end());
  std::vector<double> weights(faces.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::vector<VertexId> o = faces[i];
    do {
      const auto p = pattern_of(o);
      auto it = pattern_prob.find(p);
      if (it == pattern_prob.end()) {
        throw Error(ErrorCode::Unmeasurable, "face " + face_to_string(faces[i]) +
                                                 " has a pattern outside the identity link");
      }
      weights[i] += it->second * Y.top_weight(i) / fiber_mass[p];
    } while (std::next_permutation(o.begin(), o.end()));
    total += weights[i];
  }
  return {PureComplex::build(d, std::move(faces), std::move(weights)), total};
}

RatioAudit measure_ratio_audit(const PureComplex& Y_measured, const PruneProblem& problem,
                               const Labeling& f, const Face& sigma) {
  RatioAudit audit;
  audit.base = sigma;
  const int d = problem.complex().dim();
  audit.bound = std::pow(problem.config().r, 15.0 * d);
  auto fail = [&](std::string why) {
    audit.pass = false;
    audit.max_ratio = std::numeric_limits<double>::infinity();
    audit.witness = std::move(why);
    return audit;
  };
  const auto sat = problem.satisfaction(sigma, f);
  if (!sat.ok()) return fail("satisfaction graph: " + sat.failure);
  if (!Y_measured.contains(sigma)) return fail("base not in Y");
  const WGraph Gy = one_skeleton(link(Y_measured, sigma));
  const WGraph& Gs = *sat.graph;
  if (Gy.num_vertices() != Gs.num_vertices() || Gy.num_edges() != Gs.num_edges()) {
    return fail("link and satisfaction graph differ as sets");
  }
  auto consider = [&](double a, double b, const std::string& what) {
    if (a <= 0.0 || b <= 0.0) return false;
    const double ratio = std::max(a / b, b / a);
    if (ratio > audit.max_ratio) {
      audit.max_ratio = ratio;
      audit.witness = what;
    }
    return true;
  };
  for (std::uint32_t i = 0; i < Gy.num_vertices(); ++i) {
    const auto j = Gs.index_of(Gy.label(i));
    if (j < 0) return fail("vertex " + std::to_string(Gy.label(i)) + " missing");
    consider(Gy.vertex_measure(i), Gs.vertex_measure(static_cast<std::uint32_t>(j)),
             "vertex " + std::to_string(Gy.label(i)));
  }
  std::map<std::pair<VertexId, VertexId>, double> gs_edges;
  for (const auto& e : Gs.edges()) gs_edges[{Gs.label(e.u), Gs.label(e.v)}] = e.weight;
  for (const auto& e : Gy.edges()) {
    std::pair<VertexId, VertexId> key{Gy.label(e.u), Gy.label(e.v)};
    if (key.first > key.second) std::swap(key.first, key.second);
    auto it = gs_edges.find(key);
    if (it == gs_edges.end()) return fail("edge missing from satisfaction graph");
    consider(e.weight, it->second,
             "edge {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}");
  }
  audit.pass = audit.max_ratio <= audit.bound;
  return audit;
}

std::vector<double> face_fractions(const PureComplex& Y, const PureComplex& X) {
  std::vector<double> out;
  for (int l = 0; l <= X.dim(); ++l) {
    out.push_back(static_cast<double>(Y.num_faces(l)) / static_cast<double>(X.num_faces(l)));
  }
  return out;
}

}  // namespace hdx
