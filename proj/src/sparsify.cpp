#include "hdx/sparsify.hpp"

#include <algorithm>
#include <cmath>

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

SplitSample bipartite_vertex_split(const WGraph& G, double p, Rng& rng) {
  if (!(p > 0.0 && p < 0.5)) throw Error(ErrorCode::InvalidArgument, "p_split must lie in (0, 1/2)");
  const std::size_t n = G.num_vertices();
  std::vector<std::int8_t> side(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.bernoulli(p)) side[i] = 0;
  const double q = p / (1.0 - p);
  for (std::size_t i = 0; i < n; ++i)
    if (side[i] < 0 && rng.bernoulli(q)) side[i] = 1;
  std::vector<VertexId> A, B;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (side[i] == 0) A.push_back(G.label(i));
    if (side[i] == 1) B.push_back(G.label(i));
  }
  if (A.empty() || B.empty()) throw Error(ErrorCode::EmptySide, A.empty() ? "A is empty" : "B is empty");
  std::vector<LabeledEdge> cross;
  for (const auto& e : G.edges()) {
    if (side[e.u] >= 0 && side[e.v] >= 0 && side[e.u] != side[e.v]) {
      cross.push_back({G.label(e.u), G.label(e.v), e.weight});
    }
  }
  if (cross.empty()) throw Error(ErrorCode::EmptySide, "no edges between A and B");
  std::vector<VertexId> left_sorted = A;
  auto in_A = [&](VertexId id) { return std::binary_search(left_sorted.begin(), left_sorted.end(), id); };
  std::sort(left_sorted.begin(), left_sorted.end());
  WGraph H = WGraph::from_labeled_bipartite(cross, in_A);
  const std::size_t dropped = A.size() + B.size() - H.num_vertices();
  return {std::move(A), std::move(B), std::move(H), dropped};
}

Subsample edge_subsample(const WGraph& H, double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p_edge must lie in (0, 1]");
  std::vector<LabeledEdge> kept;
  for (const auto& e : H.edges()) {
    if (p >= 1.0 || rng.bernoulli(p)) kept.push_back({H.label(e.u), H.label(e.v), e.weight});
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyResult, "no edge survived");
  std::optional<WGraph> out;
  if (H.bipartite()) {
    out = WGraph::from_labeled_bipartite(kept, [&](VertexId id) {
      return H.side(static_cast<std::uint32_t>(H.index_of(id))) == Side::Left;
    });
  } else {
    out = WGraph::from_labeled(kept);
  }
  const std::size_t dropped = H.num_vertices() - out->num_vertices();
  return {std::move(*out), kept.size(), dropped};
}

double near_uniformity(const WGraph& G) {
  double r = 1.0;
  const double n = static_cast<double>(G.num_vertices());
  const double m = static_cast<double>(G.num_edges());
  for (double x : G.vertex_measures()) r = std::max({r, x * n, 1.0 / (x * n)});
  for (const auto& e : G.edges()) r = std::max({r, e.weight * m, 1.0 / (e.weight * m)});
  return r;
}

std::size_t min_degree(const WGraph& G) {
  std::size_t D = SIZE_MAX;
  for (std::uint32_t i = 0; i < G.num_vertices(); ++i) D = std::min(D, G.neighbors(i).size());
  return D;
}

TrialReport sparsify_trial(const WGraph& G, double p_split, double p_edge, std::size_t trials,
                           std::uint64_t seed, double epsilon, double common_epsilon) {
  TrialReport report;
  report.trials = trials;
  report.p_split = p_split;
  report.p_edge = p_edge;
  report.epsilon = epsilon;
  report.common_epsilon = common_epsilon;
  report.lambda_G = adjacency_spectrum(G).two_sided;
  report.near_uniformity = near_uniformity(G);
  report.min_degree = min_degree(G);
  report.split_bound = 100.0 / (p_split * p_split * p_split) * report.lambda_G;
  report.edge_bound = 260.0 * epsilon * (1.0 + std::log(3.0 / epsilon));
  report.records.resize(trials);
  parallel_for(trials, [&](std::size_t t) {
    TrialRecord& rec = report.records[t];
    rec.trial = t;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    try {
      const SplitSample split = bipartite_vertex_split(G, p_split, rng);
      rec.size_A = split.A.size();
      rec.size_B = split.B.size();
      rec.lambda_H = bipartite_lambda(split.H);
      const CommonEvents ev = common_events(G, split, p_split, common_epsilon);
      rec.mass_ok = ev.mass_ok;
      rec.per_vertex_ok = ev.per_vertex_ok;
      const Subsample sub = edge_subsample(split.H, p_edge, rng);
      rec.lambda_H_sub = bipartite_lambda(sub.graph);
    } catch (const Error& e) {
      rec.discarded = true;
      rec.reason = e.what();
    }
  });
  std::size_t kept = 0;
  for (const auto& rec : report.records) {
    if (rec.discarded) {
      ++report.discarded;
      continue;
    }
    ++kept;
    if (rec.lambda_H > report.split_bound) ++report.split_exceed;
    if (rec.lambda_H_sub > report.edge_bound) ++report.edge_exceed;
    if (rec.mass_ok) report.mass_rate += 1.0;
    if (rec.per_vertex_ok) report.per_vertex_rate += 1.0;
  }
  if (kept) {
    report.split_failure_rate = static_cast<double>(report.split_exceed) / static_cast<double>(kept);
    report.edge_failure_rate = static_cast<double>(report.edge_exceed) / static_cast<double>(kept);
    report.mass_rate /= static_cast<double>(kept);
    report.per_vertex_rate /= static_cast<double>(kept);
  }
  return report;
}

CommonEvents common_events(const WGraph& G, const SplitSample& split, double p, double epsilon) {
  CommonEvents ev;
  std::vector<char> inA(G.num_vertices(), 0), inB(G.num_vertices(), 0);
  for (VertexId a : split.A) inA[static_cast<std::size_t>(G.index_of(a))] = 1;
  for (VertexId b : split.B) inB[static_cast<std::size_t>(G.index_of(b))] = 1;
  for (std::uint32_t i = 0; i < G.num_vertices(); ++i)
    if (inA[i]) ev.mass_A += G.vertex_measure(i);
  ev.mass_ok = std::abs(ev.mass_A - p) <= epsilon * p;
  for (std::uint32_t v = 0; v < G.num_vertices(); ++v) {
    double into_B = 0.0;
    for (auto nb : G.neighbors(v))
      if (inB[nb.vertex]) into_B += 0.5 * G.edges()[nb.edge].weight;
    ev.worst_vertex_dev = std::max(ev.worst_vertex_dev, std::abs(into_B / G.vertex_measure(v) - p));
  }
  ev.per_vertex_ok = ev.worst_vertex_dev <= epsilon * p;
  return ev;
}

}  // namespace hdx
