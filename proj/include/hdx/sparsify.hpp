#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hdx/graph.hpp"
#include "hdx/rng.hpp"

namespace hdx {

struct SplitSample {
  std::vector<VertexId> A;
  std::vector<VertexId> B;
  WGraph H;                       // E(A,B) with renormalized measure, A on the left
  std::size_t dropped_vertices = 0;  // split vertices without a crossing edge
};

/// A: each vertex with probability p; B: each remaining vertex with
/// probability p/(1-p). Throws InvalidArgument (p outside (0,1/2)),
/// EmptySide (a side or the crossing edge set came out empty).
SplitSample bipartite_vertex_split(const WGraph& G, double p, Rng& rng);

struct Subsample {
  WGraph graph;
  std::size_t kept_edges = 0;
  std::size_t dropped_vertices = 0;
};

/// Keeps each edge independently with probability p; isolated vertices are
/// dropped. Throws InvalidArgument, EmptyResult.
Subsample edge_subsample(const WGraph& H, double p, Rng& rng);

struct TrialRecord {
  std::size_t trial = 0;
  bool discarded = false;
  std::string reason;
  double lambda_H = 0.0;
  double lambda_H_sub = 0.0;
  std::size_t size_A = 0, size_B = 0;
  bool mass_ok = false;        // common events at the report's common_epsilon
  bool per_vertex_ok = false;
};

struct TrialReport {
  std::size_t trials = 0;
  std::size_t discarded = 0;
  double p_split = 0.0, p_edge = 0.0;
  double lambda_G = 0.0;
  double near_uniformity = 1.0;  // r: weights within [1/(r n), r/n]
  std::size_t min_degree = 0;     // D
  double epsilon = 0.04;
  double split_bound = 0.0;       // 100/p^3 * lambda(G)
  double edge_bound = 0.0;        // 260 eps (1 + ln(3/eps))
  std::size_t split_exceed = 0;
  std::size_t edge_exceed = 0;
  double split_failure_rate = 0.0;  // over kept trials
  double edge_failure_rate = 0.0;
  double common_epsilon = 0.1;
  double mass_rate = 0.0;        // fraction of kept trials with |nu(A) - p| <= eps p
  double per_vertex_rate = 0.0;  // fraction with every vertex's mass into B near p
  std::vector<TrialRecord> records;
};

/// Smallest r with every vertex and edge weight within a factor r of uniform.
double near_uniformity(const WGraph& G);
std::size_t min_degree(const WGraph& G);

/// Runs split then subsample per trial with seeds derived from `seed`.
TrialReport sparsify_trial(const WGraph& G, double p_split, double p_edge, std::size_t trials,
                           std::uint64_t seed, double epsilon = 0.04, double common_epsilon = 0.1);

struct CommonEvents {
  double mass_A = 0.0;
  bool mass_ok = false;              // |nu(A) - p| <= eps p
  double worst_vertex_dev = 0.0;     // max_v |P_{w~v}[w in B] - p|
  bool per_vertex_ok = false;        // worst_vertex_dev <= eps p
};

CommonEvents common_events(const WGraph& G, const SplitSample& split, double p, double epsilon);

}  // namespace hdx
