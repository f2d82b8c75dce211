#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/graph.hpp"

namespace hdx {

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending
  double two_sided = 0.0;           // max(|l_2|, |l_n|)
  double one_sided = 0.0;           // l_2
  std::optional<double> bipartite_lambda;
};

/// Full spectrum of the normalized adjacency operator Af(v) = E_{u~v} f(u).
SpectralReport adjacency_spectrum(const WGraph& G);

enum class LambdaMode { OneSided, TwoSided, Bipartite };

/// Throws NotBipartite for Bipartite mode on a graph without sides.
double lambda_report(const WGraph& G, LambdaMode mode);

/// Second singular value of the bipartite operator between the two sides,
/// each side carrying its own probability measure.
double bipartite_lambda(const WGraph& G);

/// Applies A to f (indexed by local vertex).
std::vector<double> apply_adjacency(const WGraph& G, std::span<const double> f);

struct LinkSpectrum {
  Face face;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double two_sided = 0.0;
  bool connected = true;
};

struct HdxReport {
  double threshold = 0.0;
  LambdaMode mode = LambdaMode::TwoSided;
  bool pass = true;
  double worst = 0.0;
  Face worst_face;
  std::vector<LinkSpectrum> links;  // every s in X(k), -1 <= k <= d-2, sorted by (dim, face)
};

/// Certifies every link skeleton by direct eigencomputation. Links whose
/// skeleton cannot be built (a single vertex) count as failing with value 1.
HdxReport is_hdx(const PureComplex& X, double threshold, LambdaMode mode = LambdaMode::TwoSided);

/// Skeleton spectrum of the link of s. Throws what link/one_skeleton throw.
LinkSpectrum link_spectrum(const PureComplex& X, const Face& s);

struct EmlStrategy {
  bool exact = true;
  std::size_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;
  std::size_t exact_subset_limit = 14;
};

struct EmlResult {
  double alpha = 0.0;
  std::vector<VertexId> S;
  std::vector<VertexId> T;
  /// Same maximum with the (1 - nu(S))(1 - nu(T)) factors in the normalizer;
  /// pairs where a factor vanishes are skipped.
  double alpha_full = 0.0;
  bool exact = true;  // false: a lower bound from sampling
  std::uint64_t pairs = 0;
};

/// max |nu(E(S,T)) - nu(S)nu(T)| / sqrt(nu(S)nu(T)) over nonempty S,T that
/// are disjoint (general graphs, oriented edge mass) or S in L, T in R
/// (bipartite graphs, side measures). Throws TooLargeForExact.
EmlResult eml_discrepancy(const WGraph& G, const EmlStrategy& strategy);

struct EmlCheck {
  double lambda = 0.0;
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  double worst_slack = 0.0;  // min over pairs of rhs - lhs
};

/// Exhaustive check of the mixing inequality with the given lambda over all
/// subset pairs (general: all S,T subsets of V; bipartite: S in L, T in R).
EmlCheck eml_exhaustive_check(const WGraph& G, double lambda, std::size_t exact_subset_limit = 14);

/// 260 a (1 + log2(3/a)); throws NonPositiveAlpha.
double converse_eml_bound(double alpha);
/// Same with log2(2/a).
double converse_eml_bound_tight(double alpha);

/// Re-weights G so that a target edge of H is drawn first, then a G edge in
/// its fiber proportionally to the G measure. color[i] is the local H index
/// of local G vertex i. Throws NotAHomomorphism, DegenerateColoring.
WGraph coloring_measure(const WGraph& G, const WGraph& H, std::span<const std::uint32_t> color);

struct CompositionReport {
  double lambda_H = 0.0;       // two-sided
  double lambda_H_one = 0.0;   // one-sided
  double eta = 0.0;            // max fiber bipartite lambda
  double lambda_G = 0.0;       // two-sided under nu_f
  double lambda_G_one = 0.0;   // one-sided under nu_f
  bool pass_two_sided = false;
  bool pass_one_sided = false;
};

CompositionReport composition_check(const WGraph& G, const WGraph& H,
                                     std::span<const std::uint32_t> color);

struct TrickleEntry {
  Face face;     // r in X(k-1)
  double link_lambda = 0.0;  // max two-sided lambda over links of r + v
  double lambda2 = 0.0;      // one-sided lambda of X_r
  double bound = 0.0;        // link_lambda / (1 - link_lambda)
  bool applicable = false;   // premise holds: link_lambda <= 1/2, links connected
  bool pass = true;
};

struct TrickleReport {
  std::vector<TrickleEntry> entries;
  std::size_t applicable = 0;
  std::size_t failures = 0;
};

/// For every r in X(k-1), 0 <= k <= d-2, compares lambda_2 of X_r against
/// lambda/(1-lambda) where lambda bounds the links X_{r+v}.
TrickleReport trickle_down_check(const PureComplex& X, double tolerance = 1e-7);

}  // namespace hdx
