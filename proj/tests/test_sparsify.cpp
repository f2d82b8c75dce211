#include <doctest.h>

#include <cmath>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/graph.hpp"
#include "hdx/rng.hpp"
#include "hdx/sparsify.hpp"
#include "hdx/spectral.hpp"

using namespace hdx;

namespace {

double binom_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

}  // namespace

TEST_CASE("vertex split marginals on K_300") {
  auto G = one_skeleton(complete_complex(300, 1));
  const int seeds = 10000;
  std::vector<std::size_t> inB(300, 0), inA(300, 0);
  for (int s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(42, static_cast<std::uint64_t>(s)));
    auto split = bipartite_vertex_split(G, 0.3, rng);
    for (auto v : split.A) ++inA[v];
    for (auto v : split.B) ++inB[v];
  }
  const double sigma = std::sqrt(0.3 * 0.7 / seeds);
  // every vertex within 4 sigma; pooled frequency within 3 sigma of the pooled mean
  double pooledA = 0, pooledB = 0;
  for (std::size_t v = 0; v < 300; ++v) {
    CHECK(std::abs(inB[v] / double(seeds) - 0.3) <= 4.5 * sigma);
    pooledA += inA[v];
    pooledB += inB[v];
  }
  CHECK(std::abs(pooledB / (300.0 * seeds) - 0.3) <= 3 * sigma / std::sqrt(300.0));
  CHECK(std::abs(pooledA / (300.0 * seeds) - 0.3) <= 3 * sigma / std::sqrt(300.0));
}

TEST_CASE("vertex split with small p") {
  auto G = one_skeleton(complete_complex(100, 1));
  const double p = 0.01, q = p / (1 - p);
  // expected |A| given that both sides came out nonempty
  double num = 0, den = 0;
  for (int a = 1; a <= 100; ++a) {
    const double w = binom_pmf(100, a, p) * (1 - std::pow(1 - q, 100 - a));
    num += a * w;
    den += w;
  }
  double sum = 0, sumsq = 0;
  std::size_t kept = 0, empty = 0;
  for (int s = 0; s < 10000; ++s) {
    Rng rng(derive_seed(7, static_cast<std::uint64_t>(s)));
    try {
      auto split = bipartite_vertex_split(G, p, rng);
      sum += split.A.size();
      sumsq += double(split.A.size()) * split.A.size();
      ++kept;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptySide);
      ++empty;
    }
  }
  const double mean = sum / kept, var = sumsq / kept - mean * mean;
  CHECK(std::abs(mean - num / den) <= 4 * std::sqrt(var / kept));
  CHECK(std::abs(empty / 10000.0 - (1 - den)) <= 4 * std::sqrt(den * (1 - den) / 10000));
  Rng r(1);
  CHECK_THROWS_AS(bipartite_vertex_split(G, 0.5, r), Error);
}

TEST_CASE("split is reproducible") {
  auto G = one_skeleton(complete_complex(50, 1));
  Rng a(3), b(3);
  auto s1 = bipartite_vertex_split(G, 0.3, a);
  auto s2 = bipartite_vertex_split(G, 0.3, b);
  CHECK(s1.A == s2.A);
  CHECK(s1.B == s2.B);
  CHECK(bipartite_lambda(s1.H) == bipartite_lambda(s2.H));
}

TEST_CASE("edge subsample") {
  // bipartite graph with 10^4 edges
  std::vector<LabeledEdge> es;
  for (VertexId i = 0; i < 100; ++i)
    for (VertexId j = 0; j < 100; ++j) es.push_back({i, 1000 + j, 1.0 + (i + j) % 3});
  auto H = WGraph::from_labeled_bipartite(es, [](VertexId v) { return v < 1000; });
  Rng r1(1);
  auto same = edge_subsample(H, 1.0, r1);
  CHECK(same.graph.num_edges() == H.num_edges());
  CHECK(bipartite_lambda(same.graph) == doctest::Approx(bipartite_lambda(H)));

  Rng r2(2);
  auto half = edge_subsample(H, 0.5, r2);
  CHECK(std::abs(double(half.kept_edges) - 5000.0) <= 3 * std::sqrt(10000 * 0.25));
  double total = 0;
  for (const auto& e : half.graph.edges()) total += e.weight;
  CHECK(total == doctest::Approx(1.0));
  // survivors keep their relative weights
  const auto& e0 = half.graph.edges()[0];
  const double w0 = 1.0 + (half.graph.label(e0.u) + half.graph.label(e0.v) - 1000) % 3;
  double raw = 0;
  for (const auto& e : half.graph.edges()) raw += 1.0 + (half.graph.label(e.u) + half.graph.label(e.v) - 1000) % 3;
  CHECK(e0.weight == doctest::Approx(w0 / raw));
  CHECK_THROWS_AS(edge_subsample(H, 0.0, r2), Error);
}

TEST_CASE("trial reports") {
  auto G = one_skeleton(complete_complex(60, 1));
  CHECK(near_uniformity(G) == doctest::Approx(1.0));
  CHECK(min_degree(G) == 59);
  auto t = sparsify_trial(G, 0.3, 1.0, 10, 5);
  for (const auto& r : t.records) {
    if (!r.discarded) CHECK(r.lambda_H_sub == doctest::Approx(r.lambda_H));
  }
  CHECK(t.split_bound == doctest::Approx(100 / (0.3 * 0.3 * 0.3) * (1.0 / 59)));
  auto again = sparsify_trial(G, 0.3, 1.0, 10, 5);
  for (std::size_t i = 0; i < t.records.size(); ++i) CHECK(t.records[i].lambda_H == again.records[i].lambda_H);
}
