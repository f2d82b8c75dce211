#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/labeling.hpp"
#include "hdx/pruning.hpp"
#include "hdx/rng.hpp"
#include "hdx/spectral.hpp"

using namespace hdx;

namespace {

// Labels of X's edges from a vertex potential, as generator indices of S.
Labeling potential_labels(const PureComplex& X, const GroupTable& G, const GenSet& S,
                          const std::function<Element(VertexId)>& g) {
  Labeling f;
  for (const Face& e : X.faces(1)) {
    const Element x = G.mul(G.inv(g(e[0])), g(e[1]));
    const auto it = std::find(S.gens.begin(), S.gens.end(), x);
    REQUIRE(it != S.gens.end());
    f.push_back(static_cast<std::uint32_t>(it - S.gens.begin()));
  }
  return f;
}

Element label_of(const PureComplex& X, const GroupTable& G, const std::vector<Element>& f, VertexId u, VertexId v) {
  const Element x = f[X.face_position(canonical_face({u, v}))];
  return u < v ? x : G.inv(x);
}

}  // namespace

TEST_CASE("sample labeling") {
  auto X = complete_complex(10, 2);
  Rng a(1), b(1);
  CHECK(sample_labeling(X, 4, a) == sample_labeling(X, 4, b));
  Rng c(2);
  for (auto x : sample_labeling(X, 1, c)) CHECK(x == 0);

  auto big = complete_complex(142, 1);  // 10011 edges
  Rng r(3);
  auto f = sample_labeling(big, 4, r);
  REQUIRE(f.size() == 10011);
  std::size_t counts[4] = {0, 0, 0, 0};
  for (auto x : f) ++counts[x];
  const double n = static_cast<double>(f.size()), sigma = std::sqrt(n * 0.25 * 0.75);
  for (auto k : counts) CHECK(std::abs(static_cast<double>(k) - n / 4) <= 3 * sigma);
}

TEST_CASE("satisfied faces") {
  auto Z2 = GroupTable::cyclic(2);
  auto T = PureComplex::build_uniform(2, {{0, 1, 2}});
  std::vector<Element> ones(3, 1);
  CHECK_FALSE(is_satisfied(T, Z2, ones, {0, 1, 2}));
  CHECK(is_satisfied(T, Z2, ones, {0, 1}));
  CHECK(is_satisfied(T, Z2, ones, {}));

  auto S3 = GroupTable::symmetric(3);
  auto X = complete_complex(6, 3);
  std::vector<Element> pot = {0, 3, 5, 1, 2, 4};
  std::vector<Element> f;
  for (const Face& e : X.faces(1)) f.push_back(S3.mul(S3.inv(pot[e[0]]), pot[e[1]]));
  EdgeIndex idx(X);
  for (int k = 0; k <= 3; ++k)
    for (const Face& s : X.faces(k)) CHECK(is_satisfied(idx, S3, f, s));
}

TEST_CASE("odd triangles on K4 come in pairs") {
  auto Z2 = GroupTable::cyclic(2);
  auto K4 = complete_complex(4, 2);
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Element> f(6);
    for (unsigned i = 0; i < 6; ++i) f[i] = mask >> i & 1;
    std::size_t odd = 0;
    for (const Face& t : K4.faces(2)) odd += !is_satisfied(K4, Z2, f, t);
    CHECK(odd % 2 == 0);
  }
}

TEST_CASE("f-pruning") {
  auto Z2 = GroupTable::cyclic(2);
  auto K4 = complete_complex(4, 2);
  std::vector<Element> zero(6, 0);
  auto all = f_pruning(K4, Z2, zero);
  REQUIRE_FALSE(all.empty());
  CHECK(all.complex->top_faces().size() == 4);

  // flipping one edge makes exactly the two triangles through it odd
  std::vector<Element> one = zero;
  one[K4.face_position({0, 1})] = 1;
  auto two = f_pruning(K4, Z2, one);
  REQUIRE_FALSE(two.empty());
  CHECK(two.satisfied_top == 2);
  CHECK(two.complex->top_faces()[0] == Face{0, 2, 3});
  CHECK(two.complex->top_faces()[1] == Face{1, 2, 3});

  // a triangle with all labels 1 in Z/2
  auto T = PureComplex::build_uniform(2, {{0, 1, 2}});
  CHECK(f_pruning(T, Z2, std::vector<Element>(3, 1)).empty());
}

TEST_CASE("satisfaction graphs") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto C = cayley_clique_complex(Z5, S, 2);
  TargetLinks targets(C.complex, 0);

  auto X = complete_complex(40, 2);
  EdgeIndex idx(X);
  Rng rng(12);
  auto f = label_elements(S, sample_labeling(X, 4, rng));

  auto empty = satisfaction_graph(X, idx, Z5, f, {}, targets);
  CHECK(empty.vertices.size() == 40);
  REQUIRE(empty.ok());
  CHECK(empty.graph->num_edges() == X.faces(1).size());

  for (VertexId v : {0u, 7u, 39u}) {
    auto sat = satisfaction_graph(X, idx, Z5, f, {v}, targets);
    std::map<Element, std::size_t> mine, direct;
    for (Element c : sat.colors) ++mine[c];
    for (VertexId u = 0; u < 40; ++u)
      if (u != v) ++direct[label_of(X, Z5, f, v, u)];
    CHECK(mine == direct);
    // satisfied link edges: triangles {v,u,w} closing up
    std::size_t expect = 0;
    for (VertexId u = 0; u < 40; ++u)
      for (VertexId w = u + 1; w < 40; ++w)
        if (u != v && w != v && Z5.mul(label_of(X, Z5, f, v, u), label_of(X, Z5, f, u, w)) == label_of(X, Z5, f, v, w))
          ++expect;
    CHECK(sat.edges.size() == expect);
  }

  // coboundary labels: the satisfaction graph is the whole link skeleton
  auto K5 = complete_complex(5, 2);
  EdgeIndex i5(K5);
  std::vector<Element> cob;
  for (const Face& e : K5.faces(1)) cob.push_back(Z5.mul(Z5.inv(e[0]), e[1]));
  auto full = satisfaction_graph(K5, i5, Z5, cob, {0}, targets);
  REQUIRE(full.ok());
  CHECK(full.edges.size() == 6);
  CHECK(full.vertices.size() == 4);

  std::vector<Element> bad = cob;
  bad[K5.face_position({0, 1})] = 0;
  // {0,1} alone is an edge, always satisfied; a triangle through it is not
  CHECK_THROWS_AS(satisfaction_graph(K5, i5, Z5, bad, {0, 1, 2}, targets), Error);
}

TEST_CASE("events") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto X = complete_complex(12, 2);
  PruneConfig cfg;
  PruneProblem P(X, Z5, S, cfg);

  // selection order: AT < NE < BC, then faces
  for (std::size_t i = 1; i < P.events().size(); ++i) CHECK(P.events()[i - 1] < P.events()[i]);
  std::size_t at = 0, ne = 0, bc = 0;
  for (const auto& e : P.events()) {
    at += e.kind == EventKind::AT;
    ne += e.kind == EventKind::NE;
    bc += e.kind == EventKind::BC;
  }
  CHECK(at == 12 + 66);
  CHECK(ne == 12);
  CHECK(bc == 12);

  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = sample_labeling(X, 4, rng);
    auto elems = label_elements(S, f);
    for (VertexId v = 0; v < 12; ++v) {
      // BC oracle: products around triangles at v
      std::set<Element> realized;
      for (VertexId u = 0; u < 12; ++u)
        for (VertexId w = u + 1; w < 12; ++w) {
          if (u == v || w == v) continue;
          const Element p = Z5.mul(Z5.mul(label_of(X, Z5, elems, v, u), label_of(X, Z5, elems, u, w)),
                                   label_of(X, Z5, elems, w, v));
          realized.insert(p);
          realized.insert(Z5.inv(p));
        }
      bool missing = false;
      for (Element s : S.gens) missing = missing || !realized.count(s);
      CHECK(P.evaluate({EventKind::BC, {v}}, f) == missing);

      // AT oracle: tuple frequencies over the link
      auto dist = P.tuple_distribution({v}, f);
      std::vector<double> mine(4, 0.0);
      for (VertexId u = 0; u < 12; ++u)
        if (u != v) mine[P.dir_index(f, v, u)] += 1.0 / 11;
      for (std::size_t k = 0; k < 4; ++k) CHECK(dist[k] == doctest::Approx(mine[k]));
      bool at_true = false;
      for (double p : mine) at_true = at_true || p <= 1.0 / (2.25 * 4) || p >= 2.25 / 4;
      CHECK(P.evaluate({EventKind::AT, {v}}, f) == at_true);

      // NE oracle
      auto sat = P.satisfaction({v}, f);
      const bool ne_true = !sat.ok() || adjacency_spectrum(*sat.graph).two_sided > cfg.lambda / 2;
      CHECK(P.evaluate({EventKind::NE, {v}}, f) == ne_true);
    }
  }
  CHECK_THROWS_AS(P.evaluate({EventKind::BC, {0, 1}}, Labeling(X.faces(1).size(), 0)), Error);
  CHECK_THROWS_AS(P.evaluate({EventKind::NE, {0, 1}}, Labeling(X.faces(1).size(), 0)), Error);
}

TEST_CASE("AT is false for a single generator tuple") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto K5 = complete_complex(5, 2);
  PruneConfig cfg;
  cfg.kinds = kEventAT;
  PruneProblem P(K5, Z5, S, cfg);
  auto f = potential_labels(K5, Z5, S, [](VertexId v) { return static_cast<Element>(v); });
  // each vertex sees each generator exactly once among its 4 neighbors
  for (VertexId v = 0; v < 5; ++v) CHECK_FALSE(P.evaluate({EventKind::AT, {v}}, f));
}

TEST_CASE("NE is true on a disconnected satisfaction graph") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto X = complete_complex(8, 2);
  PruneProblem P(X, Z5, S, {});
  // all labels +1 from 0: triangles never close, so links have no edges
  Labeling f(X.faces(1).size(), 0);
  auto sat = P.satisfaction({0}, f);
  CHECK_FALSE(sat.ok());
  CHECK(P.evaluate({EventKind::NE, {0}}, f));
}

TEST_CASE("dependency scope") {
  auto K4 = complete_complex(4, 2);
  auto s = dependency_scope(K4, {0});
  CHECK(s.edges.size() == 6);

  // a long strip of triangles: the far end does not meet vertex 0's scope
  std::vector<Face> strip;
  for (VertexId i = 0; i + 2 < 12; ++i) strip.push_back({i, i + 1, i + 2});
  auto X = PureComplex::build_uniform(2, strip);
  auto s0 = dependency_scope(X, {0});
  EdgeIndex idx(X);
  const auto far = idx.at(10, 11);
  CHECK_FALSE(std::binary_search(s0.edges.begin(), s0.edges.end(), far));
  CHECK(s0.within_bound);

  // a larger face reads nothing beyond its vertices' scopes
  auto s01 = dependency_scope(X, {0, 1});
  auto s1 = dependency_scope(X, {1});
  for (auto e : s01.edges) {
    const bool covered = std::binary_search(s0.edges.begin(), s0.edges.end(), e) ||
                         std::binary_search(s1.edges.begin(), s1.edges.end(), e);
    CHECK(covered);
  }
}

TEST_CASE("moser-tardos prune") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto X = complete_complex(30, 2);
  PruneConfig cfg;
  cfg.max_resamples = 300;
  PruneProblem P(X, Z5, S, cfg);
  Rng a(9), b(9);
  auto o1 = moser_tardos_prune(P, a);
  auto o2 = moser_tardos_prune(P, b);
  CHECK(o1.labels == o2.labels);
  REQUIRE(o1.log.size() == o2.log.size());
  for (std::size_t i = 0; i < o1.log.size(); ++i) {
    CHECK(o1.log[i].event == o2.log[i].event);
    CHECK(o1.log[i].changed == o2.log[i].changed);
  }
  // every resample redraws the read set of the chosen event, and only it
  for (const auto& e : o1.log) {
    CHECK(e.scope == P.read_set(e.event));
    for (auto x : e.changed) CHECK(std::binary_search(e.scope.begin(), e.scope.end(), x));
  }

  // a loose configuration reaches clean; then no event holds
  PruneConfig loose;
  loose.kinds = kEventAT | kEventBC;
  loose.at_max_level = 0;
  PruneProblem L(X, Z5, S, loose);
  Rng c(4);
  auto o = moser_tardos_prune(L, c);
  REQUIRE(o.status == PruneStatus::Clean);
  for (std::size_t i = 0; i < L.events().size(); ++i) CHECK_FALSE(L.evaluate(i, o.labels));
  CHECK(o.violated_at_end == 0);
}

TEST_CASE("pruned measure and ratio audit") {
  auto Z5 = GroupTable::cyclic(5);
  auto S = make_genset(Z5, {1, 4, 2, 3});
  auto K5 = complete_complex(5, 2);
  PruneConfig cfg;
  PruneProblem P(K5, Z5, S, cfg);
  auto f = potential_labels(K5, Z5, S, [](VertexId v) { return static_cast<Element>(v); });
  auto elems = label_elements(S, f);
  auto Y = f_pruning(K5, Z5, elems);
  REQUIRE(Y.satisfied_top == 10);
  auto pm = pruned_measure(*Y.complex, K5, P.edge_index(), Z5, elems, P.cayley());
  CHECK(pm.raw_total == doctest::Approx(1.0).epsilon(1e-12));
  double total = 0;
  for (double w : pm.complex.top_weights()) total += w;
  CHECK(total == doctest::Approx(1.0));
  for (VertexId v = 0; v < 5; ++v) {
    auto audit = measure_ratio_audit(pm.complex, P, f, {v});
    CHECK(audit.pass);
    CHECK(audit.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
  }

  // larger r can only loosen the audit
  PruneConfig wide = cfg;
  wide.r = 3.0;
  PruneProblem W(K5, Z5, S, wide);
  for (VertexId v = 0; v < 5; ++v) {
    auto a = measure_ratio_audit(pm.complex, P, f, {v});
    auto b = measure_ratio_audit(pm.complex, W, f, {v});
    CHECK(b.bound >= a.bound);
    if (a.pass) CHECK(b.pass);
  }

  // one triangle realizes too few label patterns
  auto T = PureComplex::build_uniform(2, {{0, 1, 2}});
  std::vector<Element> tf = {1, 2, 1};
  EdgeIndex ti(T);
  CHECK_THROWS_AS(pruned_measure(T, T, ti, Z5, tf, P.cayley()), Error);

  auto fr = face_fractions(*Y.complex, K5);
  for (double x : fr) CHECK(x == doctest::Approx(1.0));
}
