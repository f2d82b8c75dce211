#include <doctest.h>

#include <set>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/graph.hpp"
#include "hdx/rng.hpp"
#include "hdx/suitability.hpp"
#include "hdx/util.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

PureComplex random_complex(Rng& rng, std::uint32_t n, int d, std::size_t tops) {
  std::set<Face> faces;
  while (faces.size() < tops) {
    std::set<VertexId> s;
    while (s.size() < static_cast<std::size_t>(d + 1)) s.insert(static_cast<VertexId>(rng.uniform_index(n)));
    faces.insert(Face(s.begin(), s.end()));
  }
  std::vector<double> w;
  for (std::size_t i = 0; i < faces.size(); ++i) w.push_back(0.1 + rng.uniform01());
  return PureComplex::build(d, {faces.begin(), faces.end()}, w);
}

}  // namespace

TEST_CASE("build normalizes and rejects bad input") {
  auto X = PureComplex::build(2, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}, {1, 1, 1, 1});
  CHECK(X.top_faces().size() == 4);
  for (double w : X.top_weights()) CHECK(w == doctest::Approx(0.25));
  CHECK(code_of([] { PureComplex::build(2, {{1, 2, 3}, {1, 2, 4, 5}}, {1, 1}); }) == ErrorCode::NonPure);
  CHECK(code_of([] { PureComplex::build(2, {{1, 2, 3}, {3, 2, 1}}, {1, 1}); }) == ErrorCode::DuplicateFace);
  CHECK(code_of([] { PureComplex::build(1, {{1, 2}}, {0}); }) == ErrorCode::ZeroMeasure);
  CHECK(code_of([] { PureComplex::build(1, {{1, 2}, {2, 3}}, {1, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { PureComplex::build(1, {{1, 1}}, {1}); }) == ErrorCode::InvalidArgument);

  std::vector<Face> cycle;
  for (VertexId i = 0; i < 6; ++i) cycle.push_back({i, (i + 1) % 6});
  auto C6 = PureComplex::build_uniform(1, cycle);
  for (double w : C6.top_weights()) CHECK(w == doctest::Approx(1.0 / 6));
}

TEST_CASE("face measure") {
  auto K4 = complete_complex(4, 2);
  CHECK(face_measure(K4, {0}) == doctest::Approx(0.25));
  CHECK(face_measure(K4, {0, 1}) == doctest::Approx(1.0 / 6));
  CHECK(face_measure(K4, {}) == doctest::Approx(1.0));

  // direct summation oracle on random weighted complexes
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto X = random_complex(rng, 9, 2 + trial % 2, 12);
    std::vector<std::vector<std::uint32_t>> tops(X.top_faces().begin(), X.top_faces().end());
    std::vector<double> w(X.top_weights().begin(), X.top_weights().end());
    for (int k = -1; k <= X.dim(); ++k) {
      double level_total = 0;
      for (const Face& s : X.faces(k)) {
        CHECK(face_measure(X, s) == doctest::Approx(oracle::face_measure(tops, w, s)).epsilon(1e-12));
        level_total += face_measure(X, s);
      }
      CHECK(level_total == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("oriented measure sums to the face measure over orderings") {
  Rng rng(5);
  auto X = random_complex(rng, 8, 2, 10);
  for (const Face& s : X.faces(1)) {
    double sum = 0;
    OrientedFace o = s;
    do sum += oriented_face_measure(X, o);
    while (std::next_permutation(o.begin(), o.end()));
    CHECK(sum == doctest::Approx(face_measure(X, s)));
  }
}

TEST_CASE("links") {
  auto K6 = complete_complex(6, 2);
  auto L = link(K6, {0});
  CHECK(L.dim() == 1);
  CHECK(L.vertices().size() == 5);
  CHECK(L.top_faces().size() == 10);
  for (double w : L.top_weights()) CHECK(w == doctest::Approx(0.1));

  auto E = link(K6, {});
  CHECK(E.top_faces().size() == K6.top_faces().size());

  auto X = PureComplex::build(2, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}}, {0.5, 0.25, 0.25});
  auto L1 = link(X, {1});
  REQUIRE(L1.top_faces().size() == 3);
  CHECK(L1.top_faces()[0] == Face{2, 3});
  CHECK(L1.top_weight(0) == doctest::Approx(0.5));
  CHECK(L1.top_weight(1) == doctest::Approx(0.25));
  CHECK(L1.top_weight(2) == doctest::Approx(0.25));

  CHECK_THROWS_AS(link(X, {1, 2, 3}), Error);
  CHECK_THROWS_AS(link(X, {2, 5}), Error);
}

TEST_CASE("link consistency: link measure is the conditional face measure") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    auto X = random_complex(rng, 10, 3, 20);
    for (int k = 0; k <= X.dim() - 1; ++k) {
      for (const Face& s : X.faces(k)) {
        auto L = link(X, s);
        const double ps = face_measure(X, s);
        for (int j = 0; j <= L.dim(); ++j) {
          for (const Face& t : L.faces(j)) {
            // Prob_L(t) = Prob_X(s + t) * C(d+1, |s|+|t|) / (C(d+1,|s|) C(d-|s|+1, |t|))
            const int d = X.dim();
            const double lhs = face_measure(L, t);
            const double rhs = face_measure(X, face_union(s, t)) * binomial(d + 1, s.size() + t.size()) /
                               (ps * binomial(d + 1, s.size()) * binomial(d + 1 - s.size(), t.size()));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
          }
        }
      }
    }
  }
}

TEST_CASE("one skeleton") {
  auto X = complete_complex(7, 2);
  auto G = one_skeleton(X);
  CHECK(G.num_vertices() == 7);
  CHECK(G.num_edges() == 21);
  for (const auto& e : G.edges()) CHECK(e.weight == doctest::Approx(1.0 / 21));
  for (double m : G.vertex_measures()) CHECK(m == doctest::Approx(1.0 / 7));

  std::vector<Face> cycle;
  for (VertexId i = 0; i < 6; ++i) cycle.push_back(canonical_face({i, (i + 1) % 6}));
  auto C = one_skeleton(PureComplex::build_uniform(1, cycle));
  CHECK(C.num_edges() == 6);

  // skeleton of a link agrees with face measures in the link
  Rng rng(3);
  auto Y = random_complex(rng, 9, 2, 14);
  const VertexId v = Y.vertices()[0];
  auto L = link(Y, {v});
  auto S = one_skeleton(L);
  for (const auto& e : S.edges()) {
    CHECK(e.weight == doctest::Approx(face_measure(L, {S.label(e.u), S.label(e.v)})));
  }
}

TEST_CASE("degree") {
  auto X = complete_complex(9, 3);
  CHECK(degree(X, {0}, 3) == 56);  // C(8,3)
  CHECK(degree(X, {0, 1}, 1) == 1);
  Rng rng(8);
  auto Y = random_complex(rng, 10, 3, 25);
  for (const Face& e : Y.faces(1)) {
    std::size_t count = 0;
    for (const Face& t : Y.faces(2)) count += is_subface(e, t);
    CHECK(degree(Y, e, 2) == count);
  }
  CHECK_THROWS_AS(degree(Y, Y.faces(1)[0], 0), Error);
}

TEST_CASE("tensor with complete complex") {
  auto T = PureComplex::build_uniform(2, {{0, 1, 2}});
  auto X3 = tensor_with_complete(T, 3);
  CHECK(X3.top_faces().size() == 6);
  for (double w : X3.top_weights()) CHECK(w == doctest::Approx(1.0 / 6));
  CHECK(X3.vertices().size() == 9);

  auto X = complete_complex(6, 2);
  for (std::uint32_t t : {3u, 4u, 5u}) {
    auto Xt = tensor_with_complete(X, t);
    CHECK(Xt.vertices().size() == t * X.vertices().size());
    // each top face of Xt projects to a top face of X and a (d+1)-subset
    const double Q = static_cast<double>(max_vertex_degree(X));
    CHECK(static_cast<double>(max_vertex_degree(Xt)) == doctest::Approx(factorial(2) * binomial(t - 1, 2) * Q));
  }
  CHECK_THROWS_AS(tensor_with_complete(X, 2), Error);
}

TEST_CASE("suitability") {
  auto X = complete_complex(20, 2);
  auto rep = check_suitable(X, 1.1, 1.01, 0.3);
  CHECK(rep.hdx);
  CHECK(rep.degree);
  CHECK(rep.weights);
  CHECK(rep.hdx_worst == doctest::Approx(1.0 / 18));
  CHECK(check_suitable(complete_complex(8, 2), 1.1, 1.0001, 0.5).weights);

  // a link vertex of degree 1: a path of triangles
  auto P = PureComplex::build_uniform(2, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
  auto bad = check_suitable(P, 1.1, 2.0, 0.9);
  CHECK_FALSE(bad.degree);
  CHECK(bad.degree_witness.has_value());
  CHECK_THROWS_AS(check_suitable(X, 1.0, 1.5, 0.3), Error);
}
