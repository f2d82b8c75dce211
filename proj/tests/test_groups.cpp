#include <doctest.h>

#include <set>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/graph.hpp"
#include "hdx/group.hpp"
#include "hdx/spectral.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

void check_axioms(const GroupTable& G) {
  const auto n = static_cast<Element>(G.order());
  for (Element a = 0; a < n; ++a) {
    CHECK(G.mul(0, a) == a);
    CHECK(G.mul(a, 0) == a);
    CHECK(G.mul(a, G.inv(a)) == 0);
    std::set<Element> row;
    for (Element b = 0; b < n; ++b) row.insert(G.mul(a, b));
    CHECK(row.size() == n);
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
}

}  // namespace

TEST_CASE("group constructors satisfy the axioms") {
  check_axioms(GroupTable::cyclic(7));
  check_axioms(GroupTable::dihedral(5));
  check_axioms(GroupTable::symmetric(4));
  check_axioms(GroupTable::product(GroupTable::cyclic(2), GroupTable::symmetric(3)));
  check_axioms(GroupTable::trivial());
}

TEST_CASE("small groups") {
  auto Z5 = GroupTable::cyclic(5);
  CHECK(Z5.inv(2) == 3);
  CHECK(Z5.is_abelian());
  auto S3 = GroupTable::symmetric(3);
  CHECK(S3.order() == 6);
  CHECK_FALSE(S3.is_abelian());
  auto V = GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2));
  for (Element a = 0; a < 4; ++a) CHECK(V.inv(a) == a);
  CHECK(GroupTable::dihedral(4).order() == 8);
  CHECK(GroupTable::symmetric(4).element_order(1) == 2);
  CHECK_THROWS_AS(GroupTable::symmetric(8), Error);
  CHECK_THROWS_AS(GroupTable::from_table({{0, 1}, {1, 1}}), Error);

  // from_table relabels so the identity is 0
  auto T = GroupTable::from_table({{1, 0}, {0, 1}});
  CHECK(T.mul(0, 1) == 1);
  CHECK(T.mul(1, 1) == 0);
}

TEST_CASE("generating sets") {
  auto Z6 = GroupTable::cyclic(6);
  CHECK_NOTHROW(make_genset(Z6, {1, 5}));
  CHECK_THROWS_AS(make_genset(Z6, {1}), Error);
  CHECK_THROWS_AS(make_genset(Z6, {0, 1, 5}), Error);
  CHECK_THROWS_AS(make_genset(Z6, {2, 4}), Error);
  auto S = make_genset(Z6, {1, 5, 2, 4});
  auto inv = inverse_indices(Z6, S);
  CHECK(inv == std::vector<std::uint32_t>{1, 0, 3, 2});
}

TEST_CASE("closure, normality, quotients") {
  auto Z6 = GroupTable::cyclic(6);
  CHECK(subgroup_closure(Z6, std::vector<Element>{}) == std::vector<Element>{0});
  CHECK(subgroup_closure(Z6, std::vector<Element>{2}) == std::vector<Element>{0, 2, 4});
  auto S4 = GroupTable::symmetric(4);
  // a transposition and a 4-cycle generate S4
  Element four_cycle = 0;
  for (Element a = 1; a < 24 && !four_cycle; ++a)
    if (S4.element_order(a) == 4) four_cycle = a;
  REQUIRE(four_cycle != 0);
  // element 1 is the permutation 0 1 3 2, a transposition
  CHECK(S4.element_order(1) == 2);
  const std::vector<Element> seeds{1, four_cycle};
  // independent closure by repeated right multiplication
  std::set<Element> reach{0};
  std::vector<Element> frontier{0};
  while (!frontier.empty()) {
    const Element x = frontier.back();
    frontier.pop_back();
    for (Element s : seeds)
      if (reach.insert(S4.mul(x, s)).second) frontier.push_back(S4.mul(x, s));
  }
  CHECK(reach.size() == 24);
  CHECK(subgroup_closure(S4, seeds).size() == 24);

  auto q = quotient_group(Z6, std::vector<Element>{0, 3});
  CHECK(q.group.order() == 3);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) CHECK(q.projection[Z6.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b]));
  CHECK(q.projection[0] == 0);
  CHECK(q.projection[3] == 0);
  CHECK(q.projection[1] == q.projection[4]);

  auto S3 = GroupTable::symmetric(3);
  std::vector<Element> A3;
  for (Element a = 0; a < 6; ++a)
    if (S3.element_order(a) != 2) A3.push_back(a);
  CHECK(is_normal(S3, A3));
  CHECK(quotient_group(S3, A3).group.order() == 2);
  std::vector<Element> not_normal = subgroup_closure(S3, std::vector<Element>{1});
  CHECK(is_subgroup(S3, not_normal));
  CHECK_FALSE(is_normal(S3, not_normal));
  CHECK_THROWS_AS(quotient_group(S3, not_normal), Error);
  CHECK_THROWS_AS(quotient_group(S3, std::vector<Element>{0, 1, 2}), Error);

  // Klein four inside D4
  auto D4 = GroupTable::dihedral(4);
  for (const auto& N : normal_subgroups(D4)) {
    CHECK(is_normal(D4, N));
    auto qq = quotient_group(D4, N);
    check_axioms(qq.group);
    for (Element a = 0; a < 8; ++a)
      for (Element b = 0; b < 8; ++b)
        CHECK(qq.projection[D4.mul(a, b)] == qq.group.mul(qq.projection[a], qq.projection[b]));
  }
  // normal subgroups of D4: 1, <r^2>, three of order 4, D4
  CHECK(normal_subgroups(D4).size() == 6);
  auto nz6 = normal_subgroups(Z6);
  CHECK(nz6.size() == 4);
  CHECK(normal_subgroups(Z6, 2).size() == 2);
}

TEST_CASE("cayley clique complex matches clique enumeration") {
  for (std::size_t n : {5u, 6u, 7u, 9u, 12u}) {
    auto G = GroupTable::cyclic(n);
    auto S = make_genset(G, {1, static_cast<Element>(n - 1), 2, static_cast<Element>(n - 2)});
    auto C = cayley_clique_complex(G, S, 2);
    auto adj = [&](std::uint32_t a, std::uint32_t b) {
      const auto diff = G.mul(G.inv(a), b);
      return std::find(S.gens.begin(), S.gens.end(), diff) != S.gens.end();
    };
    auto tri = oracle::cliques(n, 3, adj);
    REQUIRE(C.complex.top_faces().size() == tri.size());
    for (std::size_t i = 0; i < tri.size(); ++i) CHECK(C.complex.top_faces()[i] == Face(tri[i].begin(), tri[i].end()));
    CHECK(C.complex.contains(Face{0, 1, 2}));
    auto L = link_of_identity(C);
    std::vector<VertexId> gens(S.gens.begin(), S.gens.end());
    std::sort(gens.begin(), gens.end());
    CHECK(std::vector<VertexId>(L.vertices().begin(), L.vertices().end()) == gens);
  }
  auto Z8 = GroupTable::cyclic(8);
  CHECK_THROWS_AS(cayley_clique_complex(Z8, make_genset(Z8, {1, 7}), 2), Error);
}

TEST_CASE("cayley complex over S4 is vertex transitive") {
  auto S4 = GroupTable::symmetric(4);
  ScanOptions opts;
  opts.max_size = 6;
  opts.max_candidates = 3;
  auto cands = scan_gensets(S4, 2, opts);
  REQUIRE_FALSE(cands.empty());
  auto C = cayley_clique_complex(S4, GenSet{cands[0].gens}, 2);
  // left multiplication by g maps the link of e onto the link of g
  for (Element g = 1; g < 24; ++g) {
    auto Lg = link(C.complex, {g});
    auto Le = link(C.complex, {0});
    std::set<Face> shifted;
    for (const Face& e : Le.top_faces()) shifted.insert(canonical_face({S4.mul(g, e[0]), S4.mul(g, e[1])}));
    CHECK(std::set<Face>(Lg.top_faces().begin(), Lg.top_faces().end()) == shifted);
  }
  CHECK(adjacency_spectrum(one_skeleton(link_of_identity(C))).two_sided ==
        doctest::Approx(cands[0].identity_lambda).epsilon(1e-9));
}

TEST_CASE("generating set scan") {
  auto Z13 = GroupTable::cyclic(13);
  ScanOptions opts;
  opts.max_size = 6;
  auto cands = scan_gensets(Z13, 2, opts);
  REQUIRE_FALSE(cands.empty());
  for (std::size_t i = 1; i < cands.size(); ++i) CHECK(cands[i - 1].worst_lambda <= cands[i].worst_lambda);
  for (const auto& c : cands) {
    auto C = cayley_clique_complex(Z13, GenSet{c.gens}, 2);
    CHECK(std::abs(adjacency_spectrum(one_skeleton(link_of_identity(C))).two_sided - c.identity_lambda) <= 1e-9);
  }
  // Z/2 has no pure generating set at d = 2
  CHECK(scan_gensets(GroupTable::cyclic(2), 2, {}).empty());
}
