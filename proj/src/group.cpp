#include "hdx/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/rng.hpp"
#include "hdx/spectral.hpp"
#include "hdx/util.hpp"

namespace hdx {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorCode::TooLarge,
                "order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  if (n > 65535) throw Error(ErrorCode::TooLarge, "order beyond table storage");
}

}  // namespace

GroupTable GroupTable::from_flat(std::size_t n, std::vector<std::uint16_t> flat, std::string name,
                                 bool exhaustive_assoc) {
  GroupTable G;
  G.order_ = n;
  G.table_ = std::move(flat);
  G.name_ = std::move(name);
  for (Element a = 0; a < n; ++a) {
    if (G.mul(0, a) != a || G.mul(a, 0) != a) {
      throw Error(ErrorCode::NotAGroup, "element 0 is not a two-sided identity");
    }
  }
  G.inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    bool found = false;
    for (Element b = 0; b < n && !found; ++b) {
      if (G.mul(a, b) == 0) {
        if (G.mul(b, a) != 0) {
          throw Error(ErrorCode::NotAGroup, "one-sided inverse for " + std::to_string(a));
        }
        G.inverse_[a] = b;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::NotAGroup, "no inverse for " + std::to_string(a));
  }
  auto assoc_fail = [&](Element a, Element b, Element c) {
    return G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c));
  };
  if (exhaustive_assoc) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (assoc_fail(a, b, c)) {
            throw Error(ErrorCode::NotAGroup, "not associative at (" + std::to_string(a) + "," +
                                                  std::to_string(b) + "," + std::to_string(c) + ")");
          }
  } else {
    Rng rng(0x61736f63ULL ^ n);
    for (int k = 0; k < 4096; ++k) {
      const auto a = static_cast<Element>(rng.uniform_index(n));
      const auto b = static_cast<Element>(rng.uniform_index(n));
      const auto c = static_cast<Element>(rng.uniform_index(n));
      if (assoc_fail(a, b, c)) throw Error(ErrorCode::NotAGroup, "associativity spot-check failed");
    }
  }
  return G;
}

GroupTable GroupTable::from_table(const std::vector<std::vector<Element>>& mul, std::size_t cap,
                                  std::string name) {
  const std::size_t n = mul.size();
  if (n == 0) throw Error(ErrorCode::NotAGroup, "empty table");
  check_cap(n, cap);
  for (const auto& row : mul) {
    if (row.size() != n) throw Error(ErrorCode::NotAGroup, "table is not square");
    for (Element x : row) {
      if (x >= n) throw Error(ErrorCode::NotAGroup, "entry out of range");
    }
  }
  std::optional<Element> e;
  for (Element a = 0; a < n && !e; ++a) {
    bool ok = true;
    for (Element b = 0; b < n && ok; ++b) ok = mul[a][b] == b && mul[b][a] == b;
    if (ok) e = a;
  }
  if (!e) throw Error(ErrorCode::NotAGroup, "no identity element");
  // swap the identity into slot 0
  std::vector<Element> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::swap(relabel[0], relabel[*e]);
  std::vector<std::uint16_t> flat(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      flat[relabel[a] * n + relabel[b]] = static_cast<std::uint16_t>(relabel[mul[a][b]]);
  return from_flat(n, std::move(flat), std::move(name), n <= 256);
}

GroupTable GroupTable::cyclic(std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclic group of order 0");
  check_cap(n, cap);
  std::vector<std::uint16_t> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
  return from_flat(n, std::move(flat), "Z/" + std::to_string(n), false);
}

GroupTable GroupTable::dihedral(std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dihedral group needs n >= 1");
  const std::size_t N = 2 * n;
  check_cap(N, cap);
  std::vector<std::uint16_t> flat(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      const std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
      const std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
      flat[x * N + y] = static_cast<std::uint16_t>(rot + n * ((j + l) % 2));
    }
  return from_flat(N, std::move(flat), "D_" + std::to_string(n), false);
}

GroupTable GroupTable::symmetric(std::size_t k, std::size_t cap) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "symmetric group needs k >= 1");
  const double order = factorial(static_cast<int>(k));
  if (order > static_cast<double>(cap)) {
    throw Error(ErrorCode::TooLarge, "S_" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  }
  const auto n = static_cast<std::size_t>(order);
  check_cap(n, cap);
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::uint16_t> flat(n * n);
  std::vector<std::uint8_t> c(k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
      const auto it = std::lower_bound(perms.begin(), perms.end(), c);
      flat[a * n + b] = static_cast<std::uint16_t>(it - perms.begin());
    }
  return from_flat(n, std::move(flat), "S_" + std::to_string(k), false);
}

GroupTable GroupTable::product(const GroupTable& G, const GroupTable& H, std::size_t cap) {
  const std::size_t n = G.order() * H.order();
  check_cap(n, cap);
  std::vector<std::uint16_t> flat(n * n);
  const std::size_t h = H.order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto a = G.mul(static_cast<Element>(x / h), static_cast<Element>(y / h));
      const auto b = H.mul(static_cast<Element>(x % h), static_cast<Element>(y % h));
      flat[x * n + y] = static_cast<std::uint16_t>(a * h + b);
    }
  return from_flat(n, std::move(flat), G.name() + "x" + H.name(), false);
}

GroupTable GroupTable::trivial() { return cyclic(1); }

bool GroupTable::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::size_t GroupTable::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::vector<Element>> GroupTable::table() const {
  std::vector<std::vector<Element>> out(order_, std::vector<Element>(order_));
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) out[a][b] = mul(a, b);
  return out;
}

GenSetCheck check_genset(const GroupTable& G, const GenSet& S) {
  GenSetCheck c;
  std::vector<char> in(G.order(), 0);
  for (Element s : S.gens) {
    if (s >= G.order()) throw Error(ErrorCode::InvalidArgument, "generator out of range");
    if (s == 0) c.identity_free = false;
    if (in[s]) c.distinct = false;
    in[s] = 1;
  }
  for (Element s : S.gens) {
    if (!in[G.inv(s)]) c.symmetric = false;
  }
  c.generates = subgroup_closure(G, S.gens).size() == G.order();
  return c;
}

GenSet make_genset(const GroupTable& G, std::vector<Element> gens) {
  GenSet S{std::move(gens)};
  const auto c = check_genset(G, S);
  if (!c.symmetric) throw Error(ErrorCode::NotSymmetricGenSet, "not closed under inverse");
  if (!c.identity_free) throw Error(ErrorCode::NotSymmetricGenSet, "contains the identity");
  if (!c.distinct) throw Error(ErrorCode::NotSymmetricGenSet, "repeated generator");
  if (!c.generates) throw Error(ErrorCode::InvalidArgument, "set does not generate the group");
  return S;
}

std::vector<std::uint32_t> inverse_indices(const GroupTable& G, const GenSet& S) {
  std::vector<std::uint32_t> out(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const auto it = std::find(S.gens.begin(), S.gens.end(), G.inv(S[i]));
    if (it == S.gens.end()) throw Error(ErrorCode::NotSymmetricGenSet, "not closed under inverse");
    out[i] = static_cast<std::uint32_t>(it - S.gens.begin());
  }
  return out;
}

std::vector<Element> subgroup_closure(const GroupTable& G, std::span<const Element> seeds) {
  std::vector<char> in(G.order(), 0);
  std::vector<Element> out{0};
  in[0] = 1;
  std::vector<Element> gens;
  for (Element s : seeds) {
    if (s >= G.order()) throw Error(ErrorCode::InvalidArgument, "seed out of range");
    gens.push_back(s);
  }
  // In a finite group, closure under right multiplication by the seeds
  // already yields the generated subgroup.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Element s : gens) {
      const Element x = G.mul(out[i], s);
      if (!in[x]) {
        in[x] = 1;
        out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subgroup(const GroupTable& G, std::span<const Element> N) {
  std::vector<char> in(G.order(), 0);
  for (Element x : N) {
    if (x >= G.order()) return false;
    in[x] = 1;
  }
  if (!in[0]) return false;
  for (Element a : N) {
    if (!in[G.inv(a)]) return false;
    for (Element b : N)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const GroupTable& G, std::span<const Element> N) {
  if (!is_subgroup(G, N)) return false;
  std::vector<char> in(G.order(), 0);
  for (Element x : N) in[x] = 1;
  for (Element g = 0; g < G.order(); ++g)
    for (Element n : N)
      if (!in[G.mul(G.mul(g, n), G.inv(g))]) return false;
  return true;
}

Quotient quotient_group(const GroupTable& G, std::span<const Element> N) {
  if (!is_subgroup(G, N)) throw Error(ErrorCode::NotSubgroup, "set is not a subgroup");
  if (!is_normal(G, N)) throw Error(ErrorCode::NotNormal, "subgroup is not normal");
  Quotient q;
  q.projection.assign(G.order(), UINT32_MAX);
  std::vector<Element> reps;
  for (Element g = 0; g < G.order(); ++g) {
    if (q.projection[g] != UINT32_MAX) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(g);
    for (Element n : N) q.projection[G.mul(g, n)] = id;
  }
  const std::size_t k = reps.size();
  std::vector<std::vector<Element>> mul(k, std::vector<Element>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) mul[a][b] = q.projection[G.mul(reps[a], reps[b])];
  q.group = GroupTable::from_table(mul, SIZE_MAX, G.name() + "/N" + std::to_string(N.size()));
  return q;
}

std::vector<std::vector<Element>> normal_subgroups(const GroupTable& G, std::size_t max_index) {
  std::set<std::vector<Element>> all;
  for (Element g = 0; g < G.order(); ++g) all.insert(subgroup_closure(G, std::span(&g, 1)));
  std::vector<std::vector<Element>> frontier(all.begin(), all.end());
  const std::vector<std::vector<Element>> cyclic(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& H : frontier) {
      for (const auto& C : cyclic) {
        if (std::includes(H.begin(), H.end(), C.begin(), C.end())) continue;
        std::vector<Element> seeds = H;
        seeds.insert(seeds.end(), C.begin(), C.end());
        auto J = subgroup_closure(G, seeds);
        if (all.insert(J).second) next.push_back(std::move(J));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Element>> out;
  for (const auto& H : all) {
    if (G.order() / H.size() <= max_index && is_normal(G, H)) out.push_back(H);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

void require_symmetric(const GroupTable& G, const GenSet& S) {
  const auto c = check_genset(G, S);
  if (!c.symmetric || !c.identity_free || !c.distinct) {
    throw Error(ErrorCode::NotSymmetricGenSet, "generator set must be symmetric, distinct, identity-free");
  }
}

// d-subsets of S (as sorted element lists) that are pairwise adjacent in
// the Cayley graph, i.e. cliques through the identity minus the identity.
std::vector<std::vector<Element>> generator_cliques(const GroupTable& G, const GenSet& S, int d) {
  std::vector<Element> gens = S.gens;
  std::sort(gens.begin(), gens.end());
  std::vector<char> in(G.order(), 0);
  for (Element s : gens) in[s] = 1;
  auto adjacent = [&](Element a, Element b) { return in[G.mul(G.inv(a), b)] != 0; };
  std::vector<std::vector<Element>> out;
  std::vector<Element> current;
  auto extend = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(current.size()) == d) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      bool ok = true;
      for (Element c : current) ok = ok && adjacent(c, gens[i]);
      if (!ok) continue;
      current.push_back(gens[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace

CayleyCliqueComplex cayley_clique_complex(const GroupTable& G, const GenSet& S, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "Cayley clique complex needs d >= 1");
  require_symmetric(G, S);
  if (S.gens.empty()) throw Error(ErrorCode::NotPure, "empty generating set has no edges");
  const auto cliques = generator_cliques(G, S, d);
  std::vector<char> covered(G.order(), 0);
  for (const auto& K : cliques)
    for (Element s : K) covered[s] = 1;
  for (Element s : S.gens) {
    if (!covered[s]) {
      throw Error(ErrorCode::NotPure, "edge {0," + std::to_string(s) + "} lies in no " +
                                          std::to_string(d + 1) + "-clique");
    }
  }
  std::vector<Face> faces;
  for (Element g = 0; g < G.order(); ++g) {
    for (const auto& K : cliques) {
      Face f{g};
      bool minimal = true;
      for (Element s : K) {
        const Element x = G.mul(g, s);
        if (x < g) {
          minimal = false;
          break;
        }
        f.push_back(x);
      }
      if (!minimal) continue;
      std::sort(f.begin(), f.end());
      faces.push_back(std::move(f));
    }
  }
  return {PureComplex::build_uniform(d, std::move(faces)), S, d};
}

PureComplex link_of_identity(const CayleyCliqueComplex& C) { return link(C.complex, Face{0}); }

std::vector<std::vector<Element>> automorphisms(const GroupTable& G) {
  const std::size_t n = G.order();
  std::vector<Element> gens;
  std::vector<Element> span{0};
  for (Element g = 1; g < n && span.size() < n; ++g) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens.push_back(g);
    span = subgroup_closure(G, gens);
  }
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto ord = G.element_order(gens[i]);
    for (Element x = 0; x < n; ++x)
      if (G.element_order(x) == ord) candidates[i].push_back(x);
  }
  std::vector<std::vector<Element>> out;
  std::vector<Element> images(gens.size());
  auto try_extend = [&]() {
    std::vector<Element> phi(n, UINT32_MAX);
    std::vector<char> used(n, 0);
    phi[0] = 0;
    used[0] = 1;
    std::vector<Element> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Element x = queue[q];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Element y = G.mul(x, gens[i]);
        const Element img = G.mul(phi[x], images[i]);
        if (phi[y] == UINT32_MAX) {
          if (used[img]) return;
          phi[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (phi[y] != img) {
          return;
        }
      }
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (phi[G.mul(a, b)] != G.mul(phi[a], phi[b])) return;
    out.push_back(std::move(phi));
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      try_extend();
      return;
    }
    for (Element x : candidates[i]) {
      images[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<ScanCandidate> scan_gensets(const GroupTable& G, int d, const ScanOptions& opts) {
  std::vector<std::vector<Element>> orbits;
  for (Element g = 1; g < G.order(); ++g) {
    const Element h = G.inv(g);
    if (h < g) continue;
    orbits.push_back(h == g ? std::vector<Element>{g} : std::vector<Element>{g, h});
  }
  std::vector<std::vector<Element>> autos;
  if (G.is_abelian() && G.order() <= 128) autos = automorphisms(G);

  std::vector<std::vector<Element>> sets;
  std::vector<Element> current;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == orbits.size()) {
      if (!current.empty()) sets.push_back(current);
      return;
    }
    self(self, i + 1);
    if (current.size() + orbits[i].size() <= opts.max_size) {
      current.insert(current.end(), orbits[i].begin(), orbits[i].end());
      self(self, i + 1);
      current.resize(current.size() - orbits[i].size());
    }
  };
  rec(rec, 0);
  for (auto& s : sets) std::sort(s.begin(), s.end());
  if (!autos.empty()) {
    std::vector<std::vector<Element>> kept;
    for (const auto& s : sets) {
      bool canonical = true;
      for (const auto& phi : autos) {
        std::vector<Element> img;
        for (Element x : s) img.push_back(phi[x]);
        std::sort(img.begin(), img.end());
        if (img < s) {
          canonical = false;
          break;
        }
      }
      if (canonical) kept.push_back(s);
    }
    sets = std::move(kept);
  }

  std::vector<std::optional<ScanCandidate>> results(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) {
    GenSet S{sets[i]};
    if (subgroup_closure(G, S.gens).size() != G.order()) return;
    std::optional<CayleyCliqueComplex> C;
    try {
      C = cayley_clique_complex(G, S, d);
    } catch (const Error&) {
      return;
    }
    ScanCandidate cand;
    cand.gens = sets[i];
    double worst = 0.0;
    if (d >= 2) {
      worst = std::max(worst, link_spectrum(C->complex, Face{}).two_sided);
      for (int k = 0; k <= d - 2; ++k) {
        for (const Face& f : C->complex.faces(k)) {
          if (f[0] != 0) continue;
          worst = std::max(worst, link_spectrum(C->complex, f).two_sided);
        }
      }
      cand.identity_lambda = link_spectrum(C->complex, Face{0}).two_sided;
    } else {
      worst = link_spectrum(C->complex, Face{}).two_sided;
      cand.identity_lambda = worst;
    }
    cand.worst_lambda = worst;
    if (worst <= opts.eta_target) results[i] = std::move(cand);
  });
  std::vector<ScanCandidate> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  std::sort(out.begin(), out.end(), [](const ScanCandidate& a, const ScanCandidate& b) {
    if (a.worst_lambda != b.worst_lambda) return a.worst_lambda < b.worst_lambda;
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    return a.gens < b.gens;
  });
  if (out.size() > opts.max_candidates) out.resize(opts.max_candidates);
  return out;
}

}  // namespace hdx
