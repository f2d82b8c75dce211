#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

using Element = std::uint32_t;

/// Finite group as an explicit multiplication table; element 0 is the
/// identity.
class GroupTable {
 public:
  static constexpr std::size_t kDefaultCap = 5040;

  /// Validates closure, identity, inverses and associativity (exhaustive
  /// up to order 256, sampled beyond). Relabels so the identity is 0.
  /// Throws NotAGroup, TooLarge.
  static GroupTable from_table(const std::vector<std::vector<Element>>& mul,
                               std::size_t cap = kDefaultCap, std::string name = "table");
  static GroupTable cyclic(std::size_t n, std::size_t cap = kDefaultCap);
  /// Order 2n; element r^i s^j has id i + n*j.
  static GroupTable dihedral(std::size_t n, std::size_t cap = kDefaultCap);
  /// Permutations of {0..k-1} in lexicographic order; (ab)(i) = a(b(i)).
  static GroupTable symmetric(std::size_t k, std::size_t cap = kDefaultCap);
  /// Element (a, b) has id a * |H| + b.
  static GroupTable product(const GroupTable& G, const GroupTable& H,
                            std::size_t cap = kDefaultCap);
  static GroupTable trivial();

  std::size_t order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  const std::string& name() const { return name_; }
  bool is_abelian() const;
  /// Smallest k >= 1 with a^k = e.
  std::size_t element_order(Element a) const;
  std::vector<std::vector<Element>> table() const;

 private:
  static GroupTable from_flat(std::size_t n, std::vector<std::uint16_t> flat, std::string name,
                              bool exhaustive_assoc);

  std::size_t order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::string name_;
};

/// Ordered symmetric generating set; label index i stands for gens[i].
struct GenSet {
  std::vector<Element> gens;
  std::size_t size() const { return gens.size(); }
  Element operator[](std::size_t i) const { return gens[i]; }
};

struct GenSetCheck {
  bool symmetric = true;
  bool identity_free = true;
  bool distinct = true;
  bool generates = true;
};

GenSetCheck check_genset(const GroupTable& G, const GenSet& S);

/// Throws NotSymmetricGenSet (not symmetric, repeats, or contains the
/// identity) and InvalidArgument (does not generate).
GenSet make_genset(const GroupTable& G, std::vector<Element> gens);

/// Index of gens[i]^{-1} in S, per i.
std::vector<std::uint32_t> inverse_indices(const GroupTable& G, const GenSet& S);

/// Smallest subgroup containing the seeds, sorted.
std::vector<Element> subgroup_closure(const GroupTable& G, std::span<const Element> seeds);

bool is_subgroup(const GroupTable& G, std::span<const Element> N);
bool is_normal(const GroupTable& G, std::span<const Element> N);

struct Quotient {
  GroupTable group;
  std::vector<Element> projection;  // element of G -> coset id
};

/// Coset group G/N. Throws NotSubgroup, NotNormal.
Quotient quotient_group(const GroupTable& G, std::span<const Element> N);

/// All normal subgroups of index at most max_index, sorted by (order, elements).
std::vector<std::vector<Element>> normal_subgroups(const GroupTable& G,
                                                   std::size_t max_index = SIZE_MAX);

struct CayleyCliqueComplex {
  PureComplex complex;
  GenSet gens;
  int dim = 0;
};

/// Clique complex of the right Cayley graph (g ~ gs) truncated at d. Each
/// top face is g * {e, s_1, .., s_d} for a d-clique of the generator graph.
/// Throws NotSymmetricGenSet, NotPure.
CayleyCliqueComplex cayley_clique_complex(const GroupTable& G, const GenSet& S, int d);

PureComplex link_of_identity(const CayleyCliqueComplex& C);

struct ScanCandidate {
  std::vector<Element> gens;
  double worst_lambda = 0.0;     // over links of faces through e and the empty face
  double identity_lambda = 0.0;  // skeleton of the identity link
};

struct ScanOptions {
  std::size_t max_size = 8;
  std::size_t max_candidates = SIZE_MAX;  // after sorting
  double eta_target = 1.0;                // candidates with worst_lambda above are dropped
};

/// Enumerates symmetric generating sets up to max_size (deduplicated under
/// automorphisms for abelian groups), keeps the pure ones and ranks them by
/// worst link lambda.
std::vector<ScanCandidate> scan_gensets(const GroupTable& G, int d, const ScanOptions& opts);

/// Automorphisms as element permutations; used for abelian deduplication.
std::vector<std::vector<Element>> automorphisms(const GroupTable& G);

}  // namespace hdx
