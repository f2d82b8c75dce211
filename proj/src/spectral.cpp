#include "hdx/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "hdx/error.hpp"
#include "hdx/parallel.hpp"
#include "hdx/rng.hpp"

namespace hdx {

namespace {

Eigen::MatrixXd symmetrized(const WGraph& G) {
  const auto n = static_cast<Eigen::Index>(G.num_vertices());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (const WEdge& e : G.edges()) {
    const double x = 0.5 * e.weight / std::sqrt(G.vertex_measure(e.u) * G.vertex_measure(e.v));
    S(e.u, e.v) += x;
    S(e.v, e.u) += x;
  }
  return S;
}

}  // namespace

SpectralReport adjacency_spectrum(const WGraph& G) {
  if (G.num_vertices() == 0) throw Error(ErrorCode::EmptyGraph, "no vertices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(G), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "eigensolver did not converge");
  }
  SpectralReport report;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), std::greater<>());
  const auto& v = report.eigenvalues;
  if (v.size() >= 2) {
    report.one_sided = v[1];
    report.two_sided = std::max(std::abs(v[1]), std::abs(v.back()));
  }
  if (G.bipartite()) report.bipartite_lambda = bipartite_lambda(G);
  return report;
}

double bipartite_lambda(const WGraph& G) {
  if (!G.bipartite()) throw Error(ErrorCode::NotBipartite, "graph has no bipartition");
  std::vector<std::int64_t> pos(G.num_vertices(), -1);
  Eigen::Index nl = 0, nr = 0;
  for (std::uint32_t i = 0; i < G.num_vertices(); ++i) {
    pos[i] = G.side(i) == Side::Left ? nl++ : nr++;
  }
  if (nl == 0 || nr == 0) throw Error(ErrorCode::EmptySide, "bipartite graph with an empty side");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nl, nr);
  for (const WEdge& e : G.edges()) {
    const auto l = G.side(e.u) == Side::Left ? e.u : e.v;
    const auto r = l == e.u ? e.v : e.u;
    // side measures are twice the vertex measures
    M(pos[l], pos[r]) +=
        e.weight / std::sqrt(4.0 * G.vertex_measure(l) * G.vertex_measure(r));
  }
  if (std::min(nl, nr) < 2) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  return sv.size() >= 2 ? sv(1) : 0.0;
}

double lambda_report(const WGraph& G, LambdaMode mode) {
  if (mode == LambdaMode::Bipartite) return bipartite_lambda(G);
  const auto r = adjacency_spectrum(G);
  return mode == LambdaMode::OneSided ? r.one_sided : r.two_sided;
}

std::vector<double> apply_adjacency(const WGraph& G, std::span<const double> f) {
  if (f.size() != G.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vector size mismatch");
  std::vector<double> out(G.num_vertices(), 0.0);
  for (std::uint32_t v = 0; v < G.num_vertices(); ++v) {
    double sum = 0.0;
    for (auto nb : G.neighbors(v)) sum += 0.5 * G.edges()[nb.edge].weight * f[nb.vertex];
    out[v] = sum / G.vertex_measure(v);
  }
  return out;
}

LinkSpectrum link_spectrum(const PureComplex& X, const Face& s) {
  LinkSpectrum out;
  out.face = s;
  const WGraph G = s.empty() ? one_skeleton(X) : one_skeleton(link(X, s));
  const auto r = adjacency_spectrum(G);
  out.lambda2 = r.one_sided;
  out.lambda_min = r.eigenvalues.back();
  out.two_sided = r.two_sided;
  out.connected = is_connected(G);
  return out;
}

HdxReport is_hdx(const PureComplex& X, double threshold, LambdaMode mode) {
  if (X.dim() < 1) throw Error(ErrorCode::InvalidArgument, "is_hdx needs dim >= 1");
  if (mode == LambdaMode::Bipartite) {
    throw Error(ErrorCode::InvalidArgument, "is_hdx takes one- or two-sided mode");
  }
  std::vector<Face> faces;
  for (int k = -1; k <= X.dim() - 2; ++k) {
    const auto& level = X.faces(k);
    faces.insert(faces.end(), level.begin(), level.end());
  }
  HdxReport report;
  report.threshold = threshold;
  report.mode = mode;
  report.links.resize(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) { report.links[i] = link_spectrum(X, faces[i]); });
  report.worst = -std::numeric_limits<double>::infinity();
  for (const auto& l : report.links) {
    const double value = mode == LambdaMode::OneSided ? l.lambda2 : l.two_sided;
    if (value > report.worst) {
      report.worst = value;
      report.worst_face = l.face;
    }
  }
  report.pass = report.worst <= threshold;
  return report;
}

namespace {

void check_exact_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw Error(ErrorCode::TooLargeForExact, std::string(what) + " has " + std::to_string(n) +
                                                 " vertices, limit " + std::to_string(limit));
  }
}

// Masses of every subset of `members` (bit i <-> members[i]).
std::vector<double> subset_masses(std::span<const double> mass) {
  const std::size_t n = mass.size();
  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (std::size_t m = 1; m < out.size(); ++m) {
    out[m] = out[m & (m - 1)] + mass[std::countr_zero(m)];
  }
  return out;
}

std::vector<VertexId> mask_to_ids(std::uint64_t mask, std::span<const std::uint32_t> members,
                                  const WGraph& G) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (mask >> i & 1) out.push_back(G.label(members[i]));
  }
  return out;
}

struct PairVisitor {
  double alpha = 0.0, alpha_full = 0.0;
  std::uint64_t bestS = 0, bestT = 0, pairs = 0;
  void visit(double e, double ns, double nt, std::uint64_t S, std::uint64_t T) {
    ++pairs;
    const double dev = std::abs(e - ns * nt);
    const double denom = std::sqrt(ns * nt);
    if (denom <= 0.0) return;
    const double a = dev / denom;
    if (a > alpha) {
      alpha = a;
      bestS = S;
      bestT = T;
    }
    const double rest = (1.0 - ns) * (1.0 - nt);
    if (rest > 1e-15) alpha_full = std::max(alpha_full, dev / std::sqrt(ns * nt * rest));
  }
};

// Enumerates (S, T) with S over subsets of `rows`, T over subsets of `cols`,
// calling visit(e, nu(S), nu(T), S, T). `weight(i, j)` is the pair mass.
// When `disjoint`, rows == cols and T ranges over subsets of the complement.
template <typename Visit>
void enumerate_pairs(std::span<const double> row_mass, std::span<const double> col_mass,
                     const std::vector<std::vector<double>>& weight, bool disjoint,
                     bool include_empty, Visit&& visit) {
  const std::size_t nr = row_mass.size(), nc = col_mass.size();
  const auto row_sums = subset_masses(row_mass);
  const auto col_sums = subset_masses(col_mass);
  std::vector<std::vector<double>> w(std::size_t{1} << nr, std::vector<double>(nc, 0.0));
  std::vector<double> e;
  std::vector<std::uint64_t> tmask;
  std::vector<std::uint32_t> bits;
  for (std::uint64_t S = include_empty ? 0 : 1; S < (std::uint64_t{1} << nr); ++S) {
    if (S) {
      const auto low = static_cast<std::size_t>(std::countr_zero(S));
      const auto& prev = w[S & (S - 1)];
      for (std::size_t j = 0; j < nc; ++j) w[S][j] = prev[j] + weight[low][j];
    }
    const auto& ws = w[S];
    std::uint64_t allowed = (std::uint64_t{1} << nc) - 1;
    if (disjoint) allowed &= ~S;
    bits.clear();
    for (std::size_t j = 0; j < nc; ++j) {
      if (allowed >> j & 1) bits.push_back(static_cast<std::uint32_t>(j));
    }
    e.assign(std::size_t{1} << bits.size(), 0.0);
    tmask.assign(e.size(), 0);
    if (include_empty) visit(0.0, row_sums[S], 0.0, S, std::uint64_t{0});
    for (std::size_t idx = 1; idx < e.size(); ++idx) {
      const auto low = static_cast<std::size_t>(std::countr_zero(idx));
      e[idx] = e[idx & (idx - 1)] + ws[bits[low]];
      tmask[idx] = tmask[idx & (idx - 1)] | (std::uint64_t{1} << bits[low]);
      visit(e[idx], row_sums[S], col_sums[tmask[idx]], S, tmask[idx]);
    }
  }
}

struct Layout {
  std::vector<std::uint32_t> rows, cols;
  std::vector<double> row_mass, col_mass;
  std::vector<std::vector<double>> weight;
  bool disjoint = false;
};

Layout make_layout(const WGraph& G, std::size_t limit) {
  Layout L;
  if (G.bipartite()) {
    for (std::uint32_t i = 0; i < G.num_vertices(); ++i) {
      (G.side(i) == Side::Left ? L.rows : L.cols).push_back(i);
    }
    check_exact_size(L.rows.size(), limit, "left side");
    check_exact_size(L.cols.size(), limit, "right side");
    std::vector<std::int64_t> pos(G.num_vertices());
    for (std::size_t i = 0; i < L.rows.size(); ++i) pos[L.rows[i]] = static_cast<std::int64_t>(i);
    for (std::size_t j = 0; j < L.cols.size(); ++j) pos[L.cols[j]] = static_cast<std::int64_t>(j);
    for (auto i : L.rows) L.row_mass.push_back(2.0 * G.vertex_measure(i));
    for (auto j : L.cols) L.col_mass.push_back(2.0 * G.vertex_measure(j));
    L.weight.assign(L.rows.size(), std::vector<double>(L.cols.size(), 0.0));
    for (const auto& e : G.edges()) {
      const auto l = G.side(e.u) == Side::Left ? e.u : e.v;
      const auto r = l == e.u ? e.v : e.u;
      L.weight[pos[l]][pos[r]] += e.weight;
    }
  } else {
    check_exact_size(G.num_vertices(), limit, "graph");
    for (std::uint32_t i = 0; i < G.num_vertices(); ++i) {
      L.rows.push_back(i);
      L.row_mass.push_back(G.vertex_measure(i));
    }
    L.cols = L.rows;
    L.col_mass = L.row_mass;
    L.weight.assign(L.rows.size(), std::vector<double>(L.cols.size(), 0.0));
    for (const auto& e : G.edges()) {
      L.weight[e.u][e.v] += 0.5 * e.weight;
      L.weight[e.v][e.u] += 0.5 * e.weight;
    }
    L.disjoint = true;
  }
  return L;
}

}  // namespace

EmlResult eml_discrepancy(const WGraph& G, const EmlStrategy& strategy) {
  EmlResult result;
  result.exact = strategy.exact;
  if (strategy.exact) {
    Layout L = make_layout(G, strategy.exact_subset_limit);
    PairVisitor pv;
    enumerate_pairs(L.row_mass, L.col_mass, L.weight, L.disjoint, false,
                    [&](double e, double ns, double nt, std::uint64_t S, std::uint64_t T) {
                      pv.visit(e, ns, nt, S, T);
                    });
    result.alpha = pv.alpha;
    result.alpha_full = pv.alpha_full;
    result.pairs = pv.pairs;
    result.S = mask_to_ids(pv.bestS, L.rows, G);
    result.T = mask_to_ids(pv.bestT, L.cols, G);
    return result;
  }

  Rng rng(strategy.seed);
  const std::size_t n = G.num_vertices();
  std::vector<double> side_mass(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    side_mass[i] = (G.bipartite() ? 2.0 : 1.0) * G.vertex_measure(i);
  }
  std::vector<char> inS(n), inT(n);
  for (std::size_t k = 0; k < strategy.samples; ++k) {
    double ns = 0.0, nt = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const bool a = rng.bernoulli(0.5), b = rng.bernoulli(0.5);
      if (G.bipartite()) {
        inS[i] = G.side(i) == Side::Left && a;
        inT[i] = G.side(i) == Side::Right && b;
      } else {
        inS[i] = a;
        inT[i] = b && !a;
      }
      if (inS[i]) ns += side_mass[i];
      if (inT[i]) nt += side_mass[i];
    }
    if (ns <= 0.0 || nt <= 0.0) continue;
    double e = 0.0;
    for (const auto& ed : G.edges()) {
      const double w = G.bipartite() ? ed.weight : 0.5 * ed.weight;
      if (inS[ed.u] && inT[ed.v]) e += w;
      if (inS[ed.v] && inT[ed.u]) e += w;
    }
    ++result.pairs;
    const double dev = std::abs(e - ns * nt);
    const double a = dev / std::sqrt(ns * nt);
    if (a > result.alpha) {
      result.alpha = a;
      result.S.clear();
      result.T.clear();
      for (std::uint32_t i = 0; i < n; ++i) {
        if (inS[i]) result.S.push_back(G.label(i));
        if (inT[i]) result.T.push_back(G.label(i));
      }
    }
    const double rest = (1.0 - ns) * (1.0 - nt);
    if (rest > 1e-15) result.alpha_full = std::max(result.alpha_full, dev / std::sqrt(ns * nt * rest));
  }
  return result;
}

EmlCheck eml_exhaustive_check(const WGraph& G, double lambda, std::size_t exact_subset_limit) {
  Layout L = make_layout(G, exact_subset_limit);
  EmlCheck check;
  check.lambda = lambda;
  check.worst_slack = std::numeric_limits<double>::infinity();
  enumerate_pairs(L.row_mass, L.col_mass, L.weight, false, true,
                  [&](double e, double ns, double nt, std::uint64_t, std::uint64_t) {
                    ++check.pairs;
                    const double lhs = std::abs(e - ns * nt);
                    const double prod = ns * nt * (1.0 - ns) * (1.0 - nt);
                    const double rhs = lambda * std::sqrt(std::max(0.0, prod));
                    const double slack = rhs - lhs;
                    check.worst_slack = std::min(check.worst_slack, slack);
                    if (slack < -1e-12) ++check.violations;
                  });
  return check;
}

double converse_eml_bound(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonPositiveAlpha, std::to_string(alpha));
  return 260.0 * alpha * (1.0 + std::log2(3.0 / alpha));
}

double converse_eml_bound_tight(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonPositiveAlpha, std::to_string(alpha));
  return 260.0 * alpha * (1.0 + std::log2(2.0 / alpha));
}

namespace {

std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_lookup(const WGraph& H) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> out;
  for (std::uint32_t k = 0; k < H.num_edges(); ++k) out[{H.edges()[k].u, H.edges()[k].v}] = k;
  return out;
}

struct FiberIndex {
  std::vector<std::int64_t> h_edge;  // per G edge
  std::vector<double> fiber_mass;    // per H edge
};

FiberIndex index_fibers(const WGraph& G, const WGraph& H, std::span<const std::uint32_t> color) {
  if (color.size() != G.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "coloring size mismatch");
  }
  const auto lookup = edge_lookup(H);
  FiberIndex fi;
  fi.h_edge.resize(G.num_edges());
  fi.fiber_mass.assign(H.num_edges(), 0.0);
  for (std::uint32_t k = 0; k < G.num_edges(); ++k) {
    const auto& e = G.edges()[k];
    auto a = color[e.u], b = color[e.v];
    if (a >= H.num_vertices() || b >= H.num_vertices()) {
      throw Error(ErrorCode::InvalidArgument, "color out of range");
    }
    if (a > b) std::swap(a, b);
    auto it = lookup.find({a, b});
    if (it == lookup.end()) {
      throw Error(ErrorCode::NotAHomomorphism,
                  "edge {" + std::to_string(G.label(e.u)) + "," + std::to_string(G.label(e.v)) +
                      "} maps to non-edge {" + std::to_string(H.label(a)) + "," +
                      std::to_string(H.label(b)) + "}");
    }
    fi.h_edge[k] = it->second;
    fi.fiber_mass[it->second] += e.weight;
  }
  for (std::uint32_t k = 0; k < H.num_edges(); ++k) {
    if (fi.fiber_mass[k] <= 0.0) {
      throw Error(ErrorCode::DegenerateColoring,
                  "target edge {" + std::to_string(H.label(H.edges()[k].u)) + "," +
                      std::to_string(H.label(H.edges()[k].v)) + "} has no preimage");
    }
  }
  return fi;
}

}  // namespace

WGraph coloring_measure(const WGraph& G, const WGraph& H, std::span<const std::uint32_t> color) {
  const FiberIndex fi = index_fibers(G, H, color);
  std::vector<WEdge> edges(G.edges().begin(), G.edges().end());
  for (std::uint32_t k = 0; k < edges.size(); ++k) {
    const auto h = static_cast<std::uint32_t>(fi.h_edge[k]);
    edges[k].weight = H.edges()[h].weight * G.edges()[k].weight / fi.fiber_mass[h];
  }
  std::vector<VertexId> labels(G.labels().begin(), G.labels().end());
  std::vector<Side> sides(G.sides().begin(), G.sides().end());
  return WGraph::build(std::move(labels), std::move(edges), std::move(sides));
}

CompositionReport composition_check(const WGraph& G, const WGraph& H,
                                     std::span<const std::uint32_t> color) {
  const FiberIndex fi = index_fibers(G, H, color);
  CompositionReport report;
  const auto hs = adjacency_spectrum(H);
  report.lambda_H = hs.two_sided;
  report.lambda_H_one = hs.one_sided;
  std::vector<std::vector<LabeledEdge>> fibers(H.num_edges());
  for (std::uint32_t k = 0; k < G.num_edges(); ++k) {
    const auto& e = G.edges()[k];
    fibers[fi.h_edge[k]].push_back({G.label(e.u), G.label(e.v), e.weight});
  }
  for (std::uint32_t h = 0; h < H.num_edges(); ++h) {
    const auto a = H.edges()[h].u;
    auto is_left = [&](VertexId id) {
      return color[static_cast<std::size_t>(G.index_of(id))] == a;
    };
    const WGraph fiber = WGraph::from_labeled_bipartite(fibers[h], is_left);
    report.eta = std::max(report.eta, bipartite_lambda(fiber));
  }
  const auto gs = adjacency_spectrum(coloring_measure(G, H, color));
  report.lambda_G = gs.two_sided;
  report.lambda_G_one = gs.one_sided;
  report.pass_two_sided = report.lambda_G <= std::max(report.lambda_H, report.eta) + 1e-7;
  report.pass_one_sided = report.lambda_G_one <= std::max(report.lambda_H_one, report.eta) + 1e-7;
  return report;
}

TrickleReport trickle_down_check(const PureComplex& X, double tolerance) {
  TrickleReport report;
  std::vector<Face> bases;
  for (int k = 0; k <= X.dim() - 2; ++k) {
    const auto& level = X.faces(k - 1);
    bases.insert(bases.end(), level.begin(), level.end());
  }
  report.entries.resize(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    TrickleEntry& entry = report.entries[i];
    entry.face = bases[i];
    const LinkSpectrum own = link_spectrum(X, bases[i]);
    entry.lambda2 = own.lambda2;
    bool connected = own.connected;
    double worst = 0.0;
    const PureComplex L = bases[i].empty() ? X : link(X, bases[i]);
    for (VertexId v : L.vertices()) {
      const LinkSpectrum sub = link_spectrum(X, face_union(bases[i], Face{v}));
      worst = std::max(worst, sub.two_sided);
      connected = connected && sub.connected;
    }
    entry.link_lambda = worst;
    entry.applicable = connected && worst <= 0.5;
    entry.bound = worst < 1.0 ? worst / (1.0 - worst) : std::numeric_limits<double>::infinity();
    entry.pass = !entry.applicable || entry.lambda2 <= entry.bound + tolerance;
  });
  for (const auto& e : report.entries) {
    if (e.applicable) ++report.applicable;
    if (!e.pass) ++report.failures;
  }
  return report;
}

}  // namespace hdx
