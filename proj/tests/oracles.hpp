// Independent reference computations used by the tests. Nothing here calls
// into the library's numerics; inputs are plain edge lists and face lists.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

struct Edge {
  std::uint32_t u, v;
  double w;
};

// vertex mass: half the incident edge mass, edges normalized to sum 1
inline std::vector<double> vertex_mass(std::size_t n, const std::vector<Edge>& edges) {
  double total = 0;
  for (const auto& e : edges) total += e.w;
  std::vector<double> m(n, 0.0);
  for (const auto& e : edges) {
    m[e.u] += 0.5 * e.w / total;
    m[e.v] += 0.5 * e.w / total;
  }
  return m;
}

// Symmetrized random walk D^{-1/2} W D^{-1/2} / 2 as a dense matrix.
inline std::vector<std::vector<double>> sym_walk(std::size_t n, const std::vector<Edge>& edges) {
  double total = 0;
  for (const auto& e : edges) total += e.w;
  const auto m = vertex_mass(n, edges);
  std::vector<std::vector<double>> S(n, std::vector<double>(n, 0.0));
  for (const auto& e : edges) {
    const double x = 0.5 * (e.w / total) / std::sqrt(m[e.u] * m[e.v]);
    S[e.u][e.v] += x;
    S[e.v][e.u] += x;
  }
  return S;
}

// Power iteration with deflation on S + I (positive semidefinite because the
// walk spectrum lies in [-1, 1]); returns eigenvalues in descending order.
inline std::vector<double> power_spectrum(std::vector<std::vector<double>> S, std::uint64_t seed = 7,
                                          int iterations = 200000) {
  const std::size_t n = S.size();
  for (std::size_t i = 0; i < n; ++i) S[i][i] += 1.0;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> found;
  std::vector<double> values;
  auto orthogonalize = [&](std::vector<double>& x) {
    for (const auto& q : found) {
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += x[i] * q[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * q[i];
    }
  };
  auto normalize = [&](std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    for (double& v : x) v /= s;
    return s;
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> x(n);
    for (double& v : x) v = nd(gen);
    orthogonalize(x);
    normalize(x);
    std::vector<double> y(n);
    double rayleigh = 0;
    for (int it = 0; it < iterations; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = 0;
        for (std::size_t j = 0; j < n; ++j) y[i] += S[i][j] * x[j];
      }
      orthogonalize(y);
      double nrm = 0;
      for (double v : y) nrm += v * v;
      if (nrm < 1e-300) break;  // remaining eigenvalue 0 of S + I
      double r = 0;
      for (std::size_t i = 0; i < n; ++i) r += x[i] * y[i];
      normalize(y);
      double diff = 0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y[i] - x[i]));
      x.swap(y);
      const bool settled = std::abs(r - rayleigh) < 1e-15 && diff < 1e-12;
      rayleigh = r;
      if (settled) break;
    }
    // exact Rayleigh quotient of the final vector
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) row += S[i][j] * x[j];
      r += x[i] * row;
    }
    found.push_back(x);
    values.push_back(r - 1.0);
  }
  std::sort(values.rbegin(), values.rend());
  return values;
}

// Eigenvalues of a small dense symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> A) {
  const std::size_t n = A.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(A[p][q]) < 1e-300) continue;
        const double theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
        const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = A[i][i];
  std::sort(d.rbegin(), d.rend());
  return d;
}

// Brute-force mixing inequality over every pair of subsets. Edge mass between
// S and T counts ordered pairs (u in S, v in T), each direction carrying half
// the edge weight.
struct MixingCount {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
};
inline MixingCount mixing_check(std::size_t n, const std::vector<Edge>& edges, double lambda) {
  double total = 0;
  for (const auto& e : edges) total += e.w;
  const auto m = vertex_mass(n, edges);
  MixingCount out;
  for (std::uint64_t S = 0; S < (1ull << n); ++S)
    for (std::uint64_t T = 0; T < (1ull << n); ++T) {
      double ns = 0, nt = 0, est = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (S >> i & 1) ns += m[i];
        if (T >> i & 1) nt += m[i];
      }
      for (const auto& e : edges) {
        const double h = 0.5 * e.w / total;
        if ((S >> e.u & 1) && (T >> e.v & 1)) est += h;
        if ((S >> e.v & 1) && (T >> e.u & 1)) est += h;
      }
      ++out.pairs;
      const double rhs = lambda * std::sqrt(std::max(0.0, ns * nt * (1 - ns) * (1 - nt)));
      if (std::abs(est - ns * nt) > rhs + 1e-12) ++out.violations;
    }
  return out;
}

// Bipartite discrepancy: max over nonempty S in L, T in R of
// |nu(E(S,T)) - nu(S)nu(T)| / sqrt(nu(S)nu(T)), side masses normalized per side.
inline double bipartite_alpha(const std::vector<std::uint32_t>& left, const std::vector<std::uint32_t>& right,
                              const std::vector<Edge>& edges) {
  double total = 0;
  for (const auto& e : edges) total += e.w;
  std::map<std::uint32_t, double> mass;
  for (const auto& e : edges) {
    mass[e.u] += e.w / total;
    mass[e.v] += e.w / total;
  }
  std::map<std::uint32_t, std::size_t> li, ri;
  for (std::size_t i = 0; i < left.size(); ++i) li[left[i]] = i;
  for (std::size_t i = 0; i < right.size(); ++i) ri[right[i]] = i;
  double best = 0;
  for (std::uint64_t S = 1; S < (1ull << left.size()); ++S)
    for (std::uint64_t T = 1; T < (1ull << right.size()); ++T) {
      double ns = 0, nt = 0, est = 0;
      for (std::size_t i = 0; i < left.size(); ++i)
        if (S >> i & 1) ns += mass[left[i]];
      for (std::size_t i = 0; i < right.size(); ++i)
        if (T >> i & 1) nt += mass[right[i]];
      for (const auto& e : edges) {
        const bool uleft = li.count(e.u) > 0;
        const auto l = uleft ? e.u : e.v, r = uleft ? e.v : e.u;
        if ((S >> li[l] & 1) && (T >> ri[r] & 1)) est += e.w / total;
      }
      best = std::max(best, std::abs(est - ns * nt) / std::sqrt(ns * nt));
    }
  return best;
}

// All k-cliques (as sorted vertex lists) of an undirected graph given by an
// adjacency predicate on 0..n-1, by plain backtracking.
inline std::vector<std::vector<std::uint32_t>> cliques(std::size_t n, std::size_t k,
                                                       const std::function<bool(std::uint32_t, std::uint32_t)>& adj) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = start; v < n; ++v) {
      bool ok = true;
      for (auto u : cur) ok = ok && adj(u, v);
      if (!ok) continue;
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Face measure by direct summation: sum of containing top weights over
// C(d+1, |s|).
inline double face_measure(const std::vector<std::vector<std::uint32_t>>& tops, const std::vector<double>& w,
                           const std::vector<std::uint32_t>& s) {
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  const std::size_t k = tops[0].size();
  double binom = 1;
  for (std::size_t i = 0; i < s.size(); ++i) binom = binom * (k - i) / (i + 1);
  double acc = 0;
  for (std::size_t i = 0; i < tops.size(); ++i)
    if (std::includes(tops[i].begin(), tops[i].end(), s.begin(), s.end())) acc += w[i];
  return acc / total / binom;
}

}  // namespace oracle
