#pragma once

// Random graph and log generators and a Jacobi eigenvalue oracle shared by the unit tests and the
// acceptance suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wsn/adjacency.hpp"
#include "wsn/rng.hpp"
#include "wsn/tng.hpp"

namespace wsn::testing {

inline AdjacencyMatrix random_graph(std::size_t n, double p, Rng& rng) {
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) a.set(i, j);
    }
  }
  return a;
}

/// Random spanning tree plus extra edges with probability p.
inline AdjacencyMatrix random_connected_graph(std::size_t n, double p, Rng& rng) {
  AdjacencyMatrix a = random_graph(n, p, rng);
  for (std::size_t k = 1; k < n; ++k) {
    const auto parent = static_cast<std::size_t>(rng.uniform() * static_cast<double>(k));
    a.set(k, parent);
  }
  return a;
}

inline AdjacencyMatrix complete_graph(std::size_t n) {
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j);
  }
  return a;
}

inline AdjacencyMatrix cycle_graph(std::size_t n) {
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, (i + 1) % n);
  return a;
}

inline AdjacencyMatrix star_graph(std::size_t leaves) {
  AdjacencyMatrix a(leaves + 1);
  for (std::size_t k = 1; k <= leaves; ++k) a.set(0, k);
  return a;
}

/// Log with a growing node count and edges that persist with probability
/// `stay` and appear with probability `born` per step.
inline TemporalNetworkGraph random_tng(Rng& rng, int steps, int max_nodes, bool positions, bool strategies) {
  TemporalNetworkGraph tng;
  std::size_t n = 1;
  AdjacencyMatrix prev(1);
  std::vector<int> injected{0};
  for (int t = 0; t < steps; ++t) {
    if (t > 0 && n < static_cast<std::size_t>(max_nodes) && rng.uniform() < 0.3) {
      ++n;
      injected.push_back(t);
    }
    Frame f;
    f.t = t;
    f.adjacency = AdjacencyMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool was = i < prev.size() && j < prev.size() && prev(i, j);
        if (rng.uniform() < (was ? 0.8 : 0.1)) f.adjacency.set(i, j);
      }
    }
    if (positions) {
      for (std::size_t k = 0; k < n; ++k) {
        f.nodes.push_back(NodeRecord{static_cast<int>(k + 1), {rng.uniform(0, 10), rng.uniform(0, 10)}, injected[k]});
      }
    }
    if (strategies && t > 0) {
      for (std::size_t k = 0; k < prev.size(); ++k) {
        f.strategies.push_back(rng.uniform() < 0.5 ? Strategy::kGa : Strategy::kVoronoi);
      }
    }
    prev = f.adjacency;
    tng.push_back(std::move(f));
  }
  return tng;
}

/// Cyclic Jacobi eigenvalues of a symmetric 0/1 matrix, descending.
inline std::vector<double> jacobi_eigenvalues(const AdjacencyMatrix& adj) {
  const std::size_t n = adj.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = adj(i, j) ? 1.0 : 0.0;
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Relabels nodes: node i of the result is node perm[i] of `a`.
inline AdjacencyMatrix permute(const AdjacencyMatrix& a, const std::vector<std::size_t>& perm) {
  AdjacencyMatrix b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a(perm[i], perm[j])) b.set(i, j);
    }
  }
  return b;
}

}  // namespace wsn::testing
