#include "wsn/measures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsn/kernels.hpp"

namespace wsn {

SpectrumSummary spectrum(const AdjacencyMatrix& adj) {
  SpectrumSummary s;
  s.n = adj.size();
  if (s.n == 0) return s;
  const auto n = static_cast<Eigen::Index>(s.n);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = adj(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ? 1.0 : 0.0;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
  s.lambda_max = s.eigenvalues.front();
  return s;
}

double regularity_difference(const SpectrumSummary& s) {
  if (s.n == 0) return 0.0;
  double sum_sq = 0.0;
  for (double l : s.eigenvalues) sum_sq += l * l;
  return std::abs(sum_sq - static_cast<double>(s.n) * s.lambda_max);
}

double regularity_difference(const AdjacencyMatrix& adj) { return regularity_difference(spectrum(adj)); }

namespace {

using AdjList = std::vector<std::vector<int>>;

AdjList to_lists(const AdjacencyMatrix& adj) {
  AdjList out(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) out[i] = adj.neighbors(i);
  return out;
}

struct PowerResult {
  std::vector<double> x;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

// Power iteration on (A + I) restricted to `members`, starting from ones.
PowerResult power_iterate(const AdjList& g, const std::vector<int>& members, double tol, int max_iter) {
  const std::size_t n = g.size();
  PowerResult r;
  r.x.assign(n, 0.0);
  const double start = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (int v : members) r.x[static_cast<std::size_t>(v)] = start;
  std::vector<double> y(n, 0.0);
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    double sq = 0.0;
    for (int v : members) {
      const auto vi = static_cast<std::size_t>(v);
      double acc = r.x[vi];
      for (int u : g[vi]) acc += r.x[static_cast<std::size_t>(u)];
      y[vi] = acc;
      sq += acc * acc;
    }
    const double len = std::sqrt(sq);
    double diff = 0.0;
    for (int v : members) {
      const auto vi = static_cast<std::size_t>(v);
      y[vi] /= len;
      const double d = y[vi] - r.x[vi];
      diff += d * d;
    }
    std::swap(r.x, y);
    r.residual = std::sqrt(diff);
    // |(A + I) x| for a unit x converges to lambda_max + 1.
    r.lambda = len - 1.0;
    if (r.residual < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

std::vector<std::vector<int>> components(const AdjList& g) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s] || g[s].empty()) continue;
    std::vector<int> comp{static_cast<int>(s)};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (int u : g[static_cast<std::size_t>(comp[k])]) {
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

Centrality eigenvector_centrality(const AdjacencyMatrix& adj, double tol, int max_iter) {
  Centrality c;
  const std::size_t n = adj.size();
  c.values.assign(n, 0.0);
  if (n == 0 || adj.edge_count() == 0) return c;

  const AdjList g = to_lists(adj);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  PowerResult r = power_iterate(g, all, tol, max_iter);
  if (!r.converged) {
    throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(max_iter) +
                               " iterations (residual " + std::to_string(r.residual) + ")",
                           r.residual);
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].empty()) r.x[i] = 0.0;
    sq += r.x[i] * r.x[i];
  }
  const double len = std::sqrt(sq);
  for (std::size_t i = 0; i < n; ++i) c.values[i] = r.x[i] / len;
  c.defined = true;
  c.lambda_max = r.lambda;
  c.iterations = r.iterations;

  const auto comps = components(g);
  if (comps.size() > 1) {
    std::vector<double> roots;
    for (const auto& comp : comps) roots.push_back(power_iterate(g, comp, tol, max_iter).lambda);
    std::sort(roots.begin(), roots.end(), std::greater<>());
    c.ill_conditioned = roots[0] - roots[1] < 1e-6;
  }
  return c;
}

std::vector<double> degree_centrality(const AdjacencyMatrix& adj, bool normalized) {
  const std::size_t n = adj.size();
  std::vector<double> out(n);
  const double scale = normalized && n > 1 ? 1.0 / static_cast<double>(n - 1) : 1.0;
  for (std::size_t i = 0; i < n; ++i) out[i] = adj.degree(i) * scale;
  return out;
}

std::map<int, int> degree_distribution(const AdjacencyMatrix& adj) {
  std::map<int, int> hist;
  for (std::size_t i = 0; i < adj.size(); ++i) ++hist[adj.degree(i)];
  return hist;
}

MeasureSeries::Trace MeasureSeries::trace(int id) const {
  Trace tr;
  const auto k = static_cast<std::size_t>(id - 1);
  bool started = false;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t].size() <= k) continue;
    if (!started) {
      tr.start = static_cast<int>(t);
      started = true;
    }
    tr.values.push_back(values[t][k]);
  }
  if (!started) throw std::invalid_argument("node " + std::to_string(id) + " never appears");
  return tr;
}

MeasureSeries ec_time_trace(const TemporalNetworkGraph& tng) {
  MeasureSeries s{"eigenvector_centrality", std::vector<std::vector<double>>(tng.size())};
  const auto steps = static_cast<long long>(tng.size());
  std::vector<std::string> errors(tng.size());
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < steps; ++t) {
    const auto tu = static_cast<std::size_t>(t);
    try {
      s.values[tu] = eigenvector_centrality(tng[tu].adjacency).values;
    } catch (const ConvergenceError& e) {
      errors[tu] = e.what();
    }
  }
  for (std::size_t t = 0; t < errors.size(); ++t) {
    if (!errors[t].empty()) throw ConvergenceError("t=" + std::to_string(t) + ": " + errors[t], 0.0);
  }
  return s;
}

std::vector<double> regularity_series(const TemporalNetworkGraph& tng) {
  std::vector<double> out(tng.size());
  const auto steps = static_cast<long long>(tng.size());
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < steps; ++t) {
    out[static_cast<std::size_t>(t)] = regularity_difference(tng[static_cast<std::size_t>(t)].adjacency);
  }
  return out;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("pearson: need at least two samples");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(a) || constant(b)) return std::nullopt;
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / (std::sqrt(saa) * std::sqrt(sbb)), -1.0, 1.0);
}

CorrelationMap time_lag_correlation(const MeasureSeries::Trace& a, const MeasureSeries::Trace& b, int w,
                                    int stride) {
  if (w < 2) throw std::invalid_argument("window must be >= 2");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  const int t0 = std::max(a.start, b.start);
  const int t1 = std::min(a.start + static_cast<int>(a.values.size()), b.start + static_cast<int>(b.values.size()));
  if (t1 - t0 < w) {
    throw std::invalid_argument("window " + std::to_string(w) + " longer than the common trace range (" +
                                std::to_string(std::max(0, t1 - t0)) + " steps)");
  }
  const auto len = static_cast<std::size_t>(t1 - t0);
  const std::span<const double> sa(a.values.data() + (t0 - a.start), len);
  const std::span<const double> sb(b.values.data() + (t0 - b.start), len);
  CorrelationMap m;
  m.window = w;
  m.stride = stride;
  m.t0 = t0;
  m.rows = static_cast<int>((len - static_cast<std::size_t>(w)) / static_cast<std::size_t>(stride) + 1);
  m.cols = m.rows;
  m.entries = kernels::correlation_windows(sa, sb, w, stride);
  return m;
}

}  // namespace wsn
