#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsn/adjacency.hpp"
#include "wsn/tng.hpp"

namespace wsn {

struct SpectrumSummary {
  std::vector<double> eigenvalues;  // descending
  double lambda_max = 0.0;
  std::size_t n = 0;
};

/// Adjacency spectrum from a dense symmetric eigensolver.
SpectrumSummary spectrum(const AdjacencyMatrix& adj);

/// |sum_i lambda_i^2 - n lambda_max|. Zero exactly for regular graphs; 0 for n = 0.
double regularity_difference(const AdjacencyMatrix& adj);
double regularity_difference(const SpectrumSummary& s);

/// Power iteration ran out of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct Centrality {
  std::vector<double> values;  // unit L2 norm when defined
  bool defined = false;        // false for graphs without edges
  /// Two connected components share the largest eigenvalue (within 1e-6),
  /// so the split of weight between them is an artifact of the start vector.
  bool ill_conditioned = false;
  double lambda_max = 0.0;
  int iterations = 0;
};

/// Principal eigenvector of A by power iteration on A + I from the all-ones
/// vector, stopping when successive unit vectors differ by less than `tol`.
/// Isolated nodes get exactly 0. Throws ConvergenceError after `max_iter`.
Centrality eigenvector_centrality(const AdjacencyMatrix& adj, double tol = 1e-10, int max_iter = 200000);

/// Row sums, optionally divided by n - 1.
std::vector<double> degree_centrality(const AdjacencyMatrix& adj, bool normalized = false);

/// degree -> number of nodes with that degree.
std::map<int, int> degree_distribution(const AdjacencyMatrix& adj);

/// Per-node values over time: values[t][k] is node k+1 at step t; a node has
/// no entry before its injection.
struct MeasureSeries {
  std::string name;
  std::vector<std::vector<double>> values;

  /// Node `id` (1-based) values from its first step onward, plus that step.
  struct Trace {
    int start = 0;
    std::vector<double> values;
  };
  Trace trace(int id) const;
};

/// Eigenvector centrality of every snapshot. Errors carry the failing t.
MeasureSeries ec_time_trace(const TemporalNetworkGraph& tng);

/// Regularity difference of every snapshot.
std::vector<double> regularity_series(const TemporalNetworkGraph& tng);

/// Sample Pearson coefficient (arithmetic means). nullopt when either series
/// has zero variance. Throws std::invalid_argument on length mismatch or
/// fewer than two samples.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Windowed two-time correlation of two traces over their common time range:
/// entry (r, c) is the Pearson coefficient of a over [t0 + r s, t0 + r s + w)
/// and b over [t0 + c s, t0 + c s + w), with s the stride.
struct CorrelationMap {
  int window = 0;
  int stride = 1;
  int t0 = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::optional<double>> entries;  // row-major

  const std::optional<double>& at(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
};

/// Throws std::invalid_argument when w < 2, the traces do not overlap, or
/// the window is longer than the overlap.
CorrelationMap time_lag_correlation(const MeasureSeries::Trace& a, const MeasureSeries::Trace& b, int w,
                                    int stride = 1);

}  // namespace wsn
