#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsn/config.hpp"
#include "wsn/deployment.hpp"

namespace wsn {

const char* version();

/// Contents of summary.json.
struct RunSummary {
  std::string version;
  std::string preset;
  StrategyKind strategy = StrategyKind::kVoronoiOnly;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::kConverged;
  int steps_to_cutoff = 0;
  int steps_to_full_injection = -1;
  double final_pac = 0.0;
  double final_cdt = 0.0;
  int node_count = 0;
  std::string config;  // canonical config text; re-running it reproduces the run
};

std::string summary_to_json(const RunSummary& s);
/// Throws ParseError on malformed or incomplete JSON.
RunSummary summary_from_json(const std::string& text);
RunSummary read_summary(const std::filesystem::path& path);

/// Runs `cfg` with cfg.sim.seed and cfg.sim.strategy and writes tng.log,
/// metrics.csv and summary.json into `dir` (created if needed). Outputs are
/// written even when the run hits the step cap; summary.status says so.
RunSummary run_to_directory(const RunConfig& cfg, const std::filesystem::path& dir);

/// Writes every analysis CSV and SVG for the log at `tng_path` into `out`.
/// Correlation maps are produced for opts.pairs, or for 1:2 when no pairs
/// are given and the log has at least two nodes. With `require_cdt` a log
/// without the position channel is an error; otherwise cdt.csv is written
/// only when positions are present. Returns the list of files written.
std::vector<std::string> analyze_log(const std::filesystem::path& tng_path, const AnalysisOptions& opts,
                                     const std::filesystem::path& out, bool require_cdt = false);

/// Per-run statistics the matrix report is built from.
struct RunStats {
  std::string preset;
  StrategyKind strategy = StrategyKind::kVoronoiOnly;
  std::uint64_t seed = 0;
  bool ok = false;          // run directory complete and readable
  std::string error;
  RunStatus status = RunStatus::kConverged;
  int steps_to_cutoff = 0;
  double final_pac = 0.0;
  double final_cdt = 0.0;
  double tail_regularity = 0.0;    // mean delta_reg over the final quarter of steps
  double max_interval_fraction = 0.0;  // longest edge interval / number of steps
  std::optional<double> missing_far;   // missing-pair rate among pairs with j - i > 20
  std::optional<double> missing_near;  // same for j - i <= 5
  bool cdt_nondecreasing = true;
  bool pac_in_range = true;
};

/// Reads a completed run directory (summary.json, tng.log, metrics.csv).
RunStats collect_stats(const std::filesystem::path& dir);

/// Computes RunStats directly from an in-memory result.
RunStats stats_from_result(const DeploymentResult& result, const std::string& preset, StrategyKind strategy,
                           std::uint64_t seed);

struct Assertion {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

struct CellSummary {
  std::string preset;
  StrategyKind strategy = StrategyKind::kVoronoiOnly;
  int runs = 0;
  int failures = 0;
  double median_steps = 0.0;
  double median_pac = 0.0;
  double median_cdt = 0.0;
  double mean_tail_regularity = 0.0;
};

struct MatrixReport {
  std::vector<std::uint64_t> seeds;
  std::vector<RunStats> runs;
  std::vector<CellSummary> cells;
  std::vector<Assertion> assertions;
  bool low_confidence = false;

  bool all_passed() const;
  const Assertion* find(const std::string& id) const;
};

double median(std::vector<double> v);

/// Builds cell summaries and evaluates the multi-seed assertions over runs
/// of the four matrix presets and both strategies.
MatrixReport evaluate_matrix(const std::vector<RunStats>& runs, const std::vector<std::uint64_t>& seeds);

/// Runs every (preset, strategy, seed) combination into
/// out/<preset>/<strategy>/seed_<n>, then evaluates the completed
/// directories. Independent runs may execute in parallel. Progress lines go
/// to `progress` when given.
MatrixReport run_matrix(const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out,
                        std::ostream* progress = nullptr);

/// report.md (tables and assertion lines) and report.json.
void write_report(const MatrixReport& report, const std::filesystem::path& out);

}  // namespace wsn
