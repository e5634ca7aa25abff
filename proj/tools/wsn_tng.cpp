// wsn-tng: sensor deployment simulator and temporal network analysis.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <optional>

#include "wsn/app.hpp"
#include "wsn/config.hpp"
#include "wsn/errors.hpp"
#include "wsn/measures.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kNoConvergence = 3, kParse = 4 };

struct Options {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string strategy;
  std::string out;
  std::optional<int> window;
  std::optional<int> stride;
  std::string pairs;
  std::string tng;
  bool require_cdt = false;
};

wsn::RunConfig base_config(const Options& o, const std::string& fallback_preset) {
  if (!o.config.empty() && !o.preset.empty()) throw wsn::ConfigError("--config and --preset are mutually exclusive");
  if (!o.config.empty()) return wsn::load_config(o.config);
  return wsn::load_preset(o.preset.empty() ? fallback_preset : o.preset);
}

int do_run(const Options& o) {
  wsn::RunConfig cfg = base_config(o, "open_quiet");
  if (o.seed) cfg.sim.seed = *o.seed;
  if (!o.strategy.empty()) cfg.sim.strategy = wsn::parse_strategy(o.strategy);
  const fs::path out = o.out.empty() ? fs::path("run") : fs::path(o.out);
  const wsn::RunSummary s = wsn::run_to_directory(cfg, out);
  fmt::print("{} {} seed {}: {} after {} steps, PAC {:.4f}, CDT {:.3f} -> {}\n", s.preset, wsn::to_string(s.strategy),
             s.seed, s.status == wsn::RunStatus::kConverged ? "cutoff" : "NO CONVERGENCE", s.steps_to_cutoff,
             s.final_pac, s.final_cdt, out.string());
  return s.status == wsn::RunStatus::kConverged ? kOk : kNoConvergence;
}

int do_analyze(const Options& o) {
  wsn::AnalysisOptions opts;
  if (!o.config.empty()) opts = wsn::load_config(o.config).analysis;
  if (o.window) opts.window = *o.window;
  if (o.stride) opts.stride = *o.stride;
  if (!o.pairs.empty()) opts.pairs = wsn::parse_pairs(o.pairs);
  fs::path log = o.tng;
  if (fs::is_directory(log)) log /= "tng.log";
  if (!fs::exists(log)) throw wsn::ConfigError("tng: no such file " + log.string());
  const fs::path out = o.out.empty() ? log.parent_path() / "analysis" : fs::path(o.out);
  std::vector<std::string> files;
  try {
    files = wsn::analyze_log(log, opts, out, o.require_cdt);
  } catch (const wsn::ParseError& e) {
    std::cerr << "parse error: " << log.string() << ": " << e.what() << "\n";
    return kParse;
  }
  fmt::print("wrote {} files to {}\n", files.size(), out.string());
  return kOk;
}

int do_matrix(const Options& o) {
  std::vector<std::uint64_t> seeds;
  if (!o.config.empty()) seeds = wsn::load_config(o.config).seeds;
  if (o.seed) seeds = {*o.seed};
  if (seeds.empty()) seeds = wsn::load_config(wsn::preset_dir() / "matrix.cfg").seeds;
  const fs::path out = o.out.empty() ? fs::path("matrix") : fs::path(o.out);
  const wsn::MatrixReport rep = wsn::run_matrix(seeds, out, &std::cerr);
  if (rep.low_confidence) fmt::print("warning: low confidence, only {} seed\n", seeds.size());
  for (const auto& a : rep.assertions) fmt::print("{} {} ({})\n", a.passed ? "PASS" : "FAIL", a.id, a.detail);
  fmt::print("report: {}\n", (out / "report.md").string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor network deployment simulator and temporal network analysis"};
  app.set_version_flag("--version", std::string(wsn::version()));
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "simulate one deployment and write tng.log, metrics.csv, summary.json");
  run->add_option("--config", o.config, "run config file");
  run->add_option("--preset", o.preset, "shipped preset (open_quiet, open_noisy, scatter_quiet, scatter_noisy)");
  run->add_option("--seed", o.seed, "random seed");
  run->add_option("--strategy", o.strategy, "voronoi or ga")->check(CLI::IsMember({"voronoi", "ga"}));
  run->add_option("--out", o.out, "output directory");

  auto* analyze = app.add_subcommand("analyze", "derive CSV and SVG analyses from a TNG log");
  analyze->add_option("tng", o.tng, "tng.log or a run directory")->required();
  analyze->add_option("--config", o.config, "config file supplying analysis options");
  analyze->add_option("--out", o.out, "output directory (default <log dir>/analysis)");
  analyze->add_option("--window", o.window, "time-lag correlation window in steps");
  analyze->add_option("--stride", o.stride, "window start spacing (0 = automatic)");
  analyze->add_option("--pairs", o.pairs, "node pairs for correlation maps, e.g. \"1:2,3:7\"");
  analyze->add_flag("--cdt", o.require_cdt, "fail unless the log carries node positions");

  auto* matrix = app.add_subcommand("matrix", "run both strategies over the four presets and seeds");
  matrix->add_option("--config", o.config, "config file with a seeds list");
  matrix->add_option("--seed", o.seed, "single seed (low-confidence report)");
  matrix->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (run->parsed()) return do_run(o);
    if (analyze->parsed()) return do_analyze(o);
    return do_matrix(o);
  } catch (const wsn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const wsn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const wsn::MissingDataError& e) {
    std::cerr << "missing data: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
