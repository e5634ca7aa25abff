#include "wsn/app.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "wsn/errors.hpp"
#include "wsn/export.hpp"
#include "wsn/measures.hpp"
#include "wsn/metrics.hpp"
#include "wsn/svg.hpp"

namespace wsn {

namespace fs = std::filesystem;
using nlohmann::json;

const char* version() { return WSN_VERSION; }

namespace {

const char* status_name(RunStatus s) { return s == RunStatus::kConverged ? "converged" : "no_convergence"; }

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw MissingDataError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string summary_to_json(const RunSummary& s) {
  json j;
  j["version"] = s.version;
  j["preset"] = s.preset;
  j["strategy"] = to_string(s.strategy);
  j["seed"] = s.seed;
  j["status"] = status_name(s.status);
  j["steps_to_cutoff"] = s.steps_to_cutoff;
  j["steps_to_full_injection"] = s.steps_to_full_injection;
  j["final_pac"] = s.final_pac;
  j["final_cdt"] = s.final_cdt;
  j["node_count"] = s.node_count;
  j["config"] = s.config;
  return j.dump(2) + "\n";
}

RunSummary summary_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunSummary s;
    s.version = j.at("version").get<std::string>();
    s.preset = j.at("preset").get<std::string>();
    s.strategy = parse_strategy(j.at("strategy").get<std::string>());
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto status = j.at("status").get<std::string>();
    if (status != "converged" && status != "no_convergence") throw ParseError(0, "summary: bad status '" + status + "'");
    s.status = status == "converged" ? RunStatus::kConverged : RunStatus::kNoConvergence;
    s.steps_to_cutoff = j.at("steps_to_cutoff").get<int>();
    s.steps_to_full_injection = j.at("steps_to_full_injection").get<int>();
    s.final_pac = j.at("final_pac").get<double>();
    s.final_cdt = j.at("final_cdt").get<double>();
    s.node_count = j.at("node_count").get<int>();
    s.config = j.at("config").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("summary: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(0, std::string("summary: ") + e.what());
  }
}

RunSummary read_summary(const fs::path& path) { return summary_from_json(slurp(path)); }

RunSummary run_to_directory(const RunConfig& cfg_in, const fs::path& dir) {
  RunConfig cfg = cfg_in;
  cfg.seeds = {cfg.sim.seed};
  const Environment env = make_environment(cfg);
  const DeploymentResult result = run_deployment(env, cfg.sim, cfg.ga);

  fs::create_directories(dir);
  write_tng(dir / "tng.log", result.tng);
  {
    auto out = open_out(dir / "metrics.csv");
    write_metrics_csv(out, result.metrics);
  }
  RunSummary s;
  s.version = version();
  s.preset = cfg.name;
  s.strategy = cfg.sim.strategy;
  s.seed = cfg.sim.seed;
  s.status = result.status;
  s.steps_to_cutoff = result.metrics.steps_to_cutoff;
  s.steps_to_full_injection = result.metrics.steps_to_full_injection;
  s.final_pac = result.metrics.pac.back();
  s.final_cdt = result.metrics.cdt.back();
  s.node_count = static_cast<int>(result.tng.node_count());
  s.config = config_to_text(cfg);
  auto out = open_out(dir / "summary.json");
  out << summary_to_json(s);
  return s;
}

std::vector<std::string> analyze_log(const fs::path& tng_path, const AnalysisOptions& opts, const fs::path& out,
                                     bool require_cdt) {
  const TemporalNetworkGraph tng = read_tng(tng_path);
  const int n = static_cast<int>(tng.node_count());
  if (require_cdt && !tng.has_positions()) {
    throw MissingDataError(tng_path.string() + ": CDT needs the N (node position) channel, which this log lacks");
  }
  auto pairs = opts.pairs;
  if (pairs.empty() && n >= 2) pairs.emplace_back(1, 2);
  for (const auto& [a, b] : pairs) {
    if (a == b || a > n || b > n) {
      throw ConfigError(fmt::format("pairs: {}:{} is not a pair of distinct node ids in 1..{}", a, b, n));
    }
  }
  if (opts.window < 2) throw ConfigError("window: must be >= 2");
  if (opts.histogram_bucket < 1) throw ConfigError("histogram_bucket: must be >= 1");

  fs::create_directories(out);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    auto f = open_out(out / name);
    f << text;
    written.push_back(name);
  };
  auto csv = [&](const std::string& name, auto&& writer) {
    std::ostringstream s;
    writer(s);
    emit(name, s.str());
  };

  const auto intervals = edge_intervals(tng);
  const auto hist = connection_length_distribution(tng, opts.histogram_bucket);
  const auto reg = regularity_series(tng);
  const MeasureSeries ec = ec_time_trace(tng);

  csv("edge_intervals.csv", [&](std::ostream& s) { write_edge_intervals_csv(s, intervals); });
  csv("connection_length_hist.csv", [&](std::ostream& s) { write_length_hist_csv(s, hist, opts.histogram_bucket); });
  csv("missing_pairs.csv", [&](std::ostream& s) { write_missing_pairs_csv(s, missing_pairs(tng)); });
  csv("regularity.csv", [&](std::ostream& s) { write_regularity_csv(s, tng, reg); });
  csv("ec_traces.csv", [&](std::ostream& s) { write_ec_traces_csv(s, ec, opts.ec_normalization); });
  csv("degree_hist.csv", [&](std::ostream& s) { write_degree_hist_csv(s, tng); });
  if (tng.has_positions()) csv("cdt.csv", [&](std::ostream& s) { write_cdt_csv(s, cdt(tng)); });

  emit("edge_intervals.svg", svg::edge_diagram(intervals, static_cast<int>(tng.size()), n));
  emit("connection_length_hist.svg", svg::length_histogram(hist, opts.histogram_bucket));
  emit("regularity.svg", svg::series("Regularity difference", "delta_reg", reg));
  emit("ec_traces.svg", svg::ec_traces(normalize_ec(ec, opts.ec_normalization)));

  for (const auto& [a, b] : pairs) {
    const auto ta = ec.trace(a);
    const auto tb = ec.trace(b);
    const int overlap = static_cast<int>(tng.size()) - std::max(ta.start, tb.start);
    if (overlap < opts.window) {
      throw ConfigError(fmt::format("window: {} exceeds the {} steps nodes {} and {} share", opts.window,
                                    std::max(0, overlap), a, b));
    }
    const int stride = opts.stride > 0 ? opts.stride : auto_stride(overlap, opts.window);
    const CorrelationMap map = time_lag_correlation(ta, tb, opts.window, stride);
    const std::string stem = fmt::format("correlation_{}_{}", a, b);
    csv(stem + ".csv", [&](std::ostream& s) { write_correlation_csv(s, map, a, b); });
    emit(stem + ".svg", svg::heatmap(map, a, b));
  }
  return written;
}

namespace {

RunStats stats_from(const TemporalNetworkGraph& tng, const std::vector<double>& pac_series,
                    const std::vector<double>& cdt_series) {
  RunStats r;
  const std::size_t steps = tng.size();
  const auto reg = regularity_series(tng);
  const std::size_t from = 3 * steps / 4;
  double sum = 0.0;
  for (std::size_t t = from; t < steps; ++t) sum += reg[t];
  r.tail_regularity = steps > from ? sum / static_cast<double>(steps - from) : 0.0;

  int longest = 0;
  for (const EdgeInterval& e : edge_intervals(tng)) longest = std::max(longest, e.length());
  r.max_interval_fraction = steps ? static_cast<double>(longest) / static_cast<double>(steps) : 0.0;

  const auto missing = missing_pairs(tng);
  const int n = static_cast<int>(tng.node_count());
  int far = 0, far_missing = 0, near = 0, near_missing = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const bool m = missing.count({i, j}) > 0;
      if (j - i > 20) {
        ++far;
        far_missing += m;
      } else if (j - i <= 5) {
        ++near;
        near_missing += m;
      }
    }
  }
  if (far) r.missing_far = static_cast<double>(far_missing) / far;
  if (near) r.missing_near = static_cast<double>(near_missing) / near;

  for (std::size_t t = 1; t < cdt_series.size(); ++t) {
    if (cdt_series[t] < cdt_series[t - 1]) r.cdt_nondecreasing = false;
  }
  for (double p : pac_series) {
    if (!(p >= 0.0 && p <= 1.0)) r.pac_in_range = false;
  }
  r.ok = true;
  return r;
}

}  // namespace

RunStats stats_from_result(const DeploymentResult& result, const std::string& preset, StrategyKind strategy,
                           std::uint64_t seed) {
  RunStats r = stats_from(result.tng, result.metrics.pac, result.metrics.cdt);
  r.preset = preset;
  r.strategy = strategy;
  r.seed = seed;
  r.status = result.status;
  r.steps_to_cutoff = result.metrics.steps_to_cutoff;
  r.final_pac = result.metrics.pac.back();
  r.final_cdt = result.metrics.cdt.back();
  return r;
}

RunStats collect_stats(const fs::path& dir) {
  const RunSummary s = read_summary(dir / "summary.json");
  const TemporalNetworkGraph tng = read_tng(dir / "tng.log");
  std::ifstream in(dir / "metrics.csv");
  if (!in) throw MissingDataError("cannot read " + (dir / "metrics.csv").string());
  const CsvTable m = read_csv(in);
  const auto pc = m.column("pac");
  const auto cc = m.column("cdt");
  std::vector<double> pac_series;
  std::vector<double> cdt_series;
  for (const auto& row : m.rows) {
    pac_series.push_back(std::stod(row[pc]));
    cdt_series.push_back(std::stod(row[cc]));
  }
  if (pac_series.size() != tng.size()) throw ParseError(0, "metrics.csv and tng.log disagree on the step count");
  RunStats r = stats_from(tng, pac_series, cdt_series);
  r.preset = s.preset;
  r.strategy = s.strategy;
  r.seed = s.seed;
  r.status = s.status;
  r.steps_to_cutoff = s.steps_to_cutoff;
  r.final_pac = s.final_pac;
  r.final_cdt = s.final_cdt;
  return r;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool MatrixReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const Assertion* MatrixReport::find(const std::string& id) const {
  for (const Assertion& a : assertions) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

namespace {

const char* short_name(StrategyKind s) { return s == StrategyKind::kGaVoronoi ? "ga" : "voronoi"; }

constexpr StrategyKind kStrategies[] = {StrategyKind::kVoronoiOnly, StrategyKind::kGaVoronoi};

struct Index {
  std::map<std::tuple<std::string, StrategyKind, std::uint64_t>, const RunStats*> by_key;

  const RunStats* get(const std::string& preset, StrategyKind s, std::uint64_t seed) const {
    const auto it = by_key.find({preset, s, seed});
    return it == by_key.end() || !it->second->ok ? nullptr : it->second;
  }

  template <class F>
  std::vector<double> values(const std::string& preset, StrategyKind s, const std::vector<std::uint64_t>& seeds,
                             F f) const {
    std::vector<double> out;
    for (auto seed : seeds) {
      if (const RunStats* r = get(preset, s, seed)) {
        if (auto v = f(*r)) out.push_back(*v);
      }
    }
    return out;
  }
};

std::optional<double> steps_of(const RunStats& r) { return r.steps_to_cutoff; }

}  // namespace

MatrixReport evaluate_matrix(const std::vector<RunStats>& runs, const std::vector<std::uint64_t>& seeds) {
  MatrixReport rep;
  rep.seeds = seeds;
  rep.runs = runs;
  rep.low_confidence = seeds.size() < 2;
  Index idx;
  for (const RunStats& r : rep.runs) idx.by_key[{r.preset, r.strategy, r.seed}] = &r;

  const auto& presets = matrix_presets();
  for (const auto& p : presets) {
    for (StrategyKind s : kStrategies) {
      CellSummary c;
      c.preset = p;
      c.strategy = s;
      for (auto seed : seeds) {
        const RunStats* r = idx.get(p, s, seed);
        if (r == nullptr || r->status != RunStatus::kConverged) ++c.failures;
        if (r != nullptr) ++c.runs;
      }
      c.median_steps = median(idx.values(p, s, seeds, steps_of));
      c.median_pac = median(idx.values(p, s, seeds, [](const RunStats& r) -> std::optional<double> { return r.final_pac; }));
      c.median_cdt = median(idx.values(p, s, seeds, [](const RunStats& r) -> std::optional<double> { return r.final_cdt; }));
      const auto tail = idx.values(p, s, seeds, [](const RunStats& r) -> std::optional<double> { return r.tail_regularity; });
      c.mean_tail_regularity = tail.empty() ? std::nan("") : std::accumulate(tail.begin(), tail.end(), 0.0) / tail.size();
      rep.cells.push_back(c);
    }
  }

  auto add = [&](std::string id, std::string desc, bool ok, std::string detail) {
    rep.assertions.push_back({std::move(id), std::move(desc), ok, std::move(detail)});
  };
  auto complete = [&](const std::string& p, StrategyKind s) {
    for (auto seed : seeds) {
      if (idx.get(p, s, seed) == nullptr) return false;
    }
    return true;
  };
  const auto V = StrategyKind::kVoronoiOnly;
  const auto G = StrategyKind::kGaVoronoi;

  for (const auto& p : presets) {
    const double g = median(idx.values(p, G, seeds, steps_of));
    const double v = median(idx.values(p, V, seeds, steps_of));
    add("steps_ga_below_voronoi/" + p, "median steps to cutoff: GA+Voronoi < Voronoi-only",
        complete(p, G) && complete(p, V) && g < v, fmt::format("ga {} vs voronoi {}", g, v));
  }

  // Noise pairs: (quiet, noisy) presets sharing an obstacle layout.
  const std::vector<std::pair<std::string, std::string>> noise_pairs = {{presets[0], presets[1]},
                                                                       {presets[2], presets[3]}};
  for (const auto& [quiet, noisy] : noise_pairs) {
    const std::string layout = quiet.substr(0, quiet.find('_'));
    const bool full = complete(quiet, V) && complete(noisy, V) && complete(quiet, G) && complete(noisy, G);
    const double vq = median(idx.values(quiet, V, seeds, steps_of));
    const double vn = median(idx.values(noisy, V, seeds, steps_of));
    add("voronoi_faster_with_noise/" + layout, "Voronoi-only median steps: noisy < quiet", full && vn < vq,
        fmt::format("noisy {} vs quiet {}", vn, vq));
    add("voronoi_noise_ratio/" + layout, "Voronoi-only median steps ratio noisy/quiet < 0.8",
        full && vn / vq < 0.8, fmt::format("ratio {:.4f}", vn / vq));
    const double gq = median(idx.values(quiet, G, seeds, steps_of));
    const double gn = median(idx.values(noisy, G, seeds, steps_of));
    const double ratio = gn / gq;
    add("ga_noise_insensitive/" + layout, "GA+Voronoi median steps ratio noisy/quiet in [0.8, 1.25]",
        full && ratio >= 0.8 && ratio <= 1.25, fmt::format("ratio {:.4f}", ratio));

    int wins = 0;
    double dv = 0.0, dg = 0.0;
    for (auto seed : seeds) {
      const RunStats* a = idx.get(noisy, V, seed);
      const RunStats* b = idx.get(quiet, V, seed);
      const RunStats* c = idx.get(noisy, G, seed);
      const RunStats* d = idx.get(quiet, G, seed);
      if (a && b) {
        wins += a->tail_regularity > b->tail_regularity;
        dv += a->tail_regularity - b->tail_regularity;
      }
      if (c && d) dg += c->tail_regularity - d->tail_regularity;
    }
    const auto n = static_cast<double>(seeds.size());
    const int need = static_cast<int>(std::ceil(0.8 * n));
    add("regularity_rises_with_noise/" + layout,
        "Voronoi-only tail delta_reg noisy > quiet in at least 80% of seeds", full && wins >= need,
        fmt::format("{}/{} seeds (need {})", wins, seeds.size(), need));
    add("ga_regularity_shift_smaller/" + layout,
        "|GA+Voronoi tail delta_reg shift from noise| < |Voronoi-only shift|", full && std::abs(dg) < std::abs(dv),
        fmt::format("ga {:.4f} vs voronoi {:.4f}", dg / n, dv / n));

    auto frac = [](const RunStats& r) -> std::optional<double> { return r.max_interval_fraction; };
    const double fq = median(idx.values(quiet, V, seeds, frac));
    const double fn = median(idx.values(noisy, V, seeds, frac));
    add("persistent_links_quiet/" + layout,
        "Voronoi-only quiet median longest interval >= 50% of run, noisy strictly shorter",
        full && fq >= 0.5 && fn < fq, fmt::format("quiet {:.4f}, noisy {:.4f}", fq, fn));
  }

  for (const auto& p : presets) {
    for (StrategyKind s : kStrategies) {
      const auto far = idx.values(p, s, seeds, [](const RunStats& r) { return r.missing_far; });
      const auto near = idx.values(p, s, seeds, [](const RunStats& r) { return r.missing_near; });
      const double mf = median(far);
      const double mn = median(near);
      add(fmt::format("missing_pair_banding/{}/{}", p, short_name(s)),
          "median missing-pair rate: |i-j| > 20 exceeds |i-j| <= 5",
          complete(p, s) && !far.empty() && !near.empty() && mf > mn, fmt::format("far {:.4f}, near {:.4f}", mf, mn));
    }
  }

  for (const auto& p : presets) {
    auto cdt_of = [](const RunStats& r) -> std::optional<double> { return r.final_cdt; };
    const double g = median(idx.values(p, G, seeds, cdt_of));
    const double v = median(idx.values(p, V, seeds, cdt_of));
    add("cdt_ga_above_voronoi/" + p, "median CDT at cutoff: GA+Voronoi > Voronoi-only",
        complete(p, G) && complete(p, V) && g > v, fmt::format("ga {:.2f} vs voronoi {:.2f}", g, v));
  }

  bool sane = true;
  for (const RunStats& r : rep.runs) sane = sane && r.ok && r.cdt_nondecreasing && r.pac_in_range;
  add("metric_sanity", "every run: CDT nondecreasing and PAC in [0, 1]", sane && !rep.runs.empty(),
      fmt::format("{} runs", rep.runs.size()));
  return rep;
}

MatrixReport run_matrix(const std::vector<std::uint64_t>& seeds, const fs::path& out, std::ostream* progress) {
  if (seeds.empty()) throw ConfigError("seeds: empty seed list");
  struct Job {
    RunConfig cfg;
    fs::path dir;
  };
  std::vector<Job> jobs;
  for (const auto& p : matrix_presets()) {
    const RunConfig base = load_preset(p);
    for (StrategyKind s : kStrategies) {
      for (auto seed : seeds) {
        Job j{base, out / p / short_name(s) / fmt::format("seed_{}", seed)};
        j.cfg.sim.strategy = s;
        j.cfg.sim.seed = seed;
        jobs.push_back(std::move(j));
      }
    }
  }
  std::vector<RunStats> runs(jobs.size());
  const auto count = static_cast<long long>(jobs.size());
  long long done = 0;
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    const Job& j = jobs[static_cast<std::size_t>(k)];
    RunStats& r = runs[static_cast<std::size_t>(k)];
    try {
      fs::remove_all(j.dir);
      run_to_directory(j.cfg, j.dir);
      r = collect_stats(j.dir);
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    r.preset = j.cfg.name;
    r.strategy = j.cfg.sim.strategy;
    r.seed = j.cfg.sim.seed;
#pragma omp critical(wsn_progress)
    {
      ++done;
      if (progress) {
        fmt::print(*progress, "[{}/{}] {} {} seed {}: {}\n", done, count, r.preset, short_name(r.strategy), r.seed,
                   r.ok ? fmt::format("{} steps, {}", r.steps_to_cutoff, status_name(r.status)) : "error: " + r.error);
        progress->flush();
      }
    }
  }
  MatrixReport rep = evaluate_matrix(runs, seeds);
  write_report(rep, out);
  return rep;
}

void write_report(const MatrixReport& rep, const fs::path& out) {
  fs::create_directories(out);
  auto md = open_out(out / "report.md");
  fmt::print(md, "# Strategy x environment matrix\n\nseeds: {}\n\n", rep.seeds.size());
  if (rep.low_confidence) {
    md << "WARNING: low confidence, a single seed cannot support median comparisons.\n\n";
  }
  md << "| preset | strategy | runs | failed | median steps | median final PAC | median final CDT | tail delta_reg |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const CellSummary& c : rep.cells) {
    fmt::print(md, "| {} | {} | {} | {} | {} | {:.4f} | {:.2f} | {:.4f} |\n", c.preset, to_string(c.strategy), c.runs,
               c.failures, c.median_steps, c.median_pac, c.median_cdt, c.mean_tail_regularity);
  }
  md << "\n## Assertions\n\n";
  for (const Assertion& a : rep.assertions) {
    fmt::print(md, "- {} {}: {} ({})\n", a.passed ? "PASS" : "FAIL", a.id, a.description, a.detail);
  }
  for (const RunStats& r : rep.runs) {
    if (!r.ok) fmt::print(md, "- run error {} {} seed {}: {}\n", r.preset, to_string(r.strategy), r.seed, r.error);
  }

  json j;
  j["version"] = version();
  j["seeds"] = rep.seeds;
  j["low_confidence"] = rep.low_confidence;
  for (const CellSummary& c : rep.cells) {
    j["cells"].push_back({{"preset", c.preset},
                          {"strategy", to_string(c.strategy)},
                          {"runs", c.runs},
                          {"failures", c.failures},
                          {"median_steps", c.median_steps},
                          {"median_final_pac", c.median_pac},
                          {"median_final_cdt", c.median_cdt},
                          {"mean_tail_delta_reg", c.mean_tail_regularity}});
  }
  for (const Assertion& a : rep.assertions) {
    j["assertions"].push_back({{"id", a.id}, {"description", a.description}, {"passed", a.passed}, {"detail", a.detail}});
  }
  auto js = open_out(out / "report.json");
  js << j.dump(2) << "\n";
}

}  // namespace wsn
