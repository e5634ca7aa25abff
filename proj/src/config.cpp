#include "wsn/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "wsn/errors.hpp"

namespace wsn {

const char* to_string(EcNormalization n) { return n == EcNormalization::kMax ? "max" : "l2"; }

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("expected a number, got '" + s + "'");
  return v;
}

long long to_int(const std::string& s) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("expected an integer, got '" + s + "'");
  return v;
}

std::vector<std::string> expect_tokens(const std::string& v, std::size_t n) {
  auto toks = split_ws(v);
  if (toks.size() != n) {
    throw ConfigError("expected " + std::to_string(n) + " value(s), got " + std::to_string(toks.size()));
  }
  return toks;
}

double one_double(const std::string& v) { return to_double(expect_tokens(v, 1)[0]); }
int one_int(const std::string& v) {
  const long long x = to_int(expect_tokens(v, 1)[0]);
  if (x < -2147483647LL || x > 2147483647LL) throw ConfigError("integer out of range");
  return static_cast<int>(x);
}

bool one_bool(const std::string& v) {
  const std::string t = expect_tokens(v, 1)[0];
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError("expected true or false, got '" + t + "'");
}

Obstacle parse_obstacle(const std::string& v) {
  const auto toks = split_ws(v);
  if (toks.empty()) throw ConfigError("expected 'rect x0 y0 x1 y1' or 'circle cx cy r'");
  if (toks[0] == "rect" && toks.size() == 5) {
    return RectObstacle{to_double(toks[1]), to_double(toks[2]), to_double(toks[3]), to_double(toks[4])};
  }
  if (toks[0] == "circle" && toks.size() == 4) {
    return CircleObstacle{{to_double(toks[1]), to_double(toks[2])}, to_double(toks[3])};
  }
  throw ConfigError("expected 'rect x0 y0 x1 y1' or 'circle cx cy r'");
}

// "1 2 3" or "1..10" or a mix.
std::vector<std::uint64_t> parse_seeds(const std::string& v) {
  std::vector<std::uint64_t> out;
  for (const std::string& tok : split_ws(v)) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      const long long s = to_int(tok);
      if (s < 0) throw ConfigError("seeds must be nonnegative");
      out.push_back(static_cast<std::uint64_t>(s));
      continue;
    }
    const long long a = to_int(tok.substr(0, dots));
    const long long b = to_int(tok.substr(dots + 2));
    if (a < 0 || b < a || b - a > 100000) throw ConfigError("bad seed range '" + tok + "'");
    for (long long s = a; s <= b; ++s) out.push_back(static_cast<std::uint64_t>(s));
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

std::string num(double v) { return fmt::format("{}", v); }

struct Key {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"name", [](RunConfig& c, const std::string& v) { c.name = expect_tokens(v, 1)[0]; },
       [](const RunConfig& c) { return c.name; }},
      {"width", [](RunConfig& c, const std::string& v) { c.width = one_double(v); },
       [](const RunConfig& c) { return num(c.width); }},
      {"height", [](RunConfig& c, const std::string& v) { c.height = one_double(v); },
       [](const RunConfig& c) { return num(c.height); }},
      {"inlet",
       [](RunConfig& c, const std::string& v) {
         const auto t = expect_tokens(v, 2);
         c.inlet = {to_double(t[0]), to_double(t[1])};
       },
       [](const RunConfig& c) { return num(c.inlet.x) + " " + num(c.inlet.y); }},
      {"noise_deviation", [](RunConfig& c, const std::string& v) { c.noise_deviation = one_double(v); },
       [](const RunConfig& c) { return num(c.noise_deviation); }},
      {"noise_scale", [](RunConfig& c, const std::string& v) { c.sim.noise_scale = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.noise_scale); }},
      {"noisy_adjacency", [](RunConfig& c, const std::string& v) { c.sim.noisy_adjacency = one_bool(v); },
       [](const RunConfig& c) { return std::string(c.sim.noisy_adjacency ? "true" : "false"); }},
      {"max_nodes", [](RunConfig& c, const std::string& v) { c.sim.max_nodes = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.max_nodes); }},
      {"sensing_radius", [](RunConfig& c, const std::string& v) { c.sim.sensing_radius = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.sensing_radius); }},
      {"comm_radius", [](RunConfig& c, const std::string& v) { c.sim.comm_radius = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.comm_radius); }},
      {"max_step", [](RunConfig& c, const std::string& v) { c.sim.max_step = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.max_step); }},
      {"min_separation", [](RunConfig& c, const std::string& v) { c.sim.min_separation = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.min_separation); }},
      {"stall_window", [](RunConfig& c, const std::string& v) { c.sim.stall_window = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.stall_window); }},
      {"stall_threshold", [](RunConfig& c, const std::string& v) { c.sim.stall_threshold = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.stall_threshold); }},
      {"pac_target", [](RunConfig& c, const std::string& v) { c.sim.pac_target = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.pac_target); }},
      {"quiescence_eps", [](RunConfig& c, const std::string& v) { c.sim.quiescence_eps = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.quiescence_eps); }},
      {"quiescence_steps", [](RunConfig& c, const std::string& v) { c.sim.quiescence_steps = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.quiescence_steps); }},
      {"step_cap", [](RunConfig& c, const std::string& v) { c.sim.step_cap = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.step_cap); }},
      {"strategy", [](RunConfig& c, const std::string& v) { c.sim.strategy = parse_strategy(expect_tokens(v, 1)[0]); },
       [](const RunConfig& c) { return to_string(c.sim.strategy); }},
      {"grid_resolution", [](RunConfig& c, const std::string& v) { c.sim.grid_resolution = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.grid_resolution); }},
      {"wall_margin", [](RunConfig& c, const std::string& v) { c.sim.wall_margin = one_double(v); },
       [](const RunConfig& c) { return num(c.sim.wall_margin); }},
      {"ga_neighbor_threshold",
       [](RunConfig& c, const std::string& v) { c.sim.ga_neighbor_threshold = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.sim.ga_neighbor_threshold); }},
      {"ga_population", [](RunConfig& c, const std::string& v) { c.ga.population = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.ga.population); }},
      {"ga_generations", [](RunConfig& c, const std::string& v) { c.ga.generations = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.ga.generations); }},
      {"ga_mutation_radius", [](RunConfig& c, const std::string& v) { c.ga.mutation_radius = one_double(v); },
       [](const RunConfig& c) { return num(c.ga.mutation_radius); }},
      {"ga_elite", [](RunConfig& c, const std::string& v) { c.ga.elite = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.ga.elite); }},
      {"ga_movement_penalty", [](RunConfig& c, const std::string& v) { c.ga.movement_penalty = one_double(v); },
       [](const RunConfig& c) { return num(c.ga.movement_penalty); }},
      {"window", [](RunConfig& c, const std::string& v) { c.analysis.window = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.analysis.window); }},
      {"stride", [](RunConfig& c, const std::string& v) { c.analysis.stride = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.analysis.stride); }},
      {"histogram_bucket", [](RunConfig& c, const std::string& v) { c.analysis.histogram_bucket = one_int(v); },
       [](const RunConfig& c) { return std::to_string(c.analysis.histogram_bucket); }},
      {"ec_normalization",
       [](RunConfig& c, const std::string& v) {
         const std::string t = expect_tokens(v, 1)[0];
         if (t == "l2") c.analysis.ec_normalization = EcNormalization::kL2;
         else if (t == "max") c.analysis.ec_normalization = EcNormalization::kMax;
         else throw ConfigError("expected l2 or max, got '" + t + "'");
       },
       [](const RunConfig& c) { return std::string(to_string(c.analysis.ec_normalization)); }},
      {"pairs", [](RunConfig& c, const std::string& v) { c.analysis.pairs = parse_pairs(trim(v)); },
       [](const RunConfig& c) {
         std::string s;
         for (const auto& [i, j] : c.analysis.pairs) s += (s.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(j);
         return s;
       }},
      {"seeds", [](RunConfig& c, const std::string& v) { c.seeds = parse_seeds(v); },
       [](const RunConfig& c) {
         std::string s;
         for (auto x : c.seeds) s += (s.empty() ? "" : " ") + std::to_string(x);
         return s;
       }},
  };
  return table;
}

const Key* find_key(const std::string& name) {
  for (const Key& k : keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

}  // namespace

StrategyKind parse_strategy(const std::string& text) {
  if (text == "voronoi" || text == "voronoi_only") return StrategyKind::kVoronoiOnly;
  if (text == "ga" || text == "ga_voronoi") return StrategyKind::kGaVoronoi;
  throw ConfigError("strategy: expected voronoi or ga, got '" + text + "'");
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  if (trim(text).empty()) return out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("pairs: expected i:j, got '" + item + "'");
    long long i = 0;
    long long j = 0;
    try {
      i = to_int(trim(item.substr(0, colon)));
      j = to_int(trim(item.substr(colon + 1)));
    } catch (const ConfigError&) {
      throw ConfigError("pairs: expected i:j, got '" + item + "'");
    }
    if (i < 1 || j < 1 || i > 1000000 || j > 1000000) throw ConfigError("pairs: node ids are 1-based, got '" + item + "'");
    out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "obstacle") {
      try {
        cfg.obstacles.push_back(parse_obstacle(value));
      } catch (const ConfigError& e) {
        throw ConfigError(where + "obstacle: " + e.what());
      }
      continue;
    }
    const Key* k = find_key(key);
    if (k == nullptr) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + key + ": given more than once");
    try {
      k->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }
  const double rs = cfg.sim.sensing_radius;
  if (!seen.count("comm_radius")) cfg.sim.comm_radius = 2.0 * rs;
  if (!seen.count("max_step")) cfg.sim.max_step = rs / 4.0;
  if (!seen.count("min_separation")) cfg.sim.min_separation = rs / 10.0;
  if (!seen.count("ga_mutation_radius")) cfg.ga.mutation_radius = rs / 2.0;
  if (!cfg.seeds.empty()) cfg.sim.seed = cfg.seeds.front();
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  return parse_config(in, path.string());
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("WSN_PRESET_DIR")) return env;
  return WSN_PRESET_DIR;
}

const std::vector<std::string>& matrix_presets() {
  static const std::vector<std::string> names = {"open_quiet", "open_noisy", "scatter_quiet", "scatter_noisy"};
  return names;
}

RunConfig load_preset(const std::string& name) {
  const auto path = preset_dir() / (name + ".cfg");
  if (name.empty() || name.find('/') != std::string::npos || !std::filesystem::exists(path)) {
    std::string known;
    for (const auto& n : matrix_presets()) known += " " + n;
    throw ConfigError("preset: unknown preset '" + name + "' (shipped:" + known + ")");
  }
  return load_config(path);
}

std::string config_to_text(const RunConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) {
    const std::string v = k.get(cfg);
    if (v.empty()) continue;
    out += fmt::format("{} = {}\n", k.name, v);
  }
  for (const Obstacle& o : cfg.obstacles) {
    if (const auto* r = std::get_if<RectObstacle>(&o)) {
      out += fmt::format("obstacle = rect {} {} {} {}\n", r->x0, r->y0, r->x1, r->y1);
    } else {
      const auto& c = std::get<CircleObstacle>(o);
      out += fmt::format("obstacle = circle {} {} {}\n", c.center.x, c.center.y, c.radius);
    }
  }
  return out;
}

void validate(const RunConfig& cfg) {
  validate(cfg.sim);
  validate(cfg.ga);
  if (!(cfg.noise_deviation >= 0.0)) throw ConfigError("noise_deviation: must be >= 0");
  if (cfg.analysis.window < 2) throw ConfigError("window: must be >= 2");
  if (cfg.analysis.stride < 0) throw ConfigError("stride: must be >= 0");
  if (cfg.analysis.histogram_bucket < 1) throw ConfigError("histogram_bucket: must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("seeds: empty seed list");
  make_environment(cfg);
}

Environment make_environment(const RunConfig& cfg) {
  Environment env(cfg.width, cfg.height, cfg.inlet, cfg.obstacles, cfg.noise_deviation);
  return env;
}

}  // namespace wsn
