#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wsn/deployment.hpp"
#include "wsn/environment.hpp"

namespace wsn {

enum class EcNormalization { kL2, kMax };

const char* to_string(EcNormalization n);

struct AnalysisOptions {
  int window = 10;          // time-lag correlation window (steps)
  int stride = 0;           // window start spacing; 0 picks one giving at most 200 rows
  int histogram_bucket = 1; // connection-length bucket width (steps)
  EcNormalization ec_normalization = EcNormalization::kL2;
  std::vector<std::pair<int, int>> pairs;  // node pairs for correlation maps
};

/// Everything needed to reproduce a run or a sweep.
struct RunConfig {
  std::string name = "custom";
  double width = 10.0;
  double height = 10.0;
  Point inlet{0.5, 0.5};
  std::vector<Obstacle> obstacles;
  double noise_deviation = 0.0;
  SimConfig sim;
  GaParams ga;
  AnalysisOptions analysis;
  std::vector<std::uint64_t> seeds{1};
};

/// Parses the flat "key = value" format. '#' starts a comment. Keys may
/// appear once, except `obstacle`, which accumulates. Values left unset take
/// defaults derived from sensing_radius (comm_radius = 2 R_s, max_step =
/// R_s / 4, min_separation = R_s / 10, ga_mutation_radius = R_s / 2).
/// Throws ConfigError "<source>:<line>: <key>: <problem>" on unknown keys,
/// malformed values or out-of-range parameters.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Directory holding the shipped presets.
std::filesystem::path preset_dir();

/// Loads `<preset_dir>/<name>.cfg`; throws ConfigError for unknown names.
RunConfig load_preset(const std::string& name);

/// Names of the four shipped environment presets, in matrix order.
const std::vector<std::string>& matrix_presets();

/// Canonical text form listing every key explicitly. Parsing it yields the
/// same configuration bit for bit.
std::string config_to_text(const RunConfig& cfg);

/// Throws ConfigError when any parameter is out of range.
void validate(const RunConfig& cfg);

Environment make_environment(const RunConfig& cfg);

/// Parses "i:j,k:l" into node id pairs; throws ConfigError.
std::vector<std::pair<int, int>> parse_pairs(const std::string& text);

StrategyKind parse_strategy(const std::string& text);

}  // namespace wsn
