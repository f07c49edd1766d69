#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <burgers/error.hpp>
#include <burgers/scheme.hpp>

namespace burgers::cli {

/// Unknown key, wrong type, missing or out-of-range parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct DataSpec {
  std::string scenario = "trig";
  std::uint64_t seed = 1;
  int kmax = 3;
  double amplitude = 1.0;
  std::vector<double> value;
  double epsilon = 0.5;
  double alpha = 0.5;
};

struct ForcingSpec {
  std::string scenario = "zero";
  std::uint64_t seed = 2;
  int kmax = 2;
  double amplitude = 0.5;
  double omega = 0.0;
  double lambda = -2.0;
};

struct RunConfig {
  std::string experiment = "uniform_estimates";
  SchemeConfig scheme;
  DataSpec data;
  ForcingSpec forcing;
  std::filesystem::path output_dir = "burgers_out";
  bool snapshots = false;
  bool concurrent = false;
  std::vector<std::string> checks;

  // Per-check parameters.
  int gronwall_pairs = 10;
  int heat_scaling_points = 4096;
  double heat_scaling_tolerance = 0.05;
  double oracle_tolerance = 1e-5;
  int schauder_j_min = -4;
  double schauder_M = 2.0;
};

/// Nested objects flatten to dotted keys; arrays stay leaves.
nlohmann::json flatten(const nlohmann::json& tree);

/// Strict: every key must be known and every value in range. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& tree);
RunConfig load_config(const std::filesystem::path& path);

/// Every accepted dotted key, sorted.
std::vector<std::string> known_keys();

}  // namespace burgers::cli
