#include "burgers_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "burgers_cli/registry.hpp"

namespace burgers::cli {

namespace {

using Setter = std::function<void(const nlohmann::json&, RunConfig&)>;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double number(const std::string& key, const nlohmann::json& v) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "expected a finite number");
  return x;
}

long long integer(const std::string& key, const nlohmann::json& v) {
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<long long>(x);
  }
  fail(key, "expected an integer");
}

std::uint64_t seed(const std::string& key, const nlohmann::json& v) {
  const long long s = integer(key, v);
  if (s < 0) fail(key, "seeds are non-negative");
  return static_cast<std::uint64_t>(s);
}

bool boolean(const std::string& key, const nlohmann::json& v) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string text(const std::string& key, const nlohmann::json& v) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

int small_int(const std::string& key, const nlohmann::json& v) {
  const long long x = integer(key, v);
  if (x < -1000000000LL || x > 1000000000LL) fail(key, "out of range");
  return static_cast<int>(x);
}

// Grid pieces are collected first; GridSpec validates them together.
struct GridKeys {
  int d = 1;
  int n = 64;
  double L = 6.283185307179586;
};

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto scheme_num = [&](const std::string& key, double SchemeConfig::*field) {
      t[key] = [key, field](const nlohmann::json& v, RunConfig& c) { c.scheme.*field = number(key, v); };
    };
    t["experiment"] = [](const nlohmann::json& v, RunConfig& c) { c.experiment = text("experiment", v); };
    scheme_num("scheme.nu", &SchemeConfig::nu);
    scheme_num("scheme.c", &SchemeConfig::c);
    scheme_num("scheme.alpha", &SchemeConfig::alpha);
    scheme_num("scheme.beta", &SchemeConfig::beta);
    scheme_num("scheme.T", &SchemeConfig::horizon);
    scheme_num("scheme.dt", &SchemeConfig::dt);
    scheme_num("scheme.tol_fp", &SchemeConfig::tol_fp);
    scheme_num("scheme.blocking_threshold", &SchemeConfig::blocking_threshold);
    t["scheme.m_max"] = [](const nlohmann::json& v, RunConfig& c) { c.scheme.m_max = small_int("scheme.m_max", v); };
    t["scheme.seed"] = [](const nlohmann::json& v, RunConfig& c) { c.scheme.seed = seed("scheme.seed", v); };
    t["scheme.holder_diagnostics"] = [](const nlohmann::json& v, RunConfig& c) {
      c.scheme.holder_diagnostics = boolean("scheme.holder_diagnostics", v);
    };
    t["scheme.holder_frames"] = [](const nlohmann::json& v, RunConfig& c) {
      c.scheme.holder_frames = small_int("scheme.holder_frames", v);
    };
    // grid.* handled separately.
    t["grid.d"] = nullptr;
    t["grid.n"] = nullptr;
    t["grid.L"] = nullptr;

    t["data.scenario"] = [](const nlohmann::json& v, RunConfig& c) { c.data.scenario = text("data.scenario", v); };
    t["data.seed"] = [](const nlohmann::json& v, RunConfig& c) { c.data.seed = seed("data.seed", v); };
    t["data.kmax"] = [](const nlohmann::json& v, RunConfig& c) { c.data.kmax = small_int("data.kmax", v); };
    t["data.amplitude"] = [](const nlohmann::json& v, RunConfig& c) { c.data.amplitude = number("data.amplitude", v); };
    t["data.epsilon"] = [](const nlohmann::json& v, RunConfig& c) { c.data.epsilon = number("data.epsilon", v); };
    t["data.alpha"] = [](const nlohmann::json& v, RunConfig& c) { c.data.alpha = number("data.alpha", v); };
    t["data.value"] = [](const nlohmann::json& v, RunConfig& c) {
      if (!v.is_array()) fail("data.value", "expected an array of numbers");
      c.data.value.clear();
      for (const auto& x : v) c.data.value.push_back(number("data.value", x));
    };

    t["forcing.scenario"] = [](const nlohmann::json& v, RunConfig& c) {
      c.forcing.scenario = text("forcing.scenario", v);
    };
    t["forcing.seed"] = [](const nlohmann::json& v, RunConfig& c) { c.forcing.seed = seed("forcing.seed", v); };
    t["forcing.kmax"] = [](const nlohmann::json& v, RunConfig& c) { c.forcing.kmax = small_int("forcing.kmax", v); };
    t["forcing.amplitude"] = [](const nlohmann::json& v, RunConfig& c) {
      c.forcing.amplitude = number("forcing.amplitude", v);
    };
    t["forcing.omega"] = [](const nlohmann::json& v, RunConfig& c) { c.forcing.omega = number("forcing.omega", v); };
    t["forcing.lambda"] = [](const nlohmann::json& v, RunConfig& c) {
      c.forcing.lambda = number("forcing.lambda", v);
    };

    t["output.dir"] = [](const nlohmann::json& v, RunConfig& c) { c.output_dir = text("output.dir", v); };
    t["output.snapshots"] = [](const nlohmann::json& v, RunConfig& c) {
      c.snapshots = boolean("output.snapshots", v);
    };
    t["run.concurrent"] = [](const nlohmann::json& v, RunConfig& c) { c.concurrent = boolean("run.concurrent", v); };
    t["checks"] = [](const nlohmann::json& v, RunConfig& c) {
      if (!v.is_array()) fail("checks", "expected an array of check names");
      c.checks.clear();
      for (const auto& x : v) c.checks.push_back(text("checks", x));
    };

    t["gronwall.pairs"] = [](const nlohmann::json& v, RunConfig& c) {
      c.gronwall_pairs = small_int("gronwall.pairs", v);
    };
    t["heat_scaling.n"] = [](const nlohmann::json& v, RunConfig& c) {
      c.heat_scaling_points = small_int("heat_scaling.n", v);
    };
    t["heat_scaling.tolerance"] = [](const nlohmann::json& v, RunConfig& c) {
      c.heat_scaling_tolerance = number("heat_scaling.tolerance", v);
    };
    t["oracle.tolerance"] = [](const nlohmann::json& v, RunConfig& c) {
      c.oracle_tolerance = number("oracle.tolerance", v);
    };
    t["schauder.j_min"] = [](const nlohmann::json& v, RunConfig& c) {
      c.schauder_j_min = small_int("schauder.j_min", v);
    };
    t["schauder.M"] = [](const nlohmann::json& v, RunConfig& c) { c.schauder_M = number("schauder.M", v); };
    return t;
  }();
  return table;
}

void flatten_into(const nlohmann::json& node, const std::string& prefix, nlohmann::json& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_into(value, path, out);
    } else {
      if (out.contains(path)) fail(path, "given twice");
      out[path] = value;
    }
  }
}

void validate(RunConfig& c) {
  try {
    c.scheme.validate();
  } catch (const InputError& e) {
    throw ConfigError(std::string("scheme: ") + e.what());
  }
  const int d = c.scheme.grid.dimension();
  const int n = c.scheme.grid.points();
  const auto& data = c.data;
  static const std::vector<std::string> data_scenarios{"cole_hopf", "constant", "lacunary", "trig", "zero"};
  if (std::find(data_scenarios.begin(), data_scenarios.end(), data.scenario) == data_scenarios.end()) {
    fail("data.scenario", "unknown scenario '" + data.scenario + "' (zero, constant, trig, cole_hopf, lacunary)");
  }
  if (data.scenario == "constant" && static_cast<int>(data.value.size()) != d) {
    fail("data.value", "constant data needs exactly d = " + std::to_string(d) + " entries");
  }
  if (data.scenario == "trig") {
    if (data.kmax < 0 || 2 * data.kmax >= n) fail("data.kmax", "must lie in [0, n/2)");
    if (!(data.amplitude >= 0.0)) fail("data.amplitude", "must be >= 0");
  }
  if (data.scenario == "cole_hopf" && !(std::abs(data.epsilon) < 1.0)) {
    fail("data.epsilon", "must lie in (-1, 1) to keep the potential positive");
  }
  if (data.scenario == "lacunary" && !(data.alpha > 0.0 && data.alpha <= 1.0)) {
    fail("data.alpha", "must lie in (0, 1]");
  }
  const auto& f = c.forcing;
  static const std::vector<std::string> forcing_scenarios{"gradient", "trig", "zero"};
  if (std::find(forcing_scenarios.begin(), forcing_scenarios.end(), f.scenario) == forcing_scenarios.end()) {
    fail("forcing.scenario", "unknown scenario '" + f.scenario + "' (zero, trig, gradient)");
  }
  if (f.scenario != "zero") {
    if (f.kmax < 0 || 2 * f.kmax >= n) fail("forcing.kmax", "must lie in [0, n/2)");
    if (!(f.amplitude >= 0.0)) fail("forcing.amplitude", "must be >= 0");
  }
  if (f.scenario == "gradient" && f.omega != 0.0) fail("forcing.omega", "gradient forcing is steady");
  if (data.scenario == "cole_hopf" && f.lambda == 0.0) fail("forcing.lambda", "must be nonzero");

  if (!find_experiment(c.experiment)) fail("experiment", "unknown experiment '" + c.experiment + "'");
  if (c.checks.empty()) c.checks = find_experiment(c.experiment)->checks;
  for (const auto& name : c.checks) {
    if (!find_check(name)) fail("checks", "unknown check '" + name + "'");
  }
  if (c.gronwall_pairs < 1) fail("gronwall.pairs", "must be >= 1");
  if (c.heat_scaling_points < 64 || (c.heat_scaling_points & (c.heat_scaling_points - 1)) != 0) {
    fail("heat_scaling.n", "must be a power of two >= 64");
  }
  if (!(c.heat_scaling_tolerance > 0.0)) fail("heat_scaling.tolerance", "must be > 0");
  if (!(c.oracle_tolerance > 0.0)) fail("oracle.tolerance", "must be > 0");
  if (c.schauder_j_min > 0) fail("schauder.j_min", "must be <= 0");
  if (!(c.schauder_M > 1.0)) fail("schauder.M", "must be > 1");
  if (c.output_dir.empty()) fail("output.dir", "must not be empty");
}

}  // namespace

nlohmann::json flatten(const nlohmann::json& tree) {
  if (!tree.is_object()) throw ConfigError("config root must be an object");
  nlohmann::json out = nlohmann::json::object();
  flatten_into(tree, "", out);
  return out;
}

RunConfig parse_config(const nlohmann::json& tree) {
  const auto flat = flatten(tree);
  const auto& table = setters();
  RunConfig c;
  GridKeys g;
  for (const auto& [key, value] : flat.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    if (key == "grid.d") {
      g.d = small_int(key, value);
    } else if (key == "grid.n") {
      g.n = small_int(key, value);
    } else if (key == "grid.L") {
      g.L = number(key, value);
    } else {
      it->second(value, c);
    }
  }
  try {
    c.scheme.grid = GridSpec(g.d, g.n, g.L);
  } catch (const InputError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  nlohmann::json tree;
  try {
    tree = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(tree);
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& [key, setter] : setters()) out.push_back(key);
  return out;
}

}  // namespace burgers::cli
