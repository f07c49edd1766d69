#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <burgers_cli/app.hpp>
#include <burgers_cli/config.hpp>
#include <burgers_cli/registry.hpp>

namespace fs = std::filesystem;
using namespace burgers;
using namespace burgers::cli;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("burgers_cli_" + tag + "_" + std::to_string(std::rand()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json small_run(const fs::path& dir) {
  return json{{"scheme", {{"T", 0.1}, {"dt", 1e-2}, {"m_max", 6}}},
              {"grid", {{"d", 1}, {"n", 32}}},
              {"output", {{"dir", dir.string()}}}};
}

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_json(const json& tree) {
  std::ostringstream out, err;
  RunConfig c;
  try {
    c = parse_config(tree);
  } catch (const ConfigError& e) {
    return {config_error, "", e.what()};
  }
  const int status = run(c, out, err);
  return {status, out.str(), err.str()};
}

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "burgers");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("nested and dotted configs parse the same") {
  const json nested{{"scheme", {{"nu", 0.5}, {"T", 0.2}}}, {"grid", {{"d", 2}, {"n", 16}}}, {"data", {{"seed", 9}}}};
  const json dotted{{"scheme.nu", 0.5}, {"scheme.T", 0.2}, {"grid.d", 2}, {"grid.n", 16}, {"data.seed", 9}};
  const auto a = parse_config(nested), b = parse_config(dotted);
  CHECK(a.scheme.nu == b.scheme.nu);
  CHECK(a.scheme.horizon == 0.2);
  CHECK(a.scheme.grid.dimension() == 2);
  CHECK(b.scheme.grid.points() == 16);
  CHECK(a.data.seed == 9);
  CHECK(a.checks == b.checks);
  CHECK_FALSE(a.checks.empty());
}

TEST_CASE("config parsing is strict") {
  CHECK_THROWS_AS(parse_config(json{{"scheme", {{"nuu", 1.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"scheme.nu", 1.0}, {"scheme", {{"nu", 2.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"scheme.nu", "fast"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"experiment", "nothing"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"data.scenario", "constant"}}), ConfigError);
  const auto keys = known_keys();
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(std::find(keys.begin(), keys.end(), "scheme.beta") != keys.end());
}

TEST_CASE("beta outside the half interval is a config error") {
  TempDir tmp("beta");
  auto tree = small_run(tmp.path);
  tree["scheme"]["beta"] = 0.6;
  const auto file = tmp.path / "beta.json";
  std::ofstream(file) << tree.dump();
  std::ostringstream out, err;
  CHECK(run_file(file, out, err) == config_error);
  CHECK(err.str().find("(0, 1/2)") != std::string::npos);
  const auto r = run_args({"run", file.string()});
  CHECK(r.status == config_error);
}

TEST_CASE("zero data pass every check") {
  TempDir tmp("zero");
  auto tree = small_run(tmp.path);
  tree["data"] = {{"scenario", "zero"}};
  tree["checks"] = {"uniform", "short_time", "gronwall", "schauder", "interpolation", "heat_scaling"};
  tree["gronwall"] = {{"pairs", 3}};
  tree["heat_scaling"] = {{"n", 1024}, {"tolerance", 0.1}};
  const auto r = run_json(tree);
  INFO(r.out << r.err);
  CHECK(r.status == ok);
  const auto summary = json::parse(slurp(tmp.path / "summary.json"));
  CHECK(summary["verdict"] == "pass");
  CHECK(summary["checks"].size() == 6);
  for (const auto& entry : fs::directory_iterator(tmp.path)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("slack_", 0) != 0) continue;
    std::istringstream rows(slurp(entry.path()));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "t,slack");
    while (std::getline(rows, line)) CHECK(std::stod(line.substr(line.find(',') + 1)) >= 0.0);
  }
}

TEST_CASE("oracle comparison on a Cole-Hopf datum") {
  TempDir tmp("oracle");
  json tree{{"experiment", "oracle_compare"},
            {"scheme", {{"T", 0.5}, {"dt", 1e-3}, {"tol_fp", 1e-12}, {"m_max", 60}}},
            {"grid", {{"d", 1}, {"n", 64}}},
            {"data", {{"scenario", "cole_hopf"}, {"epsilon", 0.5}}},
            {"output", {{"dir", tmp.path.string()}}}};
  const auto r = run_json(tree);
  INFO(r.out << r.err);
  CHECK(r.status == ok);
  const auto j = json::parse(slurp(tmp.path / "oracle_compare.json"));
  CHECK(j["sup_difference"].get<double>() <= 1e-5);
  CHECK(j["verdict"] == "pass");

  tree["data"]["scenario"] = "trig";
  CHECK(run_json(tree).status == config_error);
}

TEST_CASE("registry listing is sorted, stable and self-consistent") {
  const auto& ex = experiments();
  for (std::size_t i = 1; i < ex.size(); ++i) CHECK(ex[i - 1].name < ex[i].name);
  for (const char* name : {"uniform_estimates", "short_time", "gronwall", "schauder", "interpolation", "heat_scaling",
                           "oracle_compare"}) {
    CHECK(find_experiment(name) != nullptr);
  }
  CHECK(registry_self_test().empty());
  const auto a = run_args({"list"}), b = run_args({"list"});
  CHECK(a.status == ok);
  CHECK(a.out == b.out);
  CHECK(a.out == catalog());
  CHECK(a.out.find("uniform_estimates") != std::string::npos);
  const auto self = run_args({"list", "--self-test"});
  CHECK(self.status == ok);
}

TEST_CASE("runs are deterministic and concurrency does not change artifacts") {
  TempDir a("det_a"), b("det_b"), c("det_c");
  auto tree = small_run(a.path);
  tree["checks"] = {"uniform", "short_time", "schauder", "gronwall"};
  tree["gronwall"] = {{"pairs", 2}};
  CHECK(run_json(tree).status != config_error);
  tree["output"]["dir"] = b.path.string();
  CHECK(run_json(tree).status != config_error);
  tree["output"]["dir"] = c.path.string();
  tree["run"] = {{"concurrent", true}};
  CHECK(run_json(tree).status != config_error);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const auto name = entry.path().filename();
    CHECK(slurp(entry.path()) == slurp(b.path / name));
    CHECK(slurp(entry.path()) == slurp(c.path / name));
    ++files;
  }
  CHECK(files > 5);
}

TEST_CASE("environment overrides the output directory") {
  TempDir cfg("env_cfg"), target("env_target");
  ::setenv("BURGERS_OUT_DIR", target.path.string().c_str(), 1);
  auto tree = small_run(cfg.path / "ignored");
  tree["checks"] = {"uniform"};
  const auto r = run_json(tree);
  ::unsetenv("BURGERS_OUT_DIR");
  CHECK(r.status == ok);
  CHECK(fs::exists(target.path / "summary.json"));
  CHECK_FALSE(fs::exists(cfg.path / "ignored" / "summary.json"));
}

TEST_CASE("divergent runs exit with their own status") {
  TempDir tmp("diverge");
  auto tree = small_run(tmp.path);
  tree["scheme"] = {{"T", 20.0}, {"dt", 0.1}, {"blocking_threshold", 1.0}};
  tree["data"] = {{"amplitude", 1e3}, {"kmax", 1}};
  tree["checks"] = {"uniform"};
  const auto r = run_json(tree);
  CHECK(r.status == diverged);
  CHECK(r.err.find("divergence") != std::string::npos);
}

TEST_CASE("version and usage") {
  const auto v = run_args({"version"});
  CHECK(v.status == ok);
  CHECK(v.out.find(version()) != std::string::npos);
  CHECK(run_args({"frobnicate"}).status == config_error);
}
