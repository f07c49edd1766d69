#include "burgers_cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <burgers/heat.hpp>
#include <burgers/io.hpp>
#include <burgers/norms.hpp>
#include <burgers/oracle.hpp>
#include <burgers/random.hpp>
#include <burgers/schauder.hpp>
#include <burgers/snapshot.hpp>
#include <burgers/transport.hpp>
#include <burgers/trig_field.hpp>
#include <burgers/verify.hpp>

#include "burgers_cli/registry.hpp"

namespace burgers::cli {

namespace {

struct Scenario {
  VectorField u0;
  Forcing g;
  std::optional<ScalarField> phi0;
  std::optional<ScalarField> potential;
};

Scenario build_scenario(const RunConfig& c) {
  const auto& grid = c.scheme.grid;
  const int d = grid.dimension();
  const auto& data = c.data;
  const auto& fs = c.forcing;

  std::optional<ScalarField> potential;
  Forcing g = Forcing::zero(grid);
  if (fs.scenario == "trig") {
    auto g1 = make_trig_field(grid, fs.seed, fs.kmax, fs.amplitude);
    g = fs.omega == 0.0 ? Forcing::steady(std::move(g1))
                        : Forcing::modulated(std::move(g1), make_trig_field(grid, fs.seed + 1, fs.kmax, fs.amplitude),
                                             fs.omega);
  } else if (fs.scenario == "gradient") {
    potential = make_trig_scalar(grid, fs.seed, fs.kmax, fs.amplitude);
    g = cole_hopf_forcing(grid, potential, fs.lambda);
  }

  std::optional<ScalarField> phi0;
  VectorField u0(grid);
  if (data.scenario == "constant") {
    u0 = VectorField::constant(grid, data.value);
  } else if (data.scenario == "trig") {
    u0 = make_trig_field(grid, data.seed, data.kmax, data.amplitude);
  } else if (data.scenario == "cole_hopf") {
    phi0 = cole_hopf_datum(grid, data.epsilon);
    u0 = cole_hopf_velocity({*phi0}, c.scheme.dt, fs.lambda)[0];
  } else if (data.scenario == "lacunary") {
    std::vector<ScalarField> comps(static_cast<std::size_t>(d), ScalarField(grid));
    comps[0] = lacunary_field(grid, data.alpha, data.seed);
    u0 = VectorField(std::move(comps));
  }
  return {std::move(u0), std::move(g), std::move(phi0), std::move(potential)};
}

// Everything a check may read; shared read-only between concurrent checks.
struct Context {
  const RunConfig& config;
  SchemeConfig unit;
  VectorField u0;
  Forcing g;
  const Scenario& scenario;
  const KCalculator& k;
  const PicardResult* picard = nullptr;
};

struct Artifact {
  std::string file;
  std::string contents;
};

struct CheckOutcome {
  std::string name;
  bool pass = true;
  std::string detail;
  std::vector<Artifact> artifacts;
};

void add_report(CheckOutcome& out, const BoundReport& r) {
  out.artifacts.push_back({"report_" + r.name + ".json", dump_json(to_json(r))});
  out.artifacts.push_back({"slack_" + r.name + ".csv", slack_csv(r)});
  out.pass = out.pass && r.pass;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

CheckOutcome check_uniform_estimates(const Context& ctx) {
  CheckOutcome out{"uniform", true, {}, {}};
  const auto& records = ctx.picard->records;
  const auto reports = check_uniform(records, ctx.k);
  for (const auto* r : reports.all()) add_report(out, *r);
  add_report(out, check_heat_gradient(records.front(), ctx.k));
  out.detail = "c* (grad) = " + fmt(reports.grad.c_star) + ", c* (second) = " + fmt(reports.second.c_star);
  return out;
}

CheckOutcome check_short(const Context& ctx) {
  CheckOutcome out{"short_time", true, {}, {}};
  const auto reports = check_short_time(ctx.picard->records, ctx.k, ctx.config.scheme.beta);
  for (const auto* r : reports.all()) add_report(out, *r);
  nlohmann::json summary{{"ratios", json_numbers(reports.ratios)},
                         {"decay_sup", json_number(reports.decay_sup)},
                         {"decay_grad", json_number(reports.decay_grad)},
                         {"beta", ctx.config.scheme.beta}};
  out.artifacts.push_back({"short_time_decay.json", dump_json(summary)});
  out.detail = "decay exponents " + fmt(reports.decay_sup) + " (sup), " + fmt(reports.decay_grad) + " (grad)";
  return out;
}

CheckOutcome check_gronwall_pairs(const Context& ctx) {
  CheckOutcome out{"gronwall", true, {}, {}};
  const auto& grid = ctx.unit.grid;
  const int d = grid.dimension();
  std::optional<BoundReport> worst;
  nlohmann::json slacks = nlohmann::json::array();
  for (int i = 0; i < ctx.config.gronwall_pairs; ++i) {
    Rng rng(ctx.config.scheme.seed * 1000003ULL + static_cast<std::uint64_t>(i));
    auto coefficients = [&](std::uint64_t s) {
      TransportProblem p(ctx.u0, ctx.unit.horizon, ctx.unit.dt);
      p.drift = TimeSeries<VectorField>::constant(make_trig_field(grid, s, 2, rng.uniform(0.2, 1.0)));
      std::vector<double> m(static_cast<std::size_t>(d * d));
      for (double& x : m) x = rng.uniform(-0.5, 0.5);
      p.zeroth = TimeSeries<MatrixField>::constant(MatrixField::uniform(grid, m));
      if (!ctx.g.is_zero()) p.source = ctx.g.series();
      return p;
    };
    const auto p = coefficients(rng.next());
    const auto pbar = coefficients(rng.next());
    auto check = check_gronwall(p, pbar);
    check.report.name = "gronwall";
    const double slack = check.report.min_slack();
    slacks.push_back(json_number(slack));
    out.pass = out.pass && check.report.pass;
    if (!worst || slack < worst->min_slack()) worst = std::move(check.report);
  }
  worst->extra["pair_min_slacks"] = slacks;
  add_report(out, *worst);
  out.detail = "worst slack " + fmt(worst->min_slack()) + " over " + std::to_string(ctx.config.gronwall_pairs) +
               " pairs";
  return out;
}

Trajectory negated(const Trajectory& u) {
  std::vector<VectorField> frames;
  frames.reserve(u.size());
  for (const auto& f : u.frames()) frames.push_back(f * -1.0);
  return Trajectory(u.grid(), u.start(), u.step(), std::move(frames));
}

CheckOutcome check_schauder(const Context& ctx) {
  CheckOutcome out{"schauder", true, {}, {}};
  const auto& u = ctx.picard->fixed_point;
  SchauderCoefficients coeffs;
  coeffs.b = as_series(negated(u));
  if (!ctx.g.is_zero()) coeffs.f = ctx.g.series();
  const double half = 0.5 * u.grid().length();
  int fitted = 0;
  nlohmann::json implied = nlohmann::json::object();
  for (int j = ctx.config.schauder_j_min; j <= 0; ++j) {
    ParabolicBall ball{u.end(), {half, half, half}, j, ctx.config.schauder_M};
    try {
      auto r = check_schauder_instance(u, coeffs, ball, ctx.config.scheme.alpha, SchauderBound::gradient);
      r.name += "_j" + std::to_string(-j);
      implied[std::to_string(j)] = json_number(r.c_unclamped);
      add_report(out, r);
      ++fitted;
    } catch (const WindowError&) {
      implied[std::to_string(j)] = nullptr;
    }
  }
  out.artifacts.push_back({"schauder_implied.json", dump_json(implied)});
  if (fitted == 0) {
    out.pass = false;
    out.detail = "no parabolic ball fits inside the trajectory and the torus";
  } else {
    out.detail = std::to_string(fitted) + " balls";
  }
  return out;
}

CheckOutcome check_interpolation(const Context& ctx) {
  CheckOutcome out{"interpolation", true, {}, {}};
  const auto& u = ctx.picard->fixed_point;
  const double alpha = ctx.config.scheme.alpha;
  BoundReport space;
  space.name = "interpolation_space";
  space.params = {{"alpha", alpha}, {"constant", "printed"}};
  const std::size_t frames = std::min<std::size_t>(u.size(), 9);
  const std::size_t stride = frames > 1 ? (u.size() - 1) / (frames - 1) : 1;
  double scale = 1.0;
  for (std::size_t k = 0; k < u.size(); k += stride) {
    const auto gap = interpolation_gap_space(u[k], alpha);
    space.times.push_back(u.time(k));
    space.lhs.push_back(gap.lhs);
    space.rhs.push_back(gap.rhs);
    scale = std::max(scale, gap.rhs);
  }
  space.tolerance = 1e-10 * scale;
  finalize(space, space.rhs, 0.0);
  add_report(out, space);

  const auto st = interpolation_gap_spacetime(u, alpha);
  BoundReport spacetime;
  spacetime.name = "interpolation_spacetime";
  spacetime.params = {{"alpha", alpha}};
  spacetime.times = {u.end()};
  spacetime.lhs = {st.lhs};
  spacetime.rhs = {st.rhs};
  spacetime.tolerance = 1e-10 * std::max(1.0, st.rhs);
  finalize(spacetime, spacetime.rhs, 0.0);
  add_report(out, spacetime);
  out.detail = "min gap " + fmt(std::min(space.min_slack(), spacetime.min_slack()));
  return out;
}

CheckOutcome check_heat_scaling(const Context& ctx) {
  CheckOutcome out{"heat_scaling", true, {}, {}};
  const GridSpec grid(1, ctx.config.heat_scaling_points, 6.283185307179586);
  const double alpha = ctx.config.data.scenario == "lacunary" ? ctx.config.data.alpha : ctx.config.scheme.alpha;
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(std::pow(10.0, -4.0 + 0.1 * i));
  nlohmann::json reports = nlohmann::json::array();
  for (int kappa : {1, 2}) {
    const auto r = holder_scaling_probe(alpha, kappa, times, grid, ctx.config.scheme.seed);
    const double error = std::abs(r.slope - r.predicted_slope);
    out.pass = out.pass && error <= ctx.config.heat_scaling_tolerance;
    auto j = to_json(r);
    j["tolerance"] = ctx.config.heat_scaling_tolerance;
    j["verdict"] = error <= ctx.config.heat_scaling_tolerance ? "pass" : "fail";
    reports.push_back(j);
    out.detail += (out.detail.empty() ? "" : ", ") + std::string("slope ") + fmt(r.slope) + " vs " +
                  fmt(r.predicted_slope);
  }
  out.artifacts.push_back({"heat_scaling.json", dump_json(reports)});
  return out;
}

CheckOutcome check_oracle(const Context& ctx) {
  CheckOutcome out{"oracle_compare", true, {}, {}};
  const auto& s = ctx.scenario;
  ColeHopfOptions opts;
  opts.lambda = ctx.config.forcing.lambda;
  const auto exact = cole_hopf(*s.phi0, s.potential, ctx.unit.horizon, ctx.unit.dt, opts);
  const auto& u = ctx.picard->fixed_point;
  double diff = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) diff = std::max(diff, sup_norm(u[k] - exact[k]));
  out.pass = diff <= ctx.config.oracle_tolerance;
  nlohmann::json j{{"sup_difference", json_number(diff)},
                   {"tolerance", ctx.config.oracle_tolerance},
                   {"lambda", opts.lambda},
                   {"picard_residual", json_number(residual(u, ctx.g).max())},
                   {"oracle_residual", json_number(residual(exact, ctx.g).max())},
                   {"converged", ctx.picard->converged},
                   {"verdict", out.pass ? "pass" : "fail"}};
  out.artifacts.push_back({"oracle_compare.json", dump_json(j)});
  out.detail = "sup difference " + fmt(diff);
  return out;
}

using Runner = CheckOutcome (*)(const Context&);

Runner runner(const std::string& name) {
  static const std::map<std::string, Runner> table{
      {"gronwall", &check_gronwall_pairs},   {"heat_scaling", &check_heat_scaling},
      {"interpolation", &check_interpolation}, {"oracle_compare", &check_oracle},
      {"schauder", &check_schauder},         {"short_time", &check_short},
      {"uniform", &check_uniform_estimates},
  };
  return table.at(name);
}

CheckOutcome guarded(const std::string& name, const Context& ctx) {
  try {
    return runner(name)(ctx);
  } catch (const WindowError& e) {
    return {name, false, std::string("window: ") + e.what(), {}};
  } catch (const OracleError& e) {
    return {name, false, std::string("oracle: ") + e.what(), {}};
  }
}

std::filesystem::path output_dir(const RunConfig& c) {
  if (const char* env = std::getenv("BURGERS_OUT_DIR"); env && *env) return env;
  return c.output_dir;
}

void validate_combination(const RunConfig& c) {
  const bool oracle = std::find(c.checks.begin(), c.checks.end(), "oracle_compare") != c.checks.end();
  if (!oracle) return;
  if (c.data.scenario != "cole_hopf") throw ConfigError("oracle_compare needs data.scenario = cole_hopf");
  if (c.forcing.scenario == "trig") throw ConfigError("oracle_compare needs zero or gradient forcing");
  if (c.scheme.nu != 1.0) throw ConfigError("oracle_compare needs scheme.nu = 1");
}

}  // namespace

const char* version() noexcept { return "0.1.0"; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_combination(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  }
  const auto dir = output_dir(config);
  try {
    std::filesystem::create_directories(dir);
    const auto scenario = build_scenario(config);
    const double nu = config.scheme.nu;
    auto unit_data = rescale_viscosity(scenario.u0, scenario.g, nu);
    SchemeConfig unit = config.scheme;
    unit.nu = 1.0;
    unit.horizon = nu * config.scheme.horizon;
    unit.dt = nu * config.scheme.dt;
    unit.validate();

    const KCalculator k(unit_data.u0, unit_data.g, unit.c, unit.alpha);
    const double t_init = compute_t_init(k);
    nlohmann::json kj{{"unit_frame", to_json(k.at(unit.horizon))},
                      {"t_init_unit", json_number(t_init)},
                      {"t_init", json_number(t_init / nu)},
                      {"physical", to_json(physical_bounds(scenario.u0, scenario.g, nu, config.scheme.horizon,
                                                           unit.c, unit.alpha))}};
    write_file_atomic(dir / "k_constants.json", dump_json(kj));

    const bool solve = std::any_of(config.checks.begin(), config.checks.end(),
                                   [](const std::string& c) { return find_check(c)->needs_solve; }) ||
                       config.snapshots;
    std::optional<PicardResult> picard;
    if (solve) {
      picard = run_picard(unit, unit_data.u0, unit_data.g);
      write_file_atomic(dir / "records.csv", records_csv(picard->records));
      out << "picard: " << picard->records.size() << " iterates, "
          << (picard->converged ? "converged" : "not converged") << '\n';
    }
    if (config.snapshots) {
      write_snapshot(dir / "u0.bfld", scenario.u0);
      const auto physical = unrescale(picard->fixed_point, nu);
      write_snapshot(dir / "u_T.bfld", physical[physical.size() - 1]);
    }

    Context ctx{config, unit, unit_data.u0, unit_data.g, scenario, k, picard ? &*picard : nullptr};
    std::vector<CheckOutcome> outcomes;
    if (config.concurrent) {
      std::vector<std::future<CheckOutcome>> futures;
      for (const auto& name : config.checks) {
        futures.push_back(std::async(std::launch::async, [&ctx, name] { return guarded(name, ctx); }));
      }
      for (auto& f : futures) outcomes.push_back(f.get());
    } else {
      for (const auto& name : config.checks) outcomes.push_back(guarded(name, ctx));
    }

    bool pass = true;
    nlohmann::json summary{{"experiment", config.experiment}, {"checks", nlohmann::json::array()}};
    for (const auto& o : outcomes) {
      for (const auto& a : o.artifacts) write_file_atomic(dir / a.file, a.contents);
      summary["checks"].push_back({{"name", o.name}, {"verdict", o.pass ? "pass" : "fail"}, {"detail", o.detail}});
      out << o.name << ": " << (o.pass ? "pass" : "fail") << (o.detail.empty() ? "" : " (" + o.detail + ")") << '\n';
      pass = pass && o.pass;
    }
    if (picard) {
      summary["iterates"] = picard->records.size();
      summary["converged"] = picard->converged;
    }
    summary["verdict"] = pass ? "pass" : "fail";
    write_file_atomic(dir / "summary.json", dump_json(summary));
    return pass ? ok : check_failed;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << '\n';
    return diverged;
  } catch (const ResolutionError& e) {
    err << "resolution: " << e.what() << '\n';
    return diverged;
  } catch (const InputError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "output error: " << e.what() << '\n';
    return config_error;
  }
}

int run_file(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = load_config(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  }
  return run(c, out, err);
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picard scheme verification runner for viscous Burgers", "burgers"};
  app.require_subcommand(1);
  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "Config file")->required();
  auto* list_cmd = app.add_subcommand("list", "Print the experiment catalog");
  bool self_test = false;
  list_cmd->add_flag("--self-test", self_test, "Also check the registry for dangling entries");
  app.add_subcommand("version", "Print the version");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }
  if (run_cmd->parsed()) return run_file(config_path, out, err);
  if (list_cmd->parsed()) {
    out << catalog();
    if (!self_test) return ok;
    const auto problems = registry_self_test();
    for (const auto& p : problems) err << "registry: " << p << '\n';
    if (problems.empty()) out << "registry self-test: pass\n";
    return problems.empty() ? ok : check_failed;
  }
  out << "burgers " << version() << '\n';
  return ok;
}

}  // namespace burgers::cli
