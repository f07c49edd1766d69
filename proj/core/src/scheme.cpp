#include "burgers/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "burgers/error.hpp"
#include "burgers/heat.hpp"
#include "burgers/holder.hpp"
#include "burgers/io.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"
#include "burgers/transport.hpp"

namespace burgers {

void SchemeConfig::validate() const {
  auto fail = [](const std::string& what) { throw InputError(what); };
  if (!(nu > 0.0) || !std::isfinite(nu)) fail("nu must be finite and > 0");
  if (!(c >= 1.0) || !std::isfinite(c)) fail("c must be finite and >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 0.5)) fail("beta must lie in the open interval (0, 1/2)");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail("T must be finite and > 0");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (m_max < 1) fail("m_max must be >= 1");
  if (!(tol_fp > 0.0)) fail("tol_fp must be > 0");
  if (holder_frames < 2) fail("holder_frames must be >= 2");
  if (!(blocking_threshold >= 0.0)) fail("blocking threshold must be >= 0");
  step_count(horizon, dt);
}

double IterationRecord::max_v() const noexcept {
  double out = 0.0;
  for (double v : sup_v) out = std::max(out, v);
  return out;
}

namespace {

double holder_over_frames(const std::vector<std::vector<ScalarField>>& frames, const std::vector<double>& times,
                          double alpha, std::uint64_t seed) {
  const auto& grid = frames.front().front().grid();
  SampleSet samples(grid.length(), grid.dimension(), static_cast<int>(frames.front().size()));
  for (std::size_t k = 0; k < frames.size(); ++k) samples.append(frames[k], times[k], static_cast<int>(k));
  HolderOptions ho;
  ho.seed = seed;
  ho.lattice_period = grid.points();
  return holder_seminorm(samples, alpha, HolderMode::parabolic, ho).value;
}

}  // namespace

IterationRecord make_record(int m, const Trajectory& u, const Trajectory* v, const SchemeConfig& cfg) {
  IterationRecord r;
  r.m = m;
  const std::size_t n = u.size();
  const auto dtu = n >= 3 ? time_derivative(u) : std::vector<VectorField>(n, VectorField(u.grid()));
  for (std::size_t k = 0; k < n; ++k) {
    r.times.push_back(u.time(k));
    r.sup_u.push_back(sup_norm(u[k]));
    r.sup_grad_u.push_back(sup_gradient_norm(u[k]));
    r.sup_hess_u.push_back(sup_hessian_norm(u[k]));
    r.sup_dt_u.push_back(sup_norm(dtu[k]));
    const auto& vk = v ? (*v)[k] : u[k];
    r.sup_v.push_back(sup_norm(vk));
    r.sup_grad_v.push_back(sup_gradient_norm(vk));
  }
  if (cfg.holder_diagnostics) {
    const std::size_t frames = std::min<std::size_t>(n, static_cast<std::size_t>(cfg.holder_frames));
    const std::size_t stride = frames > 1 ? std::max<std::size_t>(1, (n - 1) / (frames - 1)) : 1;
    std::vector<std::vector<ScalarField>> hess, dt;
    std::vector<double> times;
    for (std::size_t k = 0; k < n && hess.size() < frames; k += stride) {
      hess.push_back(hessian_components(u[k]));
      dt.push_back(dtu[k].components());
      times.push_back(u.time(k));
    }
    r.holder_hess_u = holder_over_frames(hess, times, cfg.alpha, cfg.seed);
    r.holder_dt_u = holder_over_frames(dt, times, cfg.alpha, cfg.seed);
  }
  return r;
}

namespace {

void blocking_gate(const Trajectory& u, double threshold) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (const auto& c : u[k].components()) {
      const double share = high_mode_energy_fraction(c);
      if (share > threshold) {
        std::ostringstream msg;
        msg << "spectral blocking at t = " << u.time(k) << ": top-third energy share " << share;
        throw ResolutionError(msg.str());
      }
    }
  }
}

Trajectory sum_frames(const Trajectory& a, const Trajectory& b) {
  std::vector<VectorField> frames;
  frames.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) frames.push_back(a[k] + b[k]);
  return Trajectory(a.grid(), a.start(), a.step(), std::move(frames));
}

}  // namespace

PicardResult run_picard(const SchemeConfig& cfg, const VectorField& u0, const Forcing& g) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid) || !(g.grid() == cfg.grid)) throw InputError("data must live on the configured grid");
  if (u0.dimension() != cfg.grid.dimension()) throw InputError("u0 must have d components");
  const auto source = g.is_zero() ? std::optional<TimeSeries<VectorField>>{} : g.series();
  auto problem = [&](const std::optional<Trajectory>& drift) {
    TransportProblem p(u0, cfg.horizon, cfg.dt);
    p.blocking_threshold = cfg.blocking_threshold;
    p.source = source;
    if (drift) p.drift = as_series(*drift);
    return p;
  };

  PicardResult result{{}, Trajectory(cfg.grid, 0.0, cfg.dt, {u0}), false, {}};
  // u^(m-2), u^(m-1) and v^(m-1).
  std::optional<Trajectory> older, previous, increment;
  for (int m = 0; m <= cfg.m_max; ++m) {
    std::optional<Trajectory> current, v;
    try {
      if (m == 0) {
        current = solve_transport(problem(std::nullopt));
      } else if (cfg.increment_form) {
        const auto base = problem(older);
        v = solve_drift_increment(base, *previous, as_series(*increment));
        current = sum_frames(*previous, *v);
        blocking_gate(*current, cfg.blocking_threshold);
      } else {
        current = solve_transport(problem(previous));
        v = difference(*current, *previous);
      }
    } catch (const DivergenceError& e) {
      std::ostringstream msg;
      msg << e.what() << " (iterate m = " << m << ")";
      throw DivergenceError(msg.str(), m);
    }
    result.records.push_back(make_record(m, *current, v ? &*v : nullptr, cfg));
    if (cfg.keep_iterates) result.iterates.push_back(*current);
    const bool done = m >= 1 && result.records.back().max_v() < cfg.tol_fp;
    older = std::move(previous);
    previous = std::move(current);
    increment = v ? std::move(v) : previous;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.fixed_point = std::move(*previous);
  return result;
}

std::string records_csv(const std::vector<IterationRecord>& records) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : records) {
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      rows.push_back({static_cast<double>(r.m), r.times[k], r.sup_u[k], r.sup_grad_u[k], r.sup_hess_u[k],
                      r.sup_dt_u[k], r.sup_v[k], r.sup_grad_v[k]});
    }
  }
  return to_csv({"m", "t", "sup_u", "sup_grad_u", "sup_hess_u", "sup_dt_u", "sup_v", "sup_grad_v"}, rows);
}

double compute_t_init(const std::function<double(double)>& kbar, bool constant, double max_horizon) {
  const double inf = std::numeric_limits<double>::infinity();
  if (constant) {
    const double k = kbar(0.0);
    return k > 0.0 ? 1.0 / k : inf;
  }
  auto f = [&](double t) { return t * kbar(t) - 1.0; };
  double lo = 0.0;
  double hi = 1.0 / std::max(kbar(0.0), 1.0 / max_horizon);
  hi = std::min(hi, max_horizon);
  while (f(hi) < 0.0) {
    if (hi >= max_horizon) return inf;
    lo = hi;
    hi = std::min(2.0 * hi, max_horizon);
  }
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

double compute_t_init(const KCalculator& k, double max_horizon) {
  return compute_t_init([&](double t) { return k.kbar(t); }, k.time_independent(), max_horizon);
}

SeriesMajorant series_majorant(int m0, double gamma, double ckt) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("gamma must be finite and > 0");
  if (!(ckt >= 0.0) || !std::isfinite(ckt)) throw InputError("cK t must be finite and >= 0");
  if (static_cast<double>(m0) < std::floor(ckt)) throw InputError("m0 must be >= floor(cK t)");
  SeriesMajorant out;
  out.bound = std::exp(gamma) / std::expm1(gamma);
  for (int m = m0 + 1; m < m0 + 100000; ++m) {
    const double term = std::pow(ckt / m, gamma * m);
    out.empirical += term;
    ++out.terms;
    if (term <= 1e-18 * out.empirical || term == 0.0) break;
  }
  return out;
}

RescaledData rescale_viscosity(const VectorField& u0, const Forcing& g, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InputError("nu must be finite and > 0");
  if (nu == 1.0) return {u0, g};
  return {u0 * (1.0 / nu), g.rescaled(1.0 / (nu * nu), 1.0 / nu)};
}

Trajectory unrescale(const Trajectory& w, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InputError("nu must be finite and > 0");
  if (nu == 1.0) return w;
  std::vector<VectorField> frames;
  frames.reserve(w.size());
  for (const auto& f : w.frames()) frames.push_back(f * nu);
  return Trajectory(w.grid(), w.start() / nu, w.step() / nu, std::move(frames));
}

PhysicalBounds physical_bounds(const VectorField& u0, const Forcing& g, double nu, double t, double c, double alpha,
                               const KOptions& options) {
  const auto scaled = rescale_viscosity(u0, g, nu);
  KOptions unit = options;
  unit.nu = 1.0;
  unit.dt_quad = options.dt_quad * nu;
  KOptions phys = options;
  phys.nu = nu;
  PhysicalBounds b;
  b.t = t;
  b.nu = nu;
  b.rescaled = KCalculator(scaled.u0, scaled.g, c, alpha, unit).at(nu * t);
  b.physical = KCalculator(u0, g, c, alpha, phys).at(t);
  const double ck = c * b.physical.K;
  b.sup_u = b.physical.K0;
  b.grad_u = b.physical.K / nu;
  b.hess_u = std::pow(ck, 1.5) / (nu * nu);
  b.dt_u = std::pow(ck, 1.5) / nu;
  return b;
}

nlohmann::json to_json(const PhysicalBounds& b) {
  return {{"t", b.t},           {"nu", b.nu},         {"rescaled", to_json(b.rescaled)},
          {"physical", to_json(b.physical)}, {"sup_u", b.sup_u}, {"grad_u", b.grad_u},
          {"hess_u", b.hess_u}, {"dt_u", b.dt_u}};
}

}  // namespace burgers
