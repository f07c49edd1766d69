#include "burgers/heat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "burgers/error.hpp"
#include "burgers/holder.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"
#include "burgers/trig_field.hpp"

namespace burgers {

ScalarField heat_apply(const ScalarField& f, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InputError("heat propagation time must be finite and >= 0");
  if (tau == 0.0) return f;
  return heat_multiply(f, tau);
}

VectorField heat_apply(const VectorField& u, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InputError("heat propagation time must be finite and >= 0");
  if (tau == 0.0) return u;
  std::vector<ScalarField> comps;
  for (const auto& c : u.components()) comps.push_back(heat_multiply(c, tau));
  return VectorField(std::move(comps));
}

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step must be finite and > 0");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InputError("horizon must be finite and >= 0");
  const double k = horizon / dt;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9 * std::max(1.0, k)) throw InputError("time step does not divide the horizon");
  return static_cast<std::size_t>(r);
}

Trajectory duhamel_forced_heat(const VectorField& u0, const Forcing& g, double horizon, double dt) {
  if (!(u0.grid() == g.grid())) throw InputError("initial datum and forcing live on different grids");
  const std::size_t steps = step_count(horizon, dt);
  std::vector<VectorField> frames;
  frames.reserve(steps + 1);
  frames.push_back(u0);
  VectorField g_prev = g.at(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t1 = static_cast<double>(k + 1) * dt;
    VectorField g_next = g.at(t1);
    VectorField next = heat_apply(frames.back(), dt);
    if (!g.is_zero()) next = next + (heat_apply(g_prev, dt) + g_next) * (0.5 * dt);
    for (const auto& c : next.components()) {
      for (double v : c.values()) {
        if (!std::isfinite(v)) throw InputError("forcing produced non-finite samples");
      }
    }
    frames.push_back(std::move(next));
    g_prev = std::move(g_next);
  }
  return Trajectory(u0.grid(), 0.0, dt, std::move(frames));
}

nlohmann::json to_json(const ScalingProbeReport& r) {
  return {{"alpha", r.alpha},          {"kappa", r.kappa}, {"times", r.times},
          {"norms", r.norms},          {"slope", r.slope}, {"predicted_slope", r.predicted_slope},
          {"fitted_constant", r.fitted_constant}};
}

std::pair<double, double> loglog_fit(const std::vector<double>& times, const std::vector<double>& norms) {
  if (times.size() != norms.size() || times.size() < 2) throw InputError("fit needs at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !(norms[i] > 0.0)) throw InputError("log-log fit needs positive data");
    const double x = std::log(times[i]);
    const double y = std::log(norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw InputError("log-log fit needs distinct times");
  const double slope = (n * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / n};
}

ScalingProbeReport measure_heat_scaling(const ScalarField& f, int kappa, const std::vector<double>& times) {
  if (kappa != 1 && kappa != 2) throw InputError("derivative order must be 1 or 2");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw InputError("probe times must be positive and strictly increasing");
    }
  }
  ScalingProbeReport r;
  r.kappa = kappa;
  r.times = times;
  for (double t : times) {
    const auto h = heat_apply(f, t);
    r.norms.push_back(kappa == 1 ? sup_gradient_norm(h) : sup_hessian_norm(h));
  }
  const auto [slope, intercept] = loglog_fit(r.times, r.norms);
  r.slope = slope;
  r.fitted_constant = std::exp(intercept);
  return r;
}

ScalingProbeReport holder_scaling_probe(double alpha, int kappa, const std::vector<double>& times,
                                        const GridSpec& grid, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("probe exponent must lie in (0,1)");
  if (times.empty()) throw WindowError("no probe times");
  const double k0 = grid.base_wavenumber();
  const double k_top = k0 * std::ldexp(1.0, lacunary_octaves(grid) - 1);
  const double t_min = *std::min_element(times.begin(), times.end());
  const double t_max = *std::max_element(times.begin(), times.end());
  if (k_top * k_top * t_min < 1.0 || k0 * k0 * t_max > 1.0) {
    std::ostringstream msg;
    msg << "probe times [" << t_min << ", " << t_max << "] outside the resolvable window [" << 1.0 / (k_top * k_top)
        << ", " << 1.0 / (k0 * k0) << "]";
    throw WindowError(msg.str());
  }
  const auto field = lacunary_field(grid, alpha, seed);
  auto r = measure_heat_scaling(field, kappa, times);
  r.alpha = alpha;
  r.predicted_slope = 0.5 * (alpha - kappa);
  const double semi = holder_seminorm(field, alpha).value;
  if (semi > 0.0) r.fitted_constant /= semi;
  return r;
}

DuhamelHolderQuadrature duhamel_hessian_holder(const Forcing& g, double t_start, double t_end, double dt,
                                               double alpha, double gamma) {
  if (!(gamma > 0.0 && gamma < alpha && alpha < 1.0)) throw InputError("need 0 < gamma < alpha < 1");
  if (!(t_end > t_start) || t_start < 0.0) throw InputError("need 0 <= t' < t");
  const std::size_t steps = step_count(t_end - t_start, dt);
  if (steps == 0) throw InputError("quadrature needs at least one step");
  DuhamelHolderQuadrature q;
  double sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double s = t_start + static_cast<double>(k) * dt;
    const auto gs = g.at(s);
    const auto h = hessian_components(heat_apply(gs, t_end - s));
    const double value = holder_seminorm(SampleSet::from_components(h), gamma, HolderMode::isotropic).value;
    sum += (k == 0 || k == steps) ? 0.5 * value : value;
    q.forcing_seminorm = std::max(q.forcing_seminorm, holder_seminorm(gs, alpha).value);
  }
  q.integral = sum * dt;
  q.nodes = steps + 1;
  const double scale = std::pow(t_end - t_start, 0.5 * (alpha - gamma)) * q.forcing_seminorm;
  q.fitted_constant = scale > 0.0 ? q.integral / scale : 0.0;
  return q;
}

}  // namespace burgers
