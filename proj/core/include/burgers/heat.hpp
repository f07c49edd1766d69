#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/field.hpp"
#include "burgers/forcing.hpp"

namespace burgers {

/// e^{tau Delta} applied per mode. tau = 0 returns the input unchanged; tau < 0 throws InputError.
ScalarField heat_apply(const ScalarField& f, double tau);
VectorField heat_apply(const VectorField& u, double tau);

/// e^{t Delta} u0 + int_0^t e^{(t-s) Delta} g_s ds, trapezoid in s with the exact propagator.
Trajectory duhamel_forced_heat(const VectorField& u0, const Forcing& g, double horizon, double dt);

/// Number of steps horizon/dt; throws InputError unless dt divides horizon within rounding.
std::size_t step_count(double horizon, double dt);

struct ScalingProbeReport {
  double alpha = 0.0;
  int kappa = 1;
  std::vector<double> times;
  std::vector<double> norms;
  double slope = 0.0;
  double predicted_slope = 0.0;
  /// exp(intercept) of the fit, divided by the probe's Holder seminorm.
  double fitted_constant = 0.0;
};

nlohmann::json to_json(const ScalingProbeReport& r);

/// Least-squares slope and intercept of log(norms) against log(times).
std::pair<double, double> loglog_fit(const std::vector<double>& times, const std::vector<double>& norms);

/// ||grad^kappa e^{t Delta} f||_inf over `times` and the fitted slope (no window check).
ScalingProbeReport measure_heat_scaling(const ScalarField& f, int kappa, const std::vector<double>& times);

/// Lacunary probe of exponent alpha on `grid`; throws WindowError when the
/// times fall outside [1/k_top^2, 1/k_bottom^2].
ScalingProbeReport holder_scaling_probe(double alpha, int kappa, const std::vector<double>& times,
                                        const GridSpec& grid, std::uint64_t seed);

struct DuhamelHolderQuadrature {
  double integral = 0.0;
  double forcing_seminorm = 0.0;
  /// integral / ((t - t') ^ ((alpha - gamma)/2) * forcing_seminorm).
  double fitted_constant = 0.0;
  std::size_t nodes = 0;
};

/// Trapezoid of s -> ||grad^2 e^{(t-s) Delta} g_s||_gamma over [t', t] with step dt.
DuhamelHolderQuadrature duhamel_hessian_holder(const Forcing& g, double t_start, double t_end, double dt,
                                               double alpha, double gamma);

}  // namespace burgers
