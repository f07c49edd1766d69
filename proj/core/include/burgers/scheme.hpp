#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/kconstants.hpp"

namespace burgers {

struct SchemeConfig {
  double nu = 1.0;
  double c = 1.0;
  double alpha = 0.5;
  double beta = 0.25;
  double horizon = 1.0;
  double dt = 1e-3;
  GridSpec grid{1, 64, 6.283185307179586};
  int m_max = 30;
  double tol_fp = 1e-10;
  std::uint64_t seed = 1;
  /// Parabolic seminorms of grad^2 u and d_t u per iterate (costly).
  bool holder_diagnostics = false;
  /// Frames used by those seminorms, strided over [0, T].
  int holder_frames = 65;
  /// Keep every iterate trajectory in the result.
  bool keep_iterates = false;
  double blocking_threshold = 1e-6;
  /// Step v^(m) by its own recursion instead of subtracting two solves.
  bool increment_form = true;

  /// Throws InputError naming the first violated constraint.
  void validate() const;
};

/// Norm diagnostics of one iterate u^(m), per frame.
struct IterationRecord {
  int m = 0;
  std::vector<double> times;
  std::vector<double> sup_u;
  std::vector<double> sup_grad_u;
  std::vector<double> sup_hess_u;
  std::vector<double> sup_dt_u;
  std::vector<double> sup_v;
  std::vector<double> sup_grad_v;
  /// NaN unless holder diagnostics were requested.
  double holder_hess_u = std::numeric_limits<double>::quiet_NaN();
  double holder_dt_u = std::numeric_limits<double>::quiet_NaN();

  double max_v() const noexcept;
};

struct PicardResult {
  std::vector<IterationRecord> records;
  Trajectory fixed_point;
  bool converged = false;
  /// u^(0), u^(1), ... when keep_iterates is set.
  std::vector<Trajectory> iterates;
};

/// (d_t - Delta + u^(m-1) . grad) u^(m) = g, u^(m)(0) = u0, u^(-1) = 0.
///
/// Stops once m >= 1 and sup_t ||v^(m)_t|| < tol_fp, or after iterate m_max.
/// In increment form u^(m) = u^(m-1) + v^(m), equal to the plain solve up to rounding.
/// A divergence inside a solve is rethrown with the iterate index.
PicardResult run_picard(const SchemeConfig& cfg, const VectorField& u0, const Forcing& g);

/// Diagnostics of iterate u with increment v (nullptr: v = u, the m = 0 convention).
IterationRecord make_record(int m, const Trajectory& u, const Trajectory* v, const SchemeConfig& cfg);

/// CSV with columns m, t, sup_u, sup_grad_u, sup_hess_u, sup_dt_u, sup_v, sup_grad_v.
std::string records_csv(const std::vector<IterationRecord>& records);

/// inf{t > 0 : t cK(t) = 1}, +inf when no root exists below `max_horizon`.
double compute_t_init(const KCalculator& k, double max_horizon = 1e6);
/// Same for any continuous nondecreasing t -> cK(t); `constant` enables the closed form.
double compute_t_init(const std::function<double(double)>& kbar, bool constant, double max_horizon = 1e6);

struct SeriesMajorant {
  double bound = 0.0;
  double empirical = 0.0;
  int terms = 0;
};

/// sum_{m > m0} (x/m)^(gamma m) with x = cK t, against e^gamma / (e^gamma - 1).
/// Requires m0 >= floor(x) and gamma > 0.
SeriesMajorant series_majorant(int m0, double gamma, double ckt);

struct RescaledData {
  VectorField u0;
  Forcing g;
};

/// u0 / nu and nu^-2 g(t / nu): the unit-viscosity frame.
RescaledData rescale_viscosity(const VectorField& u0, const Forcing& g, double nu);
/// u(t, x) = nu * w(nu t, x).
Trajectory unrescale(const Trajectory& w, double nu);

/// Bounds in the physical frame at time t.
struct PhysicalBounds {
  double t = 0.0;
  double nu = 1.0;
  KConstants rescaled;
  KConstants physical;
  double sup_u = 0.0;
  double grad_u = 0.0;
  double hess_u = 0.0;
  double dt_u = 0.0;
};

/// K-constants of the rescaled data at nu t, the physical-frame K at t, and
/// sup |u| <= K0, |grad u| <= K/nu, |grad^2 u| <= (cK)^(3/2)/nu^2, |d_t u| <= (cK)^(3/2)/nu.
PhysicalBounds physical_bounds(const VectorField& u0, const Forcing& g, double nu, double t, double c, double alpha,
                               const KOptions& options = {});

nlohmann::json to_json(const PhysicalBounds& b);

}  // namespace burgers
