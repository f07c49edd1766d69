#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/holder.hpp"

namespace burgers {

struct KConstants {
  double t = 0.0;
  double c = 1.0;
  double alpha = 0.5;
  double nu = 1.0;
  double K0 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double K2alpha = 0.0;
  double K = 0.0;

  /// c K, the barred convention.
  double kbar() const noexcept { return c * K; }
};

nlohmann::json to_json(const KConstants& k);

/// c^2 (K0^2 + nu K1 + (nu K2)^(2/3) + (nu^(1+alpha) K2alpha)^(2/(3+alpha))); nu = 1 is the plain form.
double assemble_k(double c, double alpha, double nu, double k0, double k1, double k2, double k2alpha) noexcept;

struct KOptions {
  /// Quadrature step for the time integrals.
  double dt_quad = 1e-3;
  /// Viscosity weights of the physical-frame variant; 1 in the rescaled frame.
  double nu = 1.0;
  /// Multiplies every sampled Holder seminorm (they are lower bounds).
  double inflation = 1.0;
  /// Also evaluate seminorms on a 2n grid and keep the larger value.
  bool refine = false;
  /// Time frames used for the seminorm of time-dependent forcing.
  int holder_frames = 33;
  HolderOptions holder;
};

/// K-constants of fixed data as functions of t.
///
/// Integrals use the trapezoid rule on a dt_quad grid, linear inside the last
/// partial interval, so every K is continuous and nondecreasing in t. Tables
/// grow on demand; at() is safe to call from several threads.
class KCalculator {
 public:
  KCalculator(VectorField u0, Forcing g, double c, double alpha, KOptions options = {});

  KConstants at(double t) const;
  double kbar(double t) const { return at(t).kbar(); }
  /// True when every K is independent of t (zero forcing).
  bool time_independent() const noexcept { return g_.is_zero(); }
  double c() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }
  const KOptions& options() const noexcept { return options_; }

 private:
  void extend_to(double t) const;
  double integral(const std::vector<double>& cumulative, const std::vector<double>& values, double t) const;
  double forcing_seminorm(double t) const;

  VectorField u0_;
  Forcing g_;
  double c_;
  double alpha_;
  KOptions options_;

  double sup_u0_ = 0.0;
  double sup_grad_u0_ = 0.0;
  double sup_hess_u0_ = 0.0;
  double holder_hess_u0_ = 0.0;
  double sup_g0_ = 0.0;

  // Steady forcing: constant integrands.
  double steady_g_ = 0.0;
  double steady_grad_g_ = 0.0;
  double steady_hess_g_ = 0.0;
  double steady_holder_g_ = 0.0;

  // Time-dependent forcing: tabulated integrands and prefix seminorms.
  mutable std::mutex mutex_;
  mutable std::vector<double> a0_, a1_, a2_, i0_, i1_, i2_;
  std::vector<double> holder_times_;
  std::vector<double> holder_prefix_;
};

KConstants compute_k_constants(const VectorField& u0, const Forcing& g, double t, double c, double alpha,
                               const KOptions& options = {});

/// Isotropic seminorm with the options' refinement and inflation applied.
double holder_for_bound(const std::vector<ScalarField>& comps, double alpha, const KOptions& options);

}  // namespace burgers
