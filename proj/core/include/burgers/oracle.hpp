#pragma once

#include <optional>
#include <string>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/forcing.hpp"
#include "burgers/scheme.hpp"

namespace burgers {

/// Per-frame sup |(d_t - Delta) u + (u . grad) u - g|.
struct ResidualSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string method = "centered";
  double dt = 0.0;

  double max() const noexcept;
};

/// Space derivatives spectral, u . grad u dealiased, d_t u by second-order differences.
ResidualSeries residual(const Trajectory& u, const Forcing& g);

/// P[(Pu . grad) Pu] with P the two-thirds filter.
VectorField advection(const VectorField& u);

/// 1 + eps * prod_a cos(2 pi x_a / L).
ScalarField cole_hopf_datum(const GridSpec& grid, double eps);

/// phi_t = Delta phi + f phi by Strang splitting (exact heat halves, exact exp(f dt)).
/// Throws OracleError when phi stops being positive.
std::vector<ScalarField> solve_cole_hopf_potential(const ScalarField& phi0, const std::optional<ScalarField>& f,
                                                   double horizon, double dt);

/// u = lambda grad log phi on each frame.
Trajectory cole_hopf_velocity(const std::vector<ScalarField>& phi, double dt, double lambda);

/// The forcing lambda grad f that pairs with potential f (zero when f is absent).
Forcing cole_hopf_forcing(const GridSpec& grid, const std::optional<ScalarField>& f, double lambda);

/// max residual of u = lambda grad log phi against g = lambda grad f, as a function of lambda.
class ColeHopfResidual {
 public:
  ColeHopfResidual(const std::vector<ScalarField>& phi, const std::optional<ScalarField>& f, double dt);
  double operator()(double lambda) const;
  /// Minimizer over |lambda| in [0.25, 8].
  double best_lambda() const;

 private:
  // Residual = lambda A + lambda^2 B node-wise, components stored consecutively.
  std::vector<std::vector<double>> a_;
  std::vector<std::vector<double>> b_;
  std::size_t components_ = 1;
};

struct ColeHopfOptions {
  double lambda = -2.0;
  /// Largest accepted residual of the returned velocity.
  double tol_oracle = 1e-4;
  bool validate = true;
};

/// Exact Burgers solution for forcing lambda grad f via the linear potential equation.
///
/// Throws ConventionError (with the measured best lambda) when the residual exceeds tol_oracle.
Trajectory cole_hopf(const ScalarField& phi0, const std::optional<ScalarField>& f, double horizon, double dt,
                     const ColeHopfOptions& options = {});

/// u_{n+1} = H(dt) u_n + dt H(dt/2) N(t_{n+1/2}, H(dt/2) u_n + dt/2 N(t_n, u_n)),
/// N(t, u) = -P[(Pu . grad) Pu] + g_t. Same gates as the transport solver.
Trajectory direct_solve(const VectorField& u0, const Forcing& g, const SchemeConfig& cfg);

}  // namespace burgers
