#pragma once

#include <optional>
#include <vector>

#include "burgers/field.hpp"

namespace burgers {

/// (d_t - Delta + b . grad + C) u = f on [0, T], u(0) = u0.
///
/// An absent drift, matrix term or source means zero.
struct TransportProblem {
  TransportProblem(VectorField initial, double horizon, double step);

  VectorField u0;
  std::optional<TimeSeries<VectorField>> drift;
  std::optional<TimeSeries<MatrixField>> zeroth;
  std::optional<TimeSeries<VectorField>> source;
  double horizon;
  double dt;
  /// Largest tolerated energy share in the top third of modes.
  double blocking_threshold = 1e-6;
};

/// Strang splitting: exact heat half steps around a Heun (explicit trapezoid)
/// step for -(b . grad u + C u) + f, with two-thirds dealiased products.
///
/// Throws ResolutionError when the blocking gate trips and DivergenceError on
/// non-finite state.
Trajectory solve_transport(const TransportProblem& p);

/// Change of the discrete solution when the drift of `p` is replaced by drift + delta.
///
/// `solution` must be solve_transport(p). The step is affine in the drift, so the
/// difference obeys its own recursion; stepping it directly keeps full relative
/// precision where subtracting two solves would cancel.
Trajectory solve_drift_increment(const TransportProblem& p, const Trajectory& solution,
                                 const TimeSeries<VectorField>& delta);

/// tol_mp = 10 dt^2 scale + 1e-10, scale = max(1, ||u0||, int ||f||).
double transport_tolerance(const TransportProblem& p);

/// Per frame: A(0,t) ||u0|| + int_0^t A(s,t) ||f_s|| ds - ||u_t||, with
/// A(s,t) = exp int_s^t |||C_r||| dr by trapezoid on the frame times.
std::vector<double> max_principle_slack(const Trajectory& traj, const TransportProblem& p);

/// Cumulative trapezoid I(t_k) of `values` sampled every `dt`.
std::vector<double> cumulative_trapezoid(const std::vector<double>& values, double dt);

}  // namespace burgers
