#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/holder.hpp"
#include "burgers/verify.hpp"

namespace burgers {

/// [t0 - M^j, t0] x ball(x0, M^(j/2)).
struct ParabolicBall {
  double t0 = 0.0;
  Point x0{};
  int j = 0;
  double M = 2.0;

  double duration() const;
  double radius() const;
  /// The same region seen after a parabolic rescale by M^j_r.
  ParabolicBall rescaled(int jr) const;
  /// The ball one scale down, same center.
  ParabolicBall inner() const;
};

/// Coefficients of (d_t - Delta + a) u = b . grad u + f; absent means zero.
struct SchauderCoefficients {
  std::optional<TimeSeries<ScalarField>> a;
  std::optional<TimeSeries<VectorField>> b;
  std::optional<TimeSeries<VectorField>> f;
};

/// Which quantity on the inner ball is bounded.
enum class SchauderBound {
  gradient,        ///< sup |grad u|
  gradient_holder, ///< ||grad u||_alpha
  second,          ///< sup |grad^2 u|, |d_t u|
  second_holder,   ///< ||grad^2 u||_alpha, ||d_t u||_alpha
};

const char* to_string(SchauderBound which) noexcept;
/// Throws InputError for an unknown name.
SchauderBound schauder_bound_from_string(const std::string& name);

struct SchauderOptions {
  /// Exponent of the last bound; NaN selects (alpha + 1) / 2.
  double alpha_prime = std::numeric_limits<double>::quiet_NaN();
  /// Frames used for seminorms over a ball, strided.
  int holder_frames = 129;
  HolderOptions holder;
};

/// LHS on the inner ball, RHS assembled from sup |u| and coefficient seminorms on
/// the outer ball with R_b = (1 + M^(j/2) |b(t0, x0)|)^-1; c_unclamped is LHS / RHS.
///
/// Throws WindowError when a ball leaves the trajectory span or the torus, and
/// InputError when a < 0 on the ball.
BoundReport check_schauder_instance(const Trajectory& u, const SchauderCoefficients& coeffs,
                                    const ParabolicBall& ball, double alpha, SchauderBound which,
                                    const SchauderOptions& options = {});

struct RescaledBundle {
  Trajectory u;
  SchauderCoefficients coeffs;
};

/// u~(t, x) = u(M^j t, M^(j/2) x), b~ = M^(j/2) b, f~ = M^j f, a~ = M^j a.
///
/// The torus itself is rescaled, so samples are kept and only the grid length and
/// the time grid change.
RescaledBundle parabolic_rescale(const Trajectory& u, const SchauderCoefficients& coeffs, int j, double M);

/// Per-frame sup |(d_t - Delta + a) u - b . grad u - f|.
std::vector<double> schauder_residual(const Trajectory& u, const SchauderCoefficients& coeffs);

}  // namespace burgers
