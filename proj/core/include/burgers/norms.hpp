#pragma once

#include "burgers/field.hpp"
#include "burgers/holder.hpp"

namespace burgers {

double sup_norm(const ScalarField& f) noexcept;
/// max over nodes of the Euclidean magnitude.
double sup_norm(const VectorField& u) noexcept;

/// max over nodes of the Frobenius norm of the Jacobian (|grad f| for scalars).
double sup_gradient_norm(const ScalarField& f);
double sup_gradient_norm(const VectorField& u);
/// max over nodes of the Frobenius norm of all second derivatives.
double sup_hessian_norm(const ScalarField& f);
double sup_hessian_norm(const VectorField& u);

/// Sup norm of the band-limited interpolant sampled `factor` times finer.
double oversampled_sup_norm(const ScalarField& f, int factor);

/// Every first derivative d_j u_k as separate scalar fields.
std::vector<ScalarField> gradient_components(const VectorField& u);
/// Second derivatives d_i d_j u_k for i <= j; mixed ones scaled by sqrt(2)
/// so the Euclidean norm of the list is the Frobenius norm.
std::vector<ScalarField> hessian_components(const VectorField& u);

/// Which constant multiplies the space interpolation bound.
///
/// `printed`: 1, the constant as usually stated. `sharp`: 2^(1 - alpha), which
/// follows from |u(x) - u(y)| <= min(2 ||u||, ||grad u|| |x - y|) and holds for
/// every bounded Lipschitz field.
enum class InterpolationConstant { printed, sharp };

struct InterpolationGap {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs.
  double gap = 0.0;
  HolderEstimate estimate;
};

/// ||u||_alpha <= C ||u||_inf^(1-alpha) ||grad u||_inf^alpha on one field.
InterpolationGap interpolation_gap_space(const VectorField& u, double alpha,
                                         InterpolationConstant constant = InterpolationConstant::printed,
                                         const HolderOptions& options = {});
InterpolationGap interpolation_gap_space(const ScalarField& u, double alpha,
                                         InterpolationConstant constant = InterpolationConstant::printed,
                                         const HolderOptions& options = {});

/// ||u||_alpha <= 2 (||u||^(1-alpha) ||grad u||^alpha + ||u||^(1-alpha/2) ||d_t u||^(alpha/2))
/// on a trajectory; d_t u by centered differences (second-order one-sided at the ends).
InterpolationGap interpolation_gap_spacetime(const Trajectory& u, double alpha, const HolderOptions& options = {});

/// Time derivative of a trajectory by second-order differences.
std::vector<VectorField> time_derivative(const Trajectory& u);

}  // namespace burgers
