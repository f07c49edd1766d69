#include "burgers/norms.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/error.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

double sup_norm(const ScalarField& f) noexcept {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const VectorField& u) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < u.grid().size(); ++i) m = std::max(m, u.magnitude(i));
  return m;
}

namespace {

double sup_frobenius(const std::vector<ScalarField>& parts) {
  if (parts.empty()) return 0.0;
  const std::size_t n = parts.front().size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t p = 0; p < parts.size(); ++p) s += parts[p][i] * parts[p][i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

// Second derivatives of one scalar; mixed terms carry a sqrt(2) factor so the
// Euclidean norm of the list is the Frobenius norm of the Hessian.
void push_hessian(const ScalarField& f, std::vector<ScalarField>& parts) {
  const auto h = hessian(f);
  const int d = f.grid().dimension();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double w = i == j ? 1.0 : std::sqrt(2.0);
      std::vector<double> v(f.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = w * h.entry(k, i, j);
      parts.emplace_back(f.grid(), std::move(v));
    }
  }
}

}  // namespace

std::vector<ScalarField> gradient_components(const VectorField& u) {
  std::vector<ScalarField> parts;
  for (const auto& c : u.components()) {
    const auto g = gradient(c);
    for (const auto& gc : g.components()) parts.push_back(gc);
  }
  return parts;
}

std::vector<ScalarField> hessian_components(const VectorField& u) {
  std::vector<ScalarField> parts;
  for (const auto& c : u.components()) push_hessian(c, parts);
  return parts;
}

double sup_gradient_norm(const ScalarField& f) {
  const auto g = gradient(f);
  return sup_norm(g);
}

double sup_gradient_norm(const VectorField& u) {
  const auto parts = gradient_components(u);
  return sup_frobenius(parts);
}

double sup_hessian_norm(const ScalarField& f) {
  std::vector<ScalarField> parts;
  push_hessian(f, parts);
  return sup_frobenius(parts);
}

double sup_hessian_norm(const VectorField& u) { return sup_frobenius(hessian_components(u)); }

double oversampled_sup_norm(const ScalarField& f, int factor) {
  if (factor < 1 || (factor & (factor - 1)) != 0) throw InputError("oversampling factor must be a power of two");
  const auto& g = f.grid();
  return sup_norm(upsample(f, GridSpec(g.dimension(), g.points() * factor, g.length())));
}

InterpolationGap interpolation_gap_space(const VectorField& u, double alpha, InterpolationConstant constant,
                                         const HolderOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("interpolation exponent must lie in (0,1)");
  InterpolationGap out;
  out.estimate = holder_seminorm(u, alpha, options);
  out.lhs = out.estimate.value;
  const double c = constant == InterpolationConstant::sharp ? std::pow(2.0, 1.0 - alpha) : 1.0;
  out.rhs = c * std::pow(sup_norm(u), 1.0 - alpha) * std::pow(sup_gradient_norm(u), alpha);
  out.gap = out.rhs - out.lhs;
  return out;
}

InterpolationGap interpolation_gap_space(const ScalarField& u, double alpha, InterpolationConstant constant,
                                         const HolderOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("interpolation exponent must lie in (0,1)");
  InterpolationGap out;
  out.estimate = holder_seminorm(u, alpha, options);
  out.lhs = out.estimate.value;
  const double c = constant == InterpolationConstant::sharp ? std::pow(2.0, 1.0 - alpha) : 1.0;
  out.rhs = c * std::pow(sup_norm(u), 1.0 - alpha) * std::pow(sup_gradient_norm(u), alpha);
  out.gap = out.rhs - out.lhs;
  return out;
}

std::vector<VectorField> time_derivative(const Trajectory& u) {
  const std::size_t n = u.size();
  if (n < 3) throw InputError("time derivative needs at least three frames");
  const double h = u.step();
  std::vector<VectorField> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      out.push_back((u[0] * -3.0 + u[1] * 4.0 - u[2]) * (0.5 / h));
    } else if (k == n - 1) {
      out.push_back((u[n - 1] * 3.0 - u[n - 2] * 4.0 + u[n - 3]) * (0.5 / h));
    } else {
      out.push_back((u[k + 1] - u[k - 1]) * (0.5 / h));
    }
  }
  return out;
}

InterpolationGap interpolation_gap_spacetime(const Trajectory& u, double alpha, const HolderOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("interpolation exponent must lie in (0,1)");
  const auto& grid = u.grid();
  SampleSet samples(grid.length(), grid.dimension(), u[0].dimension());
  double sup_u = 0.0;
  double sup_grad = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    samples.append(u[k].components(), u.time(k), static_cast<int>(k));
    sup_u = std::max(sup_u, sup_norm(u[k]));
    sup_grad = std::max(sup_grad, sup_gradient_norm(u[k]));
  }
  double sup_dt = 0.0;
  for (const auto& f : time_derivative(u)) sup_dt = std::max(sup_dt, sup_norm(f));
  HolderOptions o = options;
  if (o.lattice_period == 0) o.lattice_period = grid.points();
  InterpolationGap out;
  out.estimate = holder_seminorm(samples, alpha, HolderMode::parabolic, o);
  out.lhs = out.estimate.value;
  out.rhs = 2.0 * (std::pow(sup_u, 1.0 - alpha) * std::pow(sup_grad, alpha) +
                   std::pow(sup_u, 1.0 - 0.5 * alpha) * std::pow(sup_dt, 0.5 * alpha));
  out.gap = out.rhs - out.lhs;
  return out;
}

}  // namespace burgers
