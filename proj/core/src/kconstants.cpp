#include "burgers/kconstants.hpp"

#include <algorithm>
#include <cmath>

#include "burgers/error.hpp"
#include "burgers/io.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

nlohmann::json to_json(const KConstants& k) {
  return {{"t", json_number(k.t)},   {"c", k.c},         {"alpha", k.alpha},
          {"nu", k.nu},              {"K0", k.K0},       {"K1", k.K1},
          {"K2", k.K2},              {"K2alpha", k.K2alpha}, {"K", k.K}};
}

double assemble_k(double c, double alpha, double nu, double k0, double k1, double k2, double k2alpha) noexcept {
  return c * c *
         (k0 * k0 + nu * k1 + std::pow(nu * k2, 2.0 / 3.0) +
          std::pow(std::pow(nu, 1.0 + alpha) * k2alpha, 2.0 / (3.0 + alpha)));
}

double holder_for_bound(const std::vector<ScalarField>& comps, double alpha, const KOptions& options) {
  if (comps.empty()) return 0.0;
  const auto& grid = comps.front().grid();
  HolderOptions ho = options.holder;
  ho.lattice_period = grid.points();
  double value = holder_seminorm(SampleSet::from_components(comps), alpha, HolderMode::isotropic, ho).value;
  if (options.refine) {
    const GridSpec fine(grid.dimension(), grid.points() * 2, grid.length());
    std::vector<ScalarField> up;
    for (const auto& c : comps) up.push_back(upsample(c, fine));
    ho.lattice_period = fine.points();
    value = std::max(value, holder_seminorm(SampleSet::from_components(up), alpha, HolderMode::isotropic, ho).value);
  }
  return value * options.inflation;
}

KCalculator::KCalculator(VectorField u0, Forcing g, double c, double alpha, KOptions options)
    : u0_(std::move(u0)), g_(std::move(g)), c_(c), alpha_(alpha), options_(std::move(options)) {
  if (!(c >= 1.0) || !std::isfinite(c)) throw InputError("c must be finite and >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0,1)");
  if (!(options_.dt_quad > 0.0)) throw InputError("quadrature step must be > 0");
  if (!(options_.nu > 0.0)) throw InputError("viscosity must be > 0");
  if (!(u0_.grid() == g_.grid())) throw InputError("initial datum and forcing live on different grids");

  sup_u0_ = sup_norm(u0_);
  sup_grad_u0_ = sup_gradient_norm(u0_);
  sup_hess_u0_ = sup_hessian_norm(u0_);
  holder_hess_u0_ = holder_for_bound(hessian_components(u0_), alpha_, options_);
  const auto g0 = g_.at(0.0);
  sup_g0_ = sup_norm(g0);

  if (g_.is_zero()) return;
  if (g_.is_steady()) {
    steady_g_ = sup_g0_;
    steady_grad_g_ = sup_gradient_norm(g0);
    steady_hess_g_ = sup_hessian_norm(g0);
    steady_holder_g_ = holder_for_bound(g0.components(), alpha_, options_);
    return;
  }

  // Periodic in time, so the seminorm over [0, t] saturates after one period.
  // Samples carry the rescaled time nu t.
  const double period = g_.period();
  const int frames = std::max(2, options_.holder_frames);
  const double step = period / (frames - 1);
  const auto& grid = u0_.grid();
  HolderOptions ho = options_.holder;
  ho.lattice_period = grid.points();
  const int checkpoints = 8;
  SampleSet samples(grid.length(), grid.dimension(), grid.dimension());
  int added = 0;
  double best = 0.0;
  for (int cp = 0; cp <= checkpoints; ++cp) {
    const int last = (frames - 1) * cp / checkpoints;
    for (; added <= last; ++added) {
      const double t = step * added;
      samples.append(g_.at(t).components(), options_.nu * t, added);
    }
    const double value = samples.size() < 2
                             ? 0.0
                             : holder_seminorm(samples, alpha_, HolderMode::parabolic, ho).value * options_.inflation;
    best = std::max(best, value);
    holder_times_.push_back(step * last);
    holder_prefix_.push_back(best);
  }
}

void KCalculator::extend_to(double t) const {
  const double h = options_.dt_quad;
  const auto needed = static_cast<std::size_t>(std::floor(t / h)) + 2;
  while (a0_.size() < needed) {
    const double s = h * static_cast<double>(a0_.size());
    const auto gs = g_.at(s);
    a0_.push_back(sup_norm(gs));
    a1_.push_back(sup_gradient_norm(gs));
    a2_.push_back(options_.nu * sup_hessian_norm(gs) + sup_norm(g_.time_derivative(s)));
    for (auto [a, i] : {std::pair{&a0_, &i0_}, std::pair{&a1_, &i1_}, std::pair{&a2_, &i2_}}) {
      const std::size_t k = a->size() - 1;
      i->push_back(k == 0 ? 0.0 : i->back() + 0.5 * h * ((*a)[k - 1] + (*a)[k]));
    }
  }
}

double KCalculator::integral(const std::vector<double>& cumulative, const std::vector<double>& values,
                             double t) const {
  const double h = options_.dt_quad;
  const auto k = static_cast<std::size_t>(std::floor(t / h));
  const double r = t - h * static_cast<double>(k);
  const double a = values[k];
  const double b = a + (values[k + 1] - a) * (r / h);
  return cumulative[k] + 0.5 * r * (a + b);
}

double KCalculator::forcing_seminorm(double t) const {
  if (g_.is_zero()) return 0.0;
  if (g_.is_steady()) return steady_holder_g_;
  if (t >= holder_times_.back()) return holder_prefix_.back();
  for (std::size_t i = 1; i < holder_times_.size(); ++i) {
    if (t <= holder_times_[i]) {
      const double span = holder_times_[i] - holder_times_[i - 1];
      const double w = span > 0.0 ? (t - holder_times_[i - 1]) / span : 1.0;
      return holder_prefix_[i - 1] + w * (holder_prefix_[i] - holder_prefix_[i - 1]);
    }
  }
  return holder_prefix_.back();
}

KConstants KCalculator::at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("K-constants need a finite t >= 0");
  const double nu = options_.nu;
  double int0 = 0.0, int1 = 0.0, int2 = 0.0;
  if (!g_.is_zero()) {
    if (g_.is_steady()) {
      int0 = t * steady_g_;
      int1 = t * steady_grad_g_;
      int2 = t * nu * steady_hess_g_;
    } else {
      std::lock_guard lock(mutex_);
      extend_to(t);
      int0 = integral(i0_, a0_, t);
      int1 = integral(i1_, a1_, t);
      int2 = integral(i2_, a2_, t);
    }
  }
  KConstants k;
  k.t = t;
  k.c = c_;
  k.alpha = alpha_;
  k.nu = nu;
  k.K0 = sup_u0_ + int0;
  k.K1 = sup_grad_u0_ + int1;
  k.K2 = nu * sup_hess_u0_ + sup_u0_ * sup_grad_u0_ + sup_g0_ + int2;
  k.K2alpha = nu * holder_hess_u0_ + forcing_seminorm(t);
  k.K = assemble_k(c_, alpha_, nu, k.K0, k.K1, k.K2, k.K2alpha);
  return k;
}

KConstants compute_k_constants(const VectorField& u0, const Forcing& g, double t, double c, double alpha,
                               const KOptions& options) {
  return KCalculator(u0, g, c, alpha, options).at(t);
}

}  // namespace burgers
