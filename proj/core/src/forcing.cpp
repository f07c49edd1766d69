#include "burgers/forcing.hpp"

#include <cmath>
#include <numbers>

#include "burgers/error.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

namespace {

VectorField gradient_of(const ScalarField& f, double lambda) { return burgers::gradient(f) * lambda; }

}  // namespace

Forcing::Forcing(Kind kind, VectorField g1, VectorField g2)
    : kind_(kind), g1_(std::move(g1)), g2_(std::move(g2)) {
  if (!(g1_.grid() == g2_.grid())) throw InputError("forcing components live on different grids");
}

Forcing Forcing::zero(const GridSpec& grid) { return Forcing(Kind::zero, VectorField(grid), VectorField(grid)); }

Forcing Forcing::steady(VectorField g) {
  const GridSpec grid = g.grid();
  return Forcing(Kind::steady, std::move(g), VectorField(grid));
}

Forcing Forcing::modulated(VectorField g1, VectorField g2, double omega) {
  if (!std::isfinite(omega)) throw InputError("forcing frequency must be finite");
  if (omega == 0.0) return steady(std::move(g1));
  Forcing f(Kind::modulated, std::move(g1), std::move(g2));
  f.omega_ = omega;
  return f;
}

Forcing Forcing::gradient(ScalarField potential, double lambda) {
  if (!std::isfinite(lambda)) throw InputError("forcing factor must be finite");
  const GridSpec grid = potential.grid();
  Forcing f(Kind::gradient, gradient_of(potential, lambda), VectorField(grid));
  f.lambda_ = lambda;
  f.potential_ = std::move(potential);
  return f;
}

double Forcing::period() const noexcept {
  return kind_ == Kind::modulated ? 2.0 * std::numbers::pi / std::abs(omega_) : 0.0;
}

VectorField Forcing::at(double t) const {
  switch (kind_) {
    case Kind::zero: return g1_;
    case Kind::steady:
    case Kind::gradient: return amplitude_ == 1.0 ? g1_ : g1_ * amplitude_;
    case Kind::modulated: return (g1_ * std::cos(omega_ * t) + g2_ * std::sin(omega_ * t)) * amplitude_;
  }
  return g1_;
}

VectorField Forcing::time_derivative(double t) const {
  if (kind_ != Kind::modulated) return VectorField(grid());
  return (g1_ * (-std::sin(omega_ * t)) + g2_ * std::cos(omega_ * t)) * (amplitude_ * omega_);
}

Forcing Forcing::rescaled(double amplitude, double time_factor) const {
  if (!std::isfinite(amplitude) || !std::isfinite(time_factor)) throw InputError("rescale factors must be finite");
  Forcing f = *this;
  f.amplitude_ *= amplitude;
  f.omega_ *= time_factor;
  return f;
}

Forcing Forcing::on_grid(const GridSpec& grid) const {
  auto move_field = [&](const VectorField& v) {
    std::vector<ScalarField> comps;
    for (const auto& c : v.components()) comps.emplace_back(grid, std::vector<double>(c.values().begin(), c.values().end()));
    return VectorField(std::move(comps));
  };
  if (grid.dimension() != this->grid().dimension() || grid.points() != this->grid().points()) {
    throw InputError("regridding keeps d and n");
  }
  Forcing f = *this;
  f.g1_ = move_field(g1_);
  f.g2_ = move_field(g2_);
  if (potential_) {
    f.potential_ = ScalarField(grid, std::vector<double>(potential_->values().begin(), potential_->values().end()));
    // The gradient samples change with L; rebuild them from the potential.
    f.g1_ = gradient_of(*f.potential_, lambda_);
  }
  return f;
}

TimeSeries<VectorField> Forcing::series() const {
  if (is_steady()) return TimeSeries<VectorField>::constant(at(0.0));
  Forcing copy = *this;
  return TimeSeries<VectorField>::function([copy](double t) { return copy.at(t); });
}

}  // namespace burgers
