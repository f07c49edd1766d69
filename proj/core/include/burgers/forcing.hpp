#pragma once

#include <optional>

#include "burgers/field.hpp"

namespace burgers {

/// Body force g(t, x). Supported shapes:
///   zero; steady g; modulated cos(w t) g1 + sin(w t) g2; gradient lambda * grad f (steady).
/// Every shape is scaled by an overall amplitude and has a closed-form time derivative.
class Forcing {
 public:
  enum class Kind { zero, steady, modulated, gradient };

  static Forcing zero(const GridSpec& grid);
  static Forcing steady(VectorField g);
  static Forcing modulated(VectorField g1, VectorField g2, double omega);
  /// g = lambda * grad(potential).
  static Forcing gradient(ScalarField potential, double lambda);

  Kind kind() const noexcept { return kind_; }
  const GridSpec& grid() const noexcept { return g1_.grid(); }
  bool is_zero() const noexcept { return kind_ == Kind::zero; }
  bool is_steady() const noexcept { return kind_ != Kind::modulated; }

  /// 2 pi / |omega| for modulated forcing, 0 otherwise.
  double period() const noexcept;

  VectorField at(double t) const;
  VectorField time_derivative(double t) const;

  /// Scalar f with g = lambda * grad f, for gradient forcing.
  const std::optional<ScalarField>& potential() const noexcept { return potential_; }
  double potential_factor() const noexcept { return amplitude_ * lambda_; }

  /// t -> amplitude * g(time_factor * t), optionally reinterpreting the samples on another grid.
  Forcing rescaled(double amplitude, double time_factor) const;
  Forcing on_grid(const GridSpec& grid) const;

  TimeSeries<VectorField> series() const;

 private:
  Forcing(Kind kind, VectorField g1, VectorField g2);

  Kind kind_;
  VectorField g1_;
  VectorField g2_;
  double omega_ = 0.0;
  double amplitude_ = 1.0;
  double lambda_ = 1.0;
  std::optional<ScalarField> potential_;
};

}  // namespace burgers
