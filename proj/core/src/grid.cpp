#include "burgers/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "burgers/error.hpp"

namespace burgers {

GridSpec::GridSpec(int dimension, int points_per_axis, double length)
    : dimension_(dimension), points_(points_per_axis), length_(length), size_(1) {
  if (dimension < 1 || dimension > 3) {
    throw InputError("grid dimension must be 1, 2 or 3, got " + std::to_string(dimension));
  }
  if (points_per_axis < 8 || (points_per_axis & (points_per_axis - 1)) != 0) {
    throw InputError("points per axis must be a power of two >= 8, got " +
                     std::to_string(points_per_axis));
  }
  if (!std::isfinite(length) || length <= 0.0) {
    throw InputError("box length must be finite and positive");
  }
  for (int a = 0; a < dimension; ++a) size_ *= static_cast<std::size_t>(points_per_axis);
}

double GridSpec::base_wavenumber() const noexcept { return 2.0 * std::numbers::pi / length_; }

std::size_t GridSpec::flat_index(const std::array<int, 3>& idx) const noexcept {
  std::size_t flat = 0;
  for (int a = 0; a < dimension_; ++a) {
    flat = flat * static_cast<std::size_t>(points_) + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

std::array<int, 3> GridSpec::multi_index(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dimension_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points_));
    flat /= static_cast<std::size_t>(points_);
  }
  return idx;
}

Point GridSpec::node(std::size_t flat) const noexcept {
  const auto idx = multi_index(flat);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dimension_; ++a) x[a] = idx[a] * spacing();
  return x;
}

double periodic_gap(double a, double b, double length) noexcept {
  double d = std::fmod(std::abs(a - b), length);
  return std::min(d, length - d);
}

double GridSpec::distance(const Point& a, const Point& b) const noexcept {
  double s = 0.0;
  for (int k = 0; k < dimension_; ++k) {
    const double g = periodic_gap(a[k], b[k], length_);
    s += g * g;
  }
  return std::sqrt(s);
}

Point GridSpec::wrap(const Point& x) const noexcept {
  Point y = x;
  for (int k = 0; k < dimension_; ++k) {
    y[k] = std::fmod(x[k], length_);
    if (y[k] < 0.0) y[k] += length_;
  }
  return y;
}

}  // namespace burgers
