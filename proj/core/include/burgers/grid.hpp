#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace burgers {

/// A point of the torus; components beyond the grid dimension are ignored.
using Point = std::array<double, 3>;

/// Uniform periodic grid on the d-torus [0, L)^d with n points per axis.
///
/// Samples are stored in row-major order: axis 0 varies slowest.
class GridSpec {
 public:
  /// Throws InputError unless d in {1,2,3}, n a power of two >= 8, L finite and > 0.
  GridSpec(int dimension, int points_per_axis, double length);

  int dimension() const noexcept { return dimension_; }
  int points() const noexcept { return points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / points_; }
  /// n^d.
  std::size_t size() const noexcept { return size_; }

  /// Fundamental wavenumber 2*pi/L.
  double base_wavenumber() const noexcept;

  /// Flat index of a multi-index (each entry in [0, n)).
  std::size_t flat_index(const std::array<int, 3>& idx) const noexcept;
  /// Multi-index of a flat index.
  std::array<int, 3> multi_index(std::size_t flat) const noexcept;
  /// Physical coordinates of a node.
  Point node(std::size_t flat) const noexcept;

  /// Shortest periodic distance between two points.
  double distance(const Point& a, const Point& b) const noexcept;
  /// Maps each coordinate into [0, L).
  Point wrap(const Point& x) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dimension_;
  int points_;
  double length_;
  std::size_t size_;
};

/// Periodic distance along one axis of length L.
double periodic_gap(double a, double b, double length) noexcept;

}  // namespace burgers
