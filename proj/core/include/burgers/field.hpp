#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "burgers/error.hpp"
#include "burgers/grid.hpp"

namespace burgers {

/// Real samples of a scalar function on a GridSpec. Immutable once built.
class ScalarField {
 public:
  /// Zero field.
  explicit ScalarField(const GridSpec& grid);
  /// Throws InputError on a size mismatch or a non-finite sample.
  ScalarField(const GridSpec& grid, std::vector<double> values);

  static ScalarField constant(const GridSpec& grid, double value);
  template <class Fn>
  static ScalarField from_function(const GridSpec& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
    return ScalarField(grid, std::move(v));
  }

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Moves the samples out; the field is left empty.
  std::vector<double> release() && { return std::move(values_); }

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator*(double s) const;
  friend ScalarField operator*(double s, const ScalarField& f) { return f * s; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// d scalar components sharing one grid (d = grid dimension).
class VectorField {
 public:
  explicit VectorField(const GridSpec& grid);
  explicit VectorField(std::vector<ScalarField> components);

  static VectorField constant(const GridSpec& grid, std::span<const double> value);

  const GridSpec& grid() const noexcept { return grid_; }
  int dimension() const noexcept { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int i) const noexcept { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarField>& components() const noexcept { return components_; }

  /// Euclidean magnitude at a node.
  double magnitude(std::size_t node) const noexcept;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator*(double s) const;
  friend VectorField operator*(double s, const VectorField& f) { return f * s; }

 private:
  GridSpec grid_;
  std::vector<ScalarField> components_;
};

/// Dense d x d matrix per node (row-major per node).
class MatrixField {
 public:
  explicit MatrixField(const GridSpec& grid);
  MatrixField(const GridSpec& grid, std::vector<double> entries);

  /// The same matrix at every node.
  static MatrixField uniform(const GridSpec& grid, std::span<const double> matrix);

  const GridSpec& grid() const noexcept { return grid_; }
  int dimension() const noexcept { return grid_.dimension(); }
  double entry(std::size_t node, int row, int col) const noexcept {
    const auto d = static_cast<std::size_t>(grid_.dimension());
    return entries_[node * d * d + static_cast<std::size_t>(row) * d + static_cast<std::size_t>(col)];
  }
  std::span<const double> entries() const noexcept { return entries_; }

  /// Largest singular value of the matrix at a node.
  double operator_norm(std::size_t node) const noexcept;
  /// sup over nodes of operator_norm.
  double sup_operator_norm() const noexcept;

  MatrixField operator-(const MatrixField& o) const;

 private:
  GridSpec grid_;
  std::vector<double> entries_;
};

/// Largest singular value of a d x d row-major matrix, d <= 3.
double spectral_norm(std::span<const double> matrix, int d) noexcept;

/// Frames of a vector field at times t0 + k*dt.
class Trajectory {
 public:
  Trajectory(const GridSpec& grid, double t0, double dt, std::vector<VectorField> frames);

  const GridSpec& grid() const noexcept { return grid_; }
  double start() const noexcept { return t0_; }
  double step() const noexcept { return dt_; }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double end() const noexcept { return time(frames_.size() - 1); }
  std::size_t size() const noexcept { return frames_.size(); }
  const VectorField& operator[](std::size_t k) const noexcept { return frames_[k]; }
  const std::vector<VectorField>& frames() const noexcept { return frames_; }

  /// Index of the frame at time t; throws InputError when t is not on the grid.
  std::size_t frame_at(double t) const;

 private:
  GridSpec grid_;
  double t0_;
  double dt_;
  std::vector<VectorField> frames_;
};

/// A time-dependent quantity: constant, closed form, or sampled on a uniform time grid.
///
/// Sampled series are looked up by exact frame; no interpolation is performed.
template <class F>
class TimeSeries {
 public:
  using Function = std::function<F(double)>;

  static TimeSeries constant(F value) { return TimeSeries(Storage{std::in_place_index<0>, std::move(value)}); }
  static TimeSeries function(Function fn) { return TimeSeries(Storage{std::in_place_index<1>, std::move(fn)}); }
  static TimeSeries sampled(double t0, double dt, std::vector<F> frames) {
    if (!(dt > 0.0) || frames.empty()) throw InputError("sampled series needs dt > 0 and frames");
    return TimeSeries(Storage{std::in_place_index<2>, Sampled{t0, dt, std::move(frames)}});
  }

  F at(double t) const {
    switch (storage_.index()) {
      case 0: return std::get<0>(storage_);
      case 1: return std::get<1>(storage_)(t);
      default: {
        const auto& s = std::get<2>(storage_);
        const double k = (t - s.t0) / s.dt;
        const double r = std::round(k);
        if (std::abs(k - r) > 1e-6 || r < 0.0 || r >= static_cast<double>(s.frames.size())) {
          throw InputError("time is not on the sampled grid of this series");
        }
        return s.frames[static_cast<std::size_t>(r)];
      }
    }
  }

  bool is_constant() const noexcept { return storage_.index() == 0; }

 private:
  struct Sampled {
    double t0;
    double dt;
    std::vector<F> frames;
  };
  using Storage = std::variant<F, Function, Sampled>;
  explicit TimeSeries(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

/// Drift series backed by the frames of a trajectory.
TimeSeries<VectorField> as_series(const Trajectory& traj);

/// Frame-wise difference a - b of two trajectories on the same time grid.
Trajectory difference(const Trajectory& a, const Trajectory& b);

}  // namespace burgers
