#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "burgers/field.hpp"

namespace burgers {

enum class HolderMode { isotropic, parabolic };

struct HolderEstimate {
  double alpha = 0.0;
  HolderMode mode = HolderMode::isotropic;
  double value = 0.0;
  std::uint64_t pairs = 0;
  /// false: a sampled lower bound of the continuum seminorm.
  bool exhaustive = true;
  std::uint64_t seed = 0;
};

/// Space-time samples of a (possibly vector-valued) function.
///
/// Each sample carries its time, position, value vector, and a lattice
/// coordinate (frame, i0, i1, i2) used to draw scale-stratified pairs.
class SampleSet {
 public:
  SampleSet(double length, int dimension, int components);

  void add(double t, const Point& x, std::span<const double> value, const std::array<int, 4>& lattice);

  /// Every node of a field at time t (frame index `frame`).
  static SampleSet from_field(const ScalarField& f, double t = 0.0, int frame = 0);
  static SampleSet from_field(const VectorField& u, double t = 0.0, int frame = 0);
  /// Per-node vectors given as `components` fields on one grid.
  static SampleSet from_components(std::span<const ScalarField> comps, double t = 0.0, int frame = 0);
  /// Appends every node of `comps` at time t.
  void append(std::span<const ScalarField> comps, double t, int frame);

  std::size_t size() const noexcept { return times_.size(); }
  int components() const noexcept { return components_; }
  int dimension() const noexcept { return dimension_; }
  double length() const noexcept { return length_; }
  double time(std::size_t i) const noexcept { return times_[i]; }
  const Point& position(std::size_t i) const noexcept { return positions_[i]; }
  std::span<const double> value(std::size_t i) const noexcept {
    return {values_.data() + i * static_cast<std::size_t>(components_), static_cast<std::size_t>(components_)};
  }
  const std::array<int, 4>& lattice(std::size_t i) const noexcept { return lattice_[i]; }

  /// Torus distance between the positions of samples i and j.
  double distance(std::size_t i, std::size_t j) const noexcept;
  /// Euclidean norm of value(i) - value(j).
  double value_gap(std::size_t i, std::size_t j) const noexcept;
  /// max over samples of |value|.
  double sup() const noexcept;

 private:
  double length_;
  int dimension_;
  int components_;
  std::vector<double> times_;
  std::vector<Point> positions_;
  std::vector<double> values_;
  std::vector<std::array<int, 4>> lattice_;
};

struct HolderOptions {
  /// Exhaustive evaluation when the pair count is at most this.
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 24;
  /// Pairs drawn per dyadic stratum when sampling.
  std::uint64_t pairs_per_stratum = std::uint64_t{1} << 16;
  /// Extra uniformly drawn pairs when sampling.
  std::uint64_t uniform_pairs = std::uint64_t{1} << 18;
  std::uint64_t seed = 0x5eed;
  /// Lattice coordinates wrap with this period (0: no wrap).
  int lattice_period = 0;
};

/// sup |f(P) - f(Q)| / (|x - x'|^alpha + |t - t'|^(alpha/2)) over evaluated pairs.
///
/// Isotropic mode only pairs samples at equal times and drops the time term.
/// Throws InputError for alpha outside (0, 1] or fewer than two samples.
HolderEstimate holder_seminorm(const SampleSet& samples, double alpha, HolderMode mode,
                               const HolderOptions& options = {});

HolderEstimate holder_seminorm(const ScalarField& f, double alpha, const HolderOptions& options = {});
HolderEstimate holder_seminorm(const VectorField& u, double alpha, const HolderOptions& options = {});

/// Pairs considered by an exhaustive pass over n samples.
std::uint64_t pair_count(std::size_t n) noexcept;

}  // namespace burgers
