#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <burgers/field.hpp>
#include <burgers/grid.hpp>

namespace burgers::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline GridSpec line(int n, double length = kTwoPi) { return GridSpec(1, n, length); }

inline ScalarField sine(const GridSpec& grid, int mode = 1, double amplitude = 1.0) {
  const double k = mode * grid.base_wavenumber();
  return ScalarField::from_function(grid, [&](const Point& x) { return amplitude * std::sin(k * x[0]); });
}

inline VectorField as_vector(ScalarField f) { return VectorField(std::vector<ScalarField>{std::move(f)}); }

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
  double out = 0.0;
  for (int c = 0; c < a.dimension(); ++c) out = std::max(out, max_abs_diff(a[c], b[c]));
  return out;
}

inline double max_abs_diff(const Trajectory& a, const Trajectory& b) {
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, max_abs_diff(a[k], b[k]));
  return out;
}

inline double max_abs(const ScalarField& f) {
  double out = 0.0;
  for (double v : f.values()) out = std::max(out, std::abs(v));
  return out;
}

inline double max_abs(const VectorField& u) {
  double out = 0.0;
  for (int c = 0; c < u.dimension(); ++c) out = std::max(out, max_abs(u[c]));
  return out;
}

inline bool bit_equal(const ScalarField& a, const ScalarField& b) {
  return std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end());
}

inline bool bit_equal(const VectorField& a, const VectorField& b) {
  if (a.dimension() != b.dimension()) return false;
  for (int c = 0; c < a.dimension(); ++c) {
    if (!bit_equal(a[c], b[c])) return false;
  }
  return true;
}

/// Brute-force isotropic seminorm over all node pairs of a 1-d field, vector values by Euclidean gap.
inline double dense_pair_seminorm(const std::vector<ScalarField>& comps, double alpha) {
  const auto& grid = comps.front().grid();
  const std::size_t n = grid.size();
  double out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (const auto& c : comps) sq += (c[i] - c[j]) * (c[i] - c[j]);
      const double d = grid.distance(grid.node(i), grid.node(j));
      out = std::max(out, std::sqrt(sq) / std::pow(d, alpha));
    }
  }
  return out;
}

/// sup |sin x - sin y| / |x - y|^(1/2) on the circle: 2 sin(s) / sqrt(2 s) with tan s = 2 s.
inline double sine_half_seminorm() {
  double lo = 1.0, hi = 1.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid) - 2.0 * mid < 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  return 2.0 * std::sin(s) / std::sqrt(2.0 * s);
}

}  // namespace burgers::testing
