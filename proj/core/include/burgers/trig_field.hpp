#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/grid.hpp"

namespace burgers {

/// Real trigonometric polynomial sum_m (a_m cos(k_m.x) + b_m sin(k_m.x)), k_m = (2 pi / L) m.
struct TrigPolynomial {
  struct Term {
    std::array<int, 3> mode{0, 0, 0};
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
  };
  double length = 1.0;
  std::vector<Term> terms;

  double value(const Point& x, int dimension) const;
  /// Sum of |a_m| + |b_m|; bounds the sup norm.
  double coefficient_sum() const;
  ScalarField sample(const GridSpec& grid) const;
};

/// One polynomial per component, modes |m|_inf <= kmax, deterministic in seed.
///
/// Coefficients decay like (1 + |m|^2)^-1 and are scaled so that every
/// component's coefficient sum equals `amplitude`.
std::vector<TrigPolynomial> make_trig_polynomials(const GridSpec& grid, std::uint64_t seed, int kmax,
                                                  double amplitude, int components);

/// Throws ResolutionError when kmax >= n/2.
VectorField make_trig_field(const GridSpec& grid, std::uint64_t seed, int kmax, double amplitude);
ScalarField make_trig_scalar(const GridSpec& grid, std::uint64_t seed, int kmax, double amplitude);

/// sum_{j=0}^{J} 2^{-j alpha} cos(2^j 2 pi x_0 / L + theta_j), J = log2(n) - 2.
ScalarField lacunary_field(const GridSpec& grid, double alpha, std::uint64_t seed);
/// Number of lacunary octaves used on this grid (J + 1).
int lacunary_octaves(const GridSpec& grid);

}  // namespace burgers
