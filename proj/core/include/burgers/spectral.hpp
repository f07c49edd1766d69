#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/grid.hpp"

namespace burgers {

using Complex = std::complex<double>;

/// Real-to-complex transforms and mode tables for one grid.
///
/// Coefficients live on the half spectrum (last axis truncated to n/2 + 1),
/// unnormalized; inverse() divides by n^d.
class SpectralOps {
 public:
  explicit SpectralOps(const GridSpec& grid);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t modes() const noexcept { return modes_; }

  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Does not modify `in`.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

  std::vector<Complex> forward(std::span<const double> in) const;
  std::vector<double> inverse(std::span<const Complex> in) const;

  /// Signed integer wavenumber of mode `k` along `axis`.
  int mode_index(std::size_t k, int axis) const noexcept {
    return index_[k * 3 + static_cast<std::size_t>(axis)];
  }
  /// Physical wavenumber (2*pi/L) * mode_index.
  double wavenumber(std::size_t k, int axis) const noexcept {
    return grid_.base_wavenumber() * mode_index(k, axis);
  }
  bool nyquist(std::size_t k, int axis) const noexcept;
  /// |k|^2 in physical units.
  double k_squared(std::size_t k) const noexcept { return k2_[k]; }
  /// max_a |m_a|.
  int max_index(std::size_t k) const noexcept { return max_index_[k]; }
  /// 2 for modes whose conjugate partner is not stored, else 1.
  double weight(std::size_t k) const noexcept { return weight_[k]; }

  /// Zeroes every mode with max_a |m_a| > n/3.
  void dealias(std::span<Complex> coeffs) const noexcept;

 private:
  GridSpec grid_;
  std::size_t modes_;
  std::vector<int> index_;
  std::vector<double> k2_;
  std::vector<int> max_index_;
  std::vector<double> weight_;
  void* r2c_;
  void* c2r_;
};

/// Shared, thread-safe cache keyed by grid.
const SpectralOps& spectral_ops(const GridSpec& grid);

VectorField gradient(const ScalarField& f);
ScalarField partial(const ScalarField& f, int axis);
ScalarField laplacian(const ScalarField& f);
ScalarField divergence(const VectorField& u);
/// Row-major Hessian per node; mixed terms touching a Nyquist axis vanish.
MatrixField hessian(const ScalarField& f);
/// Jacobian per node, entry (k, j) = d_j u_k.
MatrixField jacobian(const VectorField& u);
/// Antisymmetric part d_i u_j - d_j u_i, listed for i < j.
std::vector<ScalarField> curl_components(const VectorField& u);

/// Applies exp(-|k|^2 tau) per mode.
ScalarField heat_multiply(const ScalarField& f, double tau);
/// Two-thirds filter.
ScalarField dealias(const ScalarField& f);

/// Trigonometric interpolant at x; a Nyquist mode contributes cos(k x).
double evaluate_at(const ScalarField& f, const Point& x);
/// Evaluates the interpolant at many points, sharing the transform.
std::vector<double> evaluate_at(const ScalarField& f, std::span<const Point> points);

/// Band-limited resampling onto a finer grid with the same d and L.
ScalarField upsample(const ScalarField& f, const GridSpec& finer);
VectorField upsample(const VectorField& u, const GridSpec& finer);

/// Share of spectral energy carried by modes with max_a |m_a| > n/3.
double high_mode_energy_fraction(std::span<const Complex> coeffs, const SpectralOps& ops) noexcept;
double high_mode_energy_fraction(const ScalarField& f);

}  // namespace burgers
