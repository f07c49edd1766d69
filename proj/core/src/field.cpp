#include "burgers/field.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace burgers {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw InputError("fields live on different grids");
}

}  // namespace

ScalarField::ScalarField(const GridSpec& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InputError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                     std::to_string(grid_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("field sample is not finite");
  }
}

ScalarField ScalarField::constant(const GridSpec& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return ScalarField(grid_, std::move(v));
}

ScalarField ScalarField::operator-(const ScalarField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return ScalarField(grid_, std::move(v));
}

ScalarField ScalarField::operator*(double s) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= s;
  return ScalarField(grid_, std::move(v));
}

VectorField::VectorField(const GridSpec& grid) : grid_(grid) {
  components_.assign(static_cast<std::size_t>(grid.dimension()), ScalarField(grid));
}

VectorField::VectorField(std::vector<ScalarField> components)
    : grid_(components.empty() ? throw InputError("vector field needs components") : components.front().grid()),
      components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != grid_.dimension()) {
    throw InputError("vector field needs exactly d components");
  }
  for (const auto& c : components_) require_same_grid(grid_, c.grid());
}

VectorField VectorField::constant(const GridSpec& grid, std::span<const double> value) {
  if (static_cast<int>(value.size()) != grid.dimension()) throw InputError("constant vector has wrong size");
  std::vector<ScalarField> comps;
  for (double v : value) comps.push_back(ScalarField::constant(grid, v));
  return VectorField(std::move(comps));
}

double VectorField::magnitude(std::size_t node) const noexcept {
  double s = 0.0;
  for (const auto& c : components_) s += c[node] * c[node];
  return std::sqrt(s);
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < components_.size(); ++i) comps.push_back(components_[i] + o.components_[i]);
  return VectorField(std::move(comps));
}

VectorField VectorField::operator-(const VectorField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < components_.size(); ++i) comps.push_back(components_[i] - o.components_[i]);
  return VectorField(std::move(comps));
}

VectorField VectorField::operator*(double s) const {
  std::vector<ScalarField> comps;
  for (const auto& c : components_) comps.push_back(c * s);
  return VectorField(std::move(comps));
}

MatrixField::MatrixField(const GridSpec& grid)
    : grid_(grid),
      entries_(grid.size() * static_cast<std::size_t>(grid.dimension() * grid.dimension()), 0.0) {}

MatrixField::MatrixField(const GridSpec& grid, std::vector<double> entries)
    : grid_(grid), entries_(std::move(entries)) {
  const auto d = static_cast<std::size_t>(grid.dimension());
  if (entries_.size() != grid.size() * d * d) throw InputError("matrix field has wrong entry count");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw InputError("matrix field entry is not finite");
  }
}

MatrixField MatrixField::uniform(const GridSpec& grid, std::span<const double> matrix) {
  const auto dd = static_cast<std::size_t>(grid.dimension() * grid.dimension());
  if (matrix.size() != dd) throw InputError("uniform matrix has wrong size");
  std::vector<double> e(grid.size() * dd);
  for (std::size_t i = 0; i < grid.size(); ++i) std::copy(matrix.begin(), matrix.end(), e.begin() + i * dd);
  return MatrixField(grid, std::move(e));
}

double MatrixField::operator_norm(std::size_t node) const noexcept {
  const auto dd = static_cast<std::size_t>(dimension() * dimension());
  return spectral_norm(std::span<const double>(entries_).subspan(node * dd, dd), dimension());
}

double MatrixField::sup_operator_norm() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) m = std::max(m, operator_norm(i));
  return m;
}

MatrixField MatrixField::operator-(const MatrixField& o) const {
  require_same_grid(grid_, o.grid_);
  std::vector<double> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.entries_[i];
  return MatrixField(grid_, std::move(e));
}

double spectral_norm(std::span<const double> m, int d) noexcept {
  if (d == 1) return std::abs(m[0]);
  if (d == 2) {
    const double s = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
    const double det = m[0] * m[3] - m[1] * m[2];
    const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * det * det));
    return std::sqrt(0.5 * (s + disc));
  }
  // Largest eigenvalue of the symmetric matrix A = M^T M.
  double a[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[static_cast<std::size_t>(k * 3 + i)] * m[static_cast<std::size_t>(k * 3 + j)];
      a[i][j] = s;
    }
  }
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
  if (p1 <= 1e-300) return std::sqrt(std::max({a[0][0], a[1][1], a[2][2], 0.0}));
  const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                    (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  double b[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  }
  const double det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det_b / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double top = q + 2.0 * p * std::cos(phi);
  return std::sqrt(std::max(0.0, top));
}

Trajectory::Trajectory(const GridSpec& grid, double t0, double dt, std::vector<VectorField> frames)
    : grid_(grid), t0_(t0), dt_(dt), frames_(std::move(frames)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InputError("trajectory step must be positive");
  if (frames_.empty()) throw InputError("trajectory needs at least one frame");
  for (const auto& f : frames_) require_same_grid(grid_, f.grid());
}

std::size_t Trajectory::frame_at(double t) const {
  const double k = (t - t0_) / dt_;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-6 || r < 0.0 || r >= static_cast<double>(frames_.size())) {
    throw InputError("time is not a frame of the trajectory");
  }
  return static_cast<std::size_t>(r);
}

TimeSeries<VectorField> as_series(const Trajectory& traj) {
  return TimeSeries<VectorField>::sampled(traj.start(), traj.step(), traj.frames());
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  require_same_grid(a.grid(), b.grid());
  if (a.size() != b.size() || a.step() != b.step() || a.start() != b.start()) {
    throw InputError("trajectories have different time grids");
  }
  std::vector<VectorField> frames;
  frames.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) frames.push_back(a[k] - b[k]);
  return Trajectory(a.grid(), a.start(), a.step(), std::move(frames));
}

}  // namespace burgers
