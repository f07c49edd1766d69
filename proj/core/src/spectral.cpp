#include "burgers/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "burgers/error.hpp"

namespace burgers {

namespace {

// FFTW's planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralOps::SpectralOps(const GridSpec& grid) : grid_(grid), modes_(1) {
  const int d = grid.dimension();
  const int n = grid.points();
  std::array<int, 3> dims{n, n, n};
  std::array<int, 3> half{n, n, n};
  half[d - 1] = n / 2 + 1;
  for (int a = 0; a < d; ++a) modes_ *= static_cast<std::size_t>(half[a]);

  index_.assign(modes_ * 3, 0);
  k2_.resize(modes_);
  max_index_.resize(modes_);
  weight_.resize(modes_);
  const double k0 = grid.base_wavenumber();
  for (std::size_t k = 0; k < modes_; ++k) {
    std::size_t rest = k;
    double s = 0.0;
    int mx = 0;
    for (int a = d - 1; a >= 0; --a) {
      const int i = static_cast<int>(rest % static_cast<std::size_t>(half[a]));
      rest /= static_cast<std::size_t>(half[a]);
      const int m = (a == d - 1) ? i : (i <= n / 2 ? i : i - n);
      index_[k * 3 + static_cast<std::size_t>(a)] = m;
      s += (k0 * m) * (k0 * m);
      mx = std::max(mx, std::abs(m));
      if (a == d - 1) weight_[k] = (i == 0 || i == n / 2) ? 1.0 : 2.0;
    }
    k2_[k] = s;
    max_index_[k] = mx;
  }

  std::vector<double> rbuf(grid.size());
  std::vector<Complex> cbuf(modes_);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  r2c_ = fftw_plan_dft_r2c(d, dims.data(), rbuf.data(), as_fftw(cbuf.data()), flags);
  c2r_ = fftw_plan_dft_c2r(d, dims.data(), as_fftw(cbuf.data()), rbuf.data(), flags);
  if (r2c_ == nullptr || c2r_ == nullptr) throw Error("FFTW plan creation failed");
}

SpectralOps::~SpectralOps() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

bool SpectralOps::nyquist(std::size_t k, int axis) const noexcept {
  return std::abs(mode_index(k, axis)) == grid_.points() / 2;
}

void SpectralOps::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != grid_.size() || out.size() != modes_) throw InputError("transform size mismatch");
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), const_cast<double*>(in.data()), as_fftw(out.data()));
}

void SpectralOps::inverse(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != modes_ || out.size() != grid_.size()) throw InputError("transform size mismatch");
  std::vector<Complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_), as_fftw(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (double& v : out) v *= scale;
}

std::vector<Complex> SpectralOps::forward(std::span<const double> in) const {
  std::vector<Complex> out(modes_);
  forward(in, out);
  return out;
}

std::vector<double> SpectralOps::inverse(std::span<const Complex> in) const {
  std::vector<double> out(grid_.size());
  inverse(in, out);
  return out;
}

void SpectralOps::dealias(std::span<Complex> coeffs) const noexcept {
  const int cut = grid_.points() / 3;
  for (std::size_t k = 0; k < modes_; ++k) {
    if (max_index_[k] > cut) coeffs[k] = 0.0;
  }
}

const SpectralOps& spectral_ops(const GridSpec& grid) {
  static std::mutex m;
  static std::map<std::tuple<int, int, double>, std::unique_ptr<SpectralOps>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[{grid.dimension(), grid.points(), grid.length()}];
  if (!slot) slot = std::make_unique<SpectralOps>(grid);
  return *slot;
}

namespace {

ScalarField apply_multiplier(const ScalarField& f, const std::vector<Complex>& coeffs,
                             const SpectralOps& ops, auto&& mult) {
  std::vector<Complex> c(coeffs.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeffs[k] * mult(k);
  return ScalarField(f.grid(), ops.inverse(c));
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
  const auto& ops = spectral_ops(f.grid());
  const auto c = ops.forward(f.values());
  return apply_multiplier(f, c, ops, [&](std::size_t k) {
    return ops.nyquist(k, axis) ? Complex(0.0) : Complex(0.0, ops.wavenumber(k, axis));
  });
}

VectorField gradient(const ScalarField& f) {
  const auto& ops = spectral_ops(f.grid());
  const auto c = ops.forward(f.values());
  std::vector<ScalarField> comps;
  for (int a = 0; a < f.grid().dimension(); ++a) {
    comps.push_back(apply_multiplier(f, c, ops, [&](std::size_t k) {
      return ops.nyquist(k, a) ? Complex(0.0) : Complex(0.0, ops.wavenumber(k, a));
    }));
  }
  return VectorField(std::move(comps));
}

ScalarField laplacian(const ScalarField& f) {
  const auto& ops = spectral_ops(f.grid());
  const auto c = ops.forward(f.values());
  return apply_multiplier(f, c, ops, [&](std::size_t k) { return Complex(-ops.k_squared(k)); });
}

ScalarField divergence(const VectorField& u) {
  const auto& ops = spectral_ops(u.grid());
  std::vector<Complex> acc(ops.modes(), 0.0);
  for (int a = 0; a < u.dimension(); ++a) {
    const auto c = ops.forward(u[a].values());
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (!ops.nyquist(k, a)) acc[k] += c[k] * Complex(0.0, ops.wavenumber(k, a));
    }
  }
  return ScalarField(u.grid(), ops.inverse(acc));
}

MatrixField hessian(const ScalarField& f) {
  const auto& grid = f.grid();
  const auto& ops = spectral_ops(grid);
  const int d = grid.dimension();
  const auto c = ops.forward(f.values());
  const auto dd = static_cast<std::size_t>(d * d);
  std::vector<double> entries(grid.size() * dd);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const auto comp = apply_multiplier(f, c, ops, [&](std::size_t k) {
        if (a == b) return Complex(-ops.wavenumber(k, a) * ops.wavenumber(k, a));
        if (ops.nyquist(k, a) || ops.nyquist(k, b)) return Complex(0.0);
        return Complex(-ops.wavenumber(k, a) * ops.wavenumber(k, b));
      });
      for (std::size_t i = 0; i < grid.size(); ++i) {
        entries[i * dd + static_cast<std::size_t>(a * d + b)] = comp[i];
        entries[i * dd + static_cast<std::size_t>(b * d + a)] = comp[i];
      }
    }
  }
  return MatrixField(grid, std::move(entries));
}

MatrixField jacobian(const VectorField& u) {
  const auto& grid = u.grid();
  const int d = grid.dimension();
  const auto dd = static_cast<std::size_t>(d * d);
  std::vector<double> entries(grid.size() * dd);
  for (int k = 0; k < d; ++k) {
    const auto g = gradient(u[k]);
    for (int j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        entries[i * dd + static_cast<std::size_t>(k * d + j)] = g[j][i];
      }
    }
  }
  return MatrixField(grid, std::move(entries));
}

std::vector<ScalarField> curl_components(const VectorField& u) {
  std::vector<ScalarField> out;
  const int d = u.dimension();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) out.push_back(partial(u[j], i) - partial(u[i], j));
  }
  return out;
}

ScalarField heat_multiply(const ScalarField& f, double tau) {
  const auto& ops = spectral_ops(f.grid());
  const auto c = ops.forward(f.values());
  return apply_multiplier(f, c, ops, [&](std::size_t k) { return Complex(std::exp(-ops.k_squared(k) * tau)); });
}

ScalarField dealias(const ScalarField& f) {
  const auto& ops = spectral_ops(f.grid());
  auto c = ops.forward(f.values());
  ops.dealias(c);
  return ScalarField(f.grid(), ops.inverse(c));
}

std::vector<double> evaluate_at(const ScalarField& f, std::span<const Point> points) {
  const auto& grid = f.grid();
  const auto& ops = spectral_ops(grid);
  const auto c = ops.forward(f.values());
  const int d = grid.dimension();
  const int n = grid.points();
  const double k0 = grid.base_wavenumber();
  const double norm = 1.0 / static_cast<double>(grid.size());
  std::vector<double> out;
  out.reserve(points.size());
  // factor[a][m + n/2] for m in [-n/2, n/2]
  std::vector<std::vector<Complex>> factor(static_cast<std::size_t>(d), std::vector<Complex>(static_cast<std::size_t>(n + 1)));
  for (const auto& p : points) {
    const Point x = grid.wrap(p);
    for (int a = 0; a < d; ++a) {
      auto& fa = factor[static_cast<std::size_t>(a)];
      for (int m = -n / 2; m <= n / 2; ++m) {
        const double phase = k0 * m * x[a];
        fa[static_cast<std::size_t>(m + n / 2)] =
            (std::abs(m) == n / 2) ? Complex(std::cos(phase)) : Complex(std::cos(phase), std::sin(phase));
      }
    }
    double s = 0.0;
    for (std::size_t k = 0; k < ops.modes(); ++k) {
      Complex z = c[k];
      for (int a = 0; a < d; ++a) {
        z *= factor[static_cast<std::size_t>(a)][static_cast<std::size_t>(ops.mode_index(k, a) + n / 2)];
      }
      s += ops.weight(k) * z.real();
    }
    out.push_back(s * norm);
  }
  return out;
}

double evaluate_at(const ScalarField& f, const Point& x) {
  const Point pts[1] = {x};
  return evaluate_at(f, std::span<const Point>(pts, 1)).front();
}

ScalarField upsample(const ScalarField& f, const GridSpec& finer) {
  const auto& coarse = f.grid();
  if (finer.dimension() != coarse.dimension() || finer.length() != coarse.length() ||
      finer.points() < coarse.points()) {
    throw InputError("upsample target must share d and L and not be coarser");
  }
  if (finer == coarse) return f;
  const auto& cops = spectral_ops(coarse);
  const auto& fops = spectral_ops(finer);
  const auto cc = cops.forward(f.values());
  const int d = coarse.dimension();
  const int n = coarse.points();
  const double ratio = static_cast<double>(finer.size()) / static_cast<double>(coarse.size());
  std::vector<Complex> fc(fops.modes(), 0.0);
  for (std::size_t k = 0; k < fops.modes(); ++k) {
    std::size_t flat = 0;
    double factor = ratio;
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const int m = fops.mode_index(k, a);
      if (std::abs(m) > n / 2) {
        inside = false;
        break;
      }
      if (std::abs(m) == n / 2) factor *= 0.5;
      const int extent = (a == d - 1) ? n / 2 + 1 : n;
      const int i = (a == d - 1) ? m : ((m % n) + n) % n;
      flat = flat * static_cast<std::size_t>(extent) + static_cast<std::size_t>(i);
    }
    if (inside) fc[k] = cc[flat] * factor;
  }
  return ScalarField(finer, fops.inverse(fc));
}

VectorField upsample(const VectorField& u, const GridSpec& finer) {
  std::vector<ScalarField> comps;
  for (const auto& c : u.components()) comps.push_back(upsample(c, finer));
  return VectorField(std::move(comps));
}

double high_mode_energy_fraction(std::span<const Complex> coeffs, const SpectralOps& ops) noexcept {
  const int cut = ops.grid().points() / 3;
  double total = 0.0;
  double high = 0.0;
  for (std::size_t k = 0; k < ops.modes(); ++k) {
    const double e = ops.weight(k) * std::norm(coeffs[k]);
    total += e;
    if (ops.max_index(k) > cut) high += e;
  }
  return total > 0.0 ? high / total : 0.0;
}

double high_mode_energy_fraction(const ScalarField& f) {
  const auto& ops = spectral_ops(f.grid());
  return high_mode_energy_fraction(ops.forward(f.values()), ops);
}

}  // namespace burgers
