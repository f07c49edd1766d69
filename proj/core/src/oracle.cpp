#include "burgers/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "burgers/error.hpp"
#include "burgers/heat.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

double ResidualSeries::max() const noexcept {
  double out = 0.0;
  for (double v : values) out = std::max(out, v);
  return out;
}

namespace {

using Spectrum = std::vector<Complex>;

// -P[(Pu . grad) Pu] from spectra.
std::vector<Spectrum> advection_spectra(const std::vector<Spectrum>& u, const SpectralOps& ops) {
  const int d = ops.grid().dimension();
  const std::size_t nodes = ops.grid().size();
  std::vector<Spectrum> filtered(u);
  std::vector<std::vector<double>> phys;
  for (auto& s : filtered) {
    ops.dealias(s);
    phys.push_back(ops.inverse(s));
  }
  std::vector<Spectrum> out;
  Spectrum scratch(ops.modes());
  for (std::size_t k = 0; k < u.size(); ++k) {
    std::vector<double> prod(nodes, 0.0);
    for (int j = 0; j < d; ++j) {
      for (std::size_t m = 0; m < scratch.size(); ++m) {
        scratch[m] = ops.nyquist(m, j) ? Complex(0.0) : filtered[k][m] * Complex(0.0, ops.wavenumber(m, j));
      }
      const auto dj = ops.inverse(scratch);
      const auto& uj = phys[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < nodes; ++i) prod[i] += uj[i] * dj[i];
    }
    auto s = ops.forward(prod);
    ops.dealias(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Spectrum> spectra_of(const VectorField& u, const SpectralOps& ops) {
  std::vector<Spectrum> out;
  for (const auto& c : u.components()) out.push_back(ops.forward(c.values()));
  return out;
}

VectorField field_of(const std::vector<Spectrum>& s, const SpectralOps& ops) {
  std::vector<ScalarField> comps;
  for (const auto& c : s) comps.emplace_back(ops.grid(), ops.inverse(c));
  return VectorField(std::move(comps));
}

}  // namespace

VectorField advection(const VectorField& u) {
  const auto& ops = spectral_ops(u.grid());
  return field_of(advection_spectra(spectra_of(u, ops), ops), ops);
}

ResidualSeries residual(const Trajectory& u, const Forcing& g) {
  if (u.size() < 3) throw InputError("residual needs at least 3 frames");
  if (!(g.grid() == u.grid())) throw InputError("forcing lives on a different grid");
  const auto& ops = spectral_ops(u.grid());
  const auto dtu = time_derivative(u);
  ResidualSeries out;
  out.dt = u.step();
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u.time(k);
    const auto s = spectra_of(u[k], ops);
    const auto adv = advection_spectra(s, ops);
    const auto gt = g.at(t);
    std::vector<ScalarField> comps;
    for (std::size_t c = 0; c < s.size(); ++c) {
      Spectrum r(ops.modes());
      for (std::size_t m = 0; m < r.size(); ++m) r[m] = ops.k_squared(m) * s[c][m] + adv[c][m];
      auto v = ops.inverse(r);
      const int ci = static_cast<int>(c);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += dtu[k][ci][i] - gt[ci][i];
      comps.emplace_back(u.grid(), std::move(v));
    }
    out.times.push_back(t);
    out.values.push_back(sup_norm(VectorField(std::move(comps))));
  }
  return out;
}

ScalarField cole_hopf_datum(const GridSpec& grid, double eps) {
  const double k = 2.0 * std::numbers::pi / grid.length();
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = grid.node(i);
    double p = 1.0;
    for (int a = 0; a < grid.dimension(); ++a) p *= std::cos(k * x[static_cast<std::size_t>(a)]);
    v[i] = 1.0 + eps * p;
  }
  return ScalarField(grid, std::move(v));
}

namespace {

void require_positive(const ScalarField& phi, double t) {
  for (double x : phi.values()) {
    if (!(x > 0.0)) {
      std::ostringstream msg;
      msg << "Cole-Hopf potential lost positivity at t = " << t;
      throw OracleError(msg.str());
    }
  }
}

}  // namespace

std::vector<ScalarField> solve_cole_hopf_potential(const ScalarField& phi0, const std::optional<ScalarField>& f,
                                                   double horizon, double dt) {
  const std::size_t steps = step_count(horizon, dt);
  if (f && !(f->grid() == phi0.grid())) throw InputError("potential lives on a different grid");
  require_positive(phi0, 0.0);
  std::vector<double> growth;
  if (f) {
    for (double x : f->values()) growth.push_back(std::exp(x * dt));
  }
  std::vector<ScalarField> frames{phi0};
  frames.reserve(steps + 1);
  for (std::size_t n = 0; n < steps; ++n) {
    auto phi = heat_apply(frames.back(), 0.5 * dt);
    if (f) {
      auto v = std::move(phi).release();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] *= growth[i];
      phi = heat_apply(ScalarField(phi0.grid(), std::move(v)), 0.5 * dt);
    } else {
      phi = heat_apply(phi, 0.5 * dt);
    }
    require_positive(phi, static_cast<double>(n + 1) * dt);
    frames.push_back(std::move(phi));
  }
  return frames;
}

Trajectory cole_hopf_velocity(const std::vector<ScalarField>& phi, double dt, double lambda) {
  if (phi.empty()) throw InputError("no potential frames");
  std::vector<VectorField> frames;
  frames.reserve(phi.size());
  for (const auto& p : phi) {
    std::vector<double> logs(p.size());
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(p[i]);
    frames.push_back(gradient(ScalarField(p.grid(), std::move(logs))) * lambda);
  }
  return Trajectory(phi.front().grid(), 0.0, dt, std::move(frames));
}

Forcing cole_hopf_forcing(const GridSpec& grid, const std::optional<ScalarField>& f, double lambda) {
  return f ? Forcing::gradient(*f, lambda) : Forcing::zero(grid);
}

ColeHopfResidual::ColeHopfResidual(const std::vector<ScalarField>& phi, const std::optional<ScalarField>& f,
                                   double dt) {
  const auto w = cole_hopf_velocity(phi, dt, 1.0);
  if (w.size() < 3) throw InputError("residual needs at least 3 frames");
  const auto dtw = time_derivative(w);
  const auto& grid = w.grid();
  const auto gradf = f ? gradient(*f) : VectorField(grid);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto adv = advection(w[k]);
    std::vector<double> a, b;
    for (int c = 0; c < grid.dimension(); ++c) {
      const auto lap = laplacian(w[k][c]);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        a.push_back(dtw[k][c][i] - lap[i] - gradf[c][i]);
        b.push_back(adv[c][i]);
      }
    }
    a_.push_back(std::move(a));
    b_.push_back(std::move(b));
  }
  components_ = static_cast<std::size_t>(grid.dimension());
}

double ColeHopfResidual::operator()(double lambda) const {
  double out = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    const auto& a = a_[k];
    const auto& b = b_[k];
    const std::size_t nodes = a.size() / components_;
    for (std::size_t i = 0; i < nodes; ++i) {
      double sq = 0.0;
      for (std::size_t c = 0; c < components_; ++c) {
        const double r = lambda * a[c * nodes + i] + lambda * lambda * b[c * nodes + i];
        sq += r * r;
      }
      out = std::max(out, std::sqrt(sq));
    }
  }
  return out;
}

double ColeHopfResidual::best_lambda() const {
  const double step = 0.00625;
  double best = -2.0;
  double best_value = (*this)(best);
  for (int i = 0; i <= 1240; ++i) {
    const double mag = 0.25 + step * i;
    for (double lambda : {-mag, mag}) {
      const double v = (*this)(lambda);
      if (v < best_value) {
        best_value = v;
        best = lambda;
      }
    }
  }
  double lo = best - step, hi = best + step;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double x1 = hi - ratio * (hi - lo);
    const double x2 = lo + ratio * (hi - lo);
    if ((*this)(x1) < (*this)(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return 0.5 * (lo + hi);
}

Trajectory cole_hopf(const ScalarField& phi0, const std::optional<ScalarField>& f, double horizon, double dt,
                     const ColeHopfOptions& options) {
  const auto phi = solve_cole_hopf_potential(phi0, f, horizon, dt);
  auto u = cole_hopf_velocity(phi, dt, options.lambda);
  if (options.validate && u.size() >= 3) {
    const double r = residual(u, cole_hopf_forcing(phi0.grid(), f, options.lambda)).max();
    if (!(r <= options.tol_oracle)) {
      const double best = ColeHopfResidual(phi, f, dt).best_lambda();
      std::ostringstream msg;
      msg << "Cole-Hopf residual " << r << " exceeds " << options.tol_oracle << " at lambda = " << options.lambda
          << "; best lambda = " << best;
      throw ConventionError(msg.str(), best);
    }
  }
  return u;
}

Trajectory direct_solve(const VectorField& u0, const Forcing& g, const SchemeConfig& cfg) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid) || !(g.grid() == cfg.grid)) throw InputError("data must live on the configured grid");
  const auto& ops = spectral_ops(cfg.grid);
  const std::size_t steps = step_count(cfg.horizon, cfg.dt);
  const double dt = cfg.dt;
  std::vector<double> half(ops.modes()), full(ops.modes());
  for (std::size_t m = 0; m < ops.modes(); ++m) {
    half[m] = std::exp(-ops.k_squared(m) * 0.5 * dt);
    full[m] = half[m] * half[m];
  }
  auto nonlinear = [&](double t, const std::vector<Spectrum>& u) {
    auto out = advection_spectra(u, ops);
    for (auto& s : out) {
      for (auto& z : s) z = -z;
    }
    if (!g.is_zero()) {
      const auto gs = spectra_of(g.at(t), ops);
      for (std::size_t c = 0; c < out.size(); ++c) {
        for (std::size_t m = 0; m < out[c].size(); ++m) out[c][m] += gs[c][m];
      }
    }
    return out;
  };
  auto u = spectra_of(u0, ops);
  std::vector<VectorField> frames{u0};
  frames.reserve(steps + 1);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const auto n0 = nonlinear(t, u);
    auto mid = u;
    for (std::size_t c = 0; c < mid.size(); ++c) {
      for (std::size_t m = 0; m < mid[c].size(); ++m) mid[c][m] = half[m] * (mid[c][m] + 0.5 * dt * n0[c][m]);
    }
    const auto n1 = nonlinear(t + 0.5 * dt, mid);
    for (std::size_t c = 0; c < u.size(); ++c) {
      for (std::size_t m = 0; m < u[c].size(); ++m) u[c][m] = full[m] * u[c][m] + dt * half[m] * n1[c][m];
    }
    const double t1 = static_cast<double>(n + 1) * dt;
    for (const auto& s : u) {
      const double share = high_mode_energy_fraction(s, ops);
      if (share > cfg.blocking_threshold) {
        std::ostringstream msg;
        msg << "spectral blocking at t = " << t1 << ": top-third energy share " << share;
        throw ResolutionError(msg.str());
      }
    }
    std::vector<ScalarField> comps;
    for (const auto& s : u) {
      auto v = ops.inverse(s);
      if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); })) {
        std::ostringstream msg;
        msg << "direct solve diverged at t = " << t1;
        throw DivergenceError(msg.str());
      }
      comps.emplace_back(cfg.grid, std::move(v));
    }
    frames.emplace_back(std::move(comps));
  }
  return Trajectory(cfg.grid, 0.0, dt, std::move(frames));
}

}  // namespace burgers
