#include "burgers/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "burgers/error.hpp"
#include "burgers/heat.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

TransportProblem::TransportProblem(VectorField initial, double horizon_, double step)
    : u0(std::move(initial)), horizon(horizon_), dt(step) {
  step_count(horizon, dt);
}

namespace {

using Spectrum = std::vector<Complex>;
using State = std::vector<Spectrum>;
using Rows = std::vector<std::vector<double>>;

void axpy(State& y, double a, const State& x) {
  for (std::size_t c = 0; c < y.size(); ++c) {
    for (std::size_t k = 0; k < y[c].size(); ++k) y[c][k] += a * x[c][k];
  }
}

State sum(const State& a, const State& b) {
  State out = a;
  axpy(out, 1.0, b);
  return out;
}

void require_finite(std::span<const double> v, double t, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      std::ostringstream msg;
      msg << what << " diverged at t = " << t;
      throw DivergenceError(msg.str());
    }
  }
}

// Dealiased products -P[Pb . grad Pw + C Pw] with per-time coefficient caches.
class Operators {
 public:
  Operators(const GridSpec& grid, int components, double dt)
      : grid_(grid), ops_(spectral_ops(grid)), d_(grid.dimension()), c_(components) {
    half_.resize(ops_.modes());
    for (std::size_t k = 0; k < ops_.modes(); ++k) half_[k] = std::exp(-ops_.k_squared(k) * 0.5 * dt);
  }

  const SpectralOps& ops() const { return ops_; }

  void apply_half(State& u) const {
    for (auto& s : u) {
      for (std::size_t k = 0; k < s.size(); ++k) s[k] *= half_[k];
    }
  }

  State spectra(const VectorField& u) const {
    State out;
    for (int k = 0; k < c_; ++k) out.push_back(ops_.forward(u[k].values()));
    return out;
  }

  State zero() const { return State(static_cast<std::size_t>(c_), Spectrum(ops_.modes(), 0.0)); }

  // Sum over (drift, w) terms of Pb . grad Pw, plus C Pw_c, negated and filtered.
  State products(double t, const std::vector<std::pair<const TimeSeries<VectorField>*, const State*>>& advect,
                 const TimeSeries<MatrixField>* zeroth, const State* wc) {
    const std::size_t nodes = grid_.size();
    std::vector<std::vector<double>> prod(static_cast<std::size_t>(c_), std::vector<double>(nodes, 0.0));
    Spectrum scratch(ops_.modes());
    for (const auto& [drift, w] : advect) {
      const auto& b = drift_at(*drift, t);
      for (int k = 0; k < c_; ++k) {
        Spectrum src = (*w)[static_cast<std::size_t>(k)];
        ops_.dealias(src);
        for (int j = 0; j < d_; ++j) {
          for (std::size_t m = 0; m < scratch.size(); ++m) {
            scratch[m] = ops_.nyquist(m, j) ? Complex(0.0) : src[m] * Complex(0.0, ops_.wavenumber(m, j));
          }
          const auto dw = ops_.inverse(scratch);
          const auto& bj = b[static_cast<std::size_t>(j)];
          auto& p = prod[static_cast<std::size_t>(k)];
          for (std::size_t i = 0; i < nodes; ++i) p[i] += bj[i] * dw[i];
        }
      }
    }
    if (zeroth && wc) {
      const auto& cm = zeroth_at(*zeroth, t);
      Rows wphys;
      for (const auto& s0 : *wc) {
        Spectrum s = s0;
        ops_.dealias(s);
        wphys.push_back(ops_.inverse(s));
      }
      for (int k = 0; k < c_; ++k) {
        for (int l = 0; l < c_; ++l) {
          const auto& e = cm[static_cast<std::size_t>(k * c_ + l)];
          const auto& wl = wphys[static_cast<std::size_t>(l)];
          auto& p = prod[static_cast<std::size_t>(k)];
          for (std::size_t i = 0; i < nodes; ++i) p[i] += e[i] * wl[i];
        }
      }
    }
    State out = zero();
    for (int k = 0; k < c_; ++k) {
      auto& o = out[static_cast<std::size_t>(k)];
      ops_.forward(prod[static_cast<std::size_t>(k)], o);
      ops_.dealias(o);
      for (auto& z : o) z = -z;
    }
    return out;
  }

  void add_source(State& out, const TimeSeries<VectorField>& source, double t) const {
    const auto f = source.at(t);
    if (!(f.grid() == grid_)) throw InputError("source lives on a different grid");
    for (int k = 0; k < c_; ++k) {
      const auto fs = ops_.forward(f[k].values());
      auto& o = out[static_cast<std::size_t>(k)];
      for (std::size_t m = 0; m < o.size(); ++m) o[m] += fs[m];
    }
  }

 private:
  std::vector<double> filtered(std::span<const double> values) const {
    auto s = ops_.forward(values);
    ops_.dealias(s);
    return ops_.inverse(s);
  }

  const Rows& drift_at(const TimeSeries<VectorField>& series, double t) {
    auto& entry = drift_cache_[&series];
    if (!entry.first || *entry.first != t) {
      const auto b = series.at(t);
      if (!(b.grid() == grid_)) throw InputError("drift lives on a different grid");
      entry.second.clear();
      for (int j = 0; j < d_; ++j) entry.second.push_back(filtered(b[j].values()));
      entry.first = t;
    }
    return entry.second;
  }

  const Rows& zeroth_at(const TimeSeries<MatrixField>& series, double t) {
    if (!zeroth_time_ || *zeroth_time_ != t) {
      const auto m = series.at(t);
      if (!(m.grid() == grid_)) throw InputError("matrix term lives on a different grid");
      zeroth_.clear();
      const auto cc = static_cast<std::size_t>(c_ * c_);
      for (std::size_t e = 0; e < cc; ++e) {
        std::vector<double> v(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i) v[i] = m.entries()[i * cc + e];
        zeroth_.push_back(filtered(v));
      }
      zeroth_time_ = t;
    }
    return zeroth_;
  }

  GridSpec grid_;
  const SpectralOps& ops_;
  int d_;
  int c_;
  std::vector<double> half_;
  std::map<const void*, std::pair<std::optional<double>, Rows>> drift_cache_;
  std::optional<double> zeroth_time_;
  Rows zeroth_;
};

class Stepper {
 public:
  explicit Stepper(const TransportProblem& p) : p_(p), op_(p.u0.grid(), p.u0.dimension(), p.dt) {}

  Trajectory run() {
    const std::size_t steps = step_count(p_.horizon, p_.dt);
    auto u = op_.spectra(p_.u0);
    std::vector<VectorField> frames;
    frames.reserve(steps + 1);
    frames.push_back(p_.u0);
    for (std::size_t n = 0; n < steps; ++n) {
      const double t0 = static_cast<double>(n) * p_.dt;
      const double t1 = static_cast<double>(n + 1) * p_.dt;
      op_.apply_half(u);
      if (has_rhs()) {
        const auto k1 = rhs(t0, u);
        auto w1 = u;
        axpy(w1, p_.dt, k1);
        const auto k2 = rhs(t1, w1);
        axpy(u, 0.5 * p_.dt, k1);
        axpy(u, 0.5 * p_.dt, k2);
      }
      op_.apply_half(u);
      frames.push_back(to_field(u, t1));
    }
    return Trajectory(p_.u0.grid(), 0.0, p_.dt, std::move(frames));
  }

 private:
  bool has_rhs() const { return p_.drift || p_.zeroth || p_.source; }

  State rhs(double t, const State& w) {
    State out = op_.zero();
    if (p_.drift || p_.zeroth) {
      std::vector<std::pair<const TimeSeries<VectorField>*, const State*>> advect;
      if (p_.drift) advect.emplace_back(&*p_.drift, &w);
      out = op_.products(t, advect, p_.zeroth ? &*p_.zeroth : nullptr, &w);
    }
    if (p_.source) op_.add_source(out, *p_.source, t);
    return out;
  }

  VectorField to_field(const State& u, double t) const {
    std::vector<ScalarField> comps;
    for (const auto& s : u) {
      const double share = high_mode_energy_fraction(s, op_.ops());
      if (share > p_.blocking_threshold) {
        std::ostringstream msg;
        msg << "spectral blocking at t = " << t << ": top-third energy share " << share;
        throw ResolutionError(msg.str());
      }
      auto v = op_.ops().inverse(s);
      require_finite(v, t, "transport solve");
      comps.emplace_back(p_.u0.grid(), std::move(v));
    }
    return VectorField(std::move(comps));
  }

  const TransportProblem& p_;
  Operators op_;
};

// Exact discrete difference of the step under drift b -> b + delta.
class IncrementStepper {
 public:
  IncrementStepper(const TransportProblem& p, const Trajectory& base, const TimeSeries<VectorField>& delta)
      : p_(p), base_(base), delta_(delta), op_(p.u0.grid(), p.u0.dimension(), p.dt) {}

  Trajectory run() {
    const std::size_t steps = step_count(p_.horizon, p_.dt);
    if (base_.size() != steps + 1 || !(base_.grid() == p_.u0.grid())) {
      throw InputError("base solution does not match the problem");
    }
    const auto* zeroth = p_.zeroth ? &*p_.zeroth : nullptr;
    const auto* drift = p_.drift ? &*p_.drift : nullptr;
    const double dt = p_.dt;
    State v = op_.zero();
    std::vector<VectorField> frames;
    frames.reserve(steps + 1);
    frames.emplace_back(p_.u0.grid());
    for (std::size_t n = 0; n < steps; ++n) {
      const double t0 = static_cast<double>(n) * dt;
      const double t1 = static_cast<double>(n + 1) * dt;
      auto w = op_.spectra(base_[n]);
      op_.apply_half(w);
      State k1 = op_.zero();
      if (drift || zeroth) k1 = op_.products(t0, drift_terms(drift, &w), zeroth, &w);
      if (p_.source) op_.add_source(k1, *p_.source, t0);
      auto y = w;
      axpy(y, dt, k1);

      op_.apply_half(v);
      const auto wv = sum(w, v);
      const auto dk1 = op_.products(t0, increment_terms(drift, &v, &wv), zeroth, &v);
      auto x = v;
      axpy(x, dt, dk1);
      const auto xy = sum(x, y);
      const auto dk2 = op_.products(t1, increment_terms(drift, &x, &xy), zeroth, &x);
      axpy(v, 0.5 * dt, dk1);
      axpy(v, 0.5 * dt, dk2);
      op_.apply_half(v);

      std::vector<ScalarField> comps;
      for (const auto& s : v) {
        auto vals = op_.ops().inverse(s);
        require_finite(vals, t1, "transport increment");
        comps.emplace_back(p_.u0.grid(), std::move(vals));
      }
      frames.emplace_back(std::move(comps));
    }
    return Trajectory(p_.u0.grid(), 0.0, dt, std::move(frames));
  }

 private:
  using Terms = std::vector<std::pair<const TimeSeries<VectorField>*, const State*>>;

  static Terms drift_terms(const TimeSeries<VectorField>* drift, const State* w) {
    Terms out;
    if (drift) out.emplace_back(drift, w);
    return out;
  }

  // b . grad dv + delta . grad (dv + w).
  Terms increment_terms(const TimeSeries<VectorField>* drift, const State* dv, const State* full) const {
    Terms out;
    if (drift) out.emplace_back(drift, dv);
    out.emplace_back(&delta_, full);
    return out;
  }

  const TransportProblem& p_;
  const Trajectory& base_;
  const TimeSeries<VectorField>& delta_;
  Operators op_;
};

}  // namespace

Trajectory solve_transport(const TransportProblem& p) {
  if (!std::isfinite(p.blocking_threshold) || p.blocking_threshold < 0.0) {
    throw InputError("blocking threshold must be finite and >= 0");
  }
  return Stepper(p).run();
}

Trajectory solve_drift_increment(const TransportProblem& p, const Trajectory& solution,
                                 const TimeSeries<VectorField>& delta) {
  return IncrementStepper(p, solution, delta).run();
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& values, double dt) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t k = 1; k < values.size(); ++k) out[k] = out[k - 1] + 0.5 * dt * (values[k - 1] + values[k]);
  return out;
}

namespace {

struct BoundSeries {
  std::vector<double> rhs;
  double source_integral = 0.0;
};

BoundSeries max_principle_rhs(const TransportProblem& p, std::size_t frames) {
  std::vector<double> cnorm(frames, 0.0);
  std::vector<double> fnorm(frames, 0.0);
  for (std::size_t k = 0; k < frames; ++k) {
    const double t = static_cast<double>(k) * p.dt;
    if (p.zeroth) cnorm[k] = p.zeroth->at(t).sup_operator_norm();
    if (p.source) fnorm[k] = sup_norm(p.source->at(t));
  }
  const auto big_i = cumulative_trapezoid(cnorm, p.dt);
  const double u0 = sup_norm(p.u0);
  BoundSeries out;
  out.rhs.resize(frames);
  for (std::size_t k = 0; k < frames; ++k) {
    double integral = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      integral += 0.5 * p.dt *
                  (std::exp(big_i[k] - big_i[j - 1]) * fnorm[j - 1] + std::exp(big_i[k] - big_i[j]) * fnorm[j]);
    }
    out.rhs[k] = std::exp(big_i[k]) * u0 + integral;
  }
  out.source_integral = cumulative_trapezoid(fnorm, p.dt).back();
  return out;
}

}  // namespace

double transport_tolerance(const TransportProblem& p) {
  double f_integral = 0.0;
  if (p.source) {
    const std::size_t steps = step_count(p.horizon, p.dt);
    std::vector<double> fnorm(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) fnorm[k] = sup_norm(p.source->at(static_cast<double>(k) * p.dt));
    f_integral = cumulative_trapezoid(fnorm, p.dt).back();
  }
  const double scale = std::max({1.0, sup_norm(p.u0), f_integral});
  return 10.0 * p.dt * p.dt * scale + 1e-10;
}

std::vector<double> max_principle_slack(const Trajectory& traj, const TransportProblem& p) {
  if (!(traj.grid() == p.u0.grid())) throw InputError("trajectory and problem live on different grids");
  if (std::abs(traj.step() - p.dt) > 1e-12 * p.dt || traj.start() != 0.0) {
    throw InputError("trajectory time grid does not match the problem");
  }
  const auto bound = max_principle_rhs(p, traj.size());
  std::vector<double> slack(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) slack[k] = bound.rhs[k] - sup_norm(traj[k]);
  return slack;
}

}  // namespace burgers
