#include "burgers/schauder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burgers/error.hpp"
#include "burgers/norms.hpp"
#include "burgers/spectral.hpp"

namespace burgers {

double ParabolicBall::duration() const { return std::pow(M, j); }
double ParabolicBall::radius() const { return std::pow(M, 0.5 * j); }

ParabolicBall ParabolicBall::rescaled(int jr) const {
  ParabolicBall out = *this;
  out.t0 = t0 * std::pow(M, -jr);
  const double s = std::pow(M, -0.5 * jr);
  for (auto& x : out.x0) x *= s;
  out.j = j - jr;
  return out;
}

ParabolicBall ParabolicBall::inner() const {
  ParabolicBall out = *this;
  out.j = j - 1;
  return out;
}

const char* to_string(SchauderBound which) noexcept {
  switch (which) {
    case SchauderBound::gradient: return "gradient";
    case SchauderBound::gradient_holder: return "gradient_holder";
    case SchauderBound::second: return "second";
    case SchauderBound::second_holder: return "second_holder";
  }
  return "unknown";
}

SchauderBound schauder_bound_from_string(const std::string& name) {
  for (auto w : {SchauderBound::gradient, SchauderBound::gradient_holder, SchauderBound::second,
                 SchauderBound::second_holder}) {
    if (name == to_string(w)) return w;
  }
  throw InputError("unknown Schauder bound '" + name + "'");
}

namespace {

struct BallSamples {
  std::vector<std::size_t> frames;
  std::vector<std::size_t> nodes;
};

BallSamples select(const Trajectory& u, const ParabolicBall& ball) {
  const auto& grid = u.grid();
  const double eps = 1e-9;
  if (!(ball.M > 1.0)) throw InputError("ball base M must be > 1");
  if (ball.t0 - ball.duration() < u.start() - eps * u.step() || ball.t0 > u.end() + eps * u.step()) {
    throw WindowError("parabolic ball leaves the trajectory time span");
  }
  if (ball.radius() > 0.5 * grid.length() * (1.0 + eps)) throw WindowError("parabolic ball does not fit the torus");
  BallSamples out;
  const double lo = ball.t0 - ball.duration();
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u.time(k);
    if (t >= lo - eps * u.step() && t <= ball.t0 + eps * u.step()) out.frames.push_back(k);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.distance(grid.node(i), ball.x0) <= ball.radius() * (1.0 + eps)) out.nodes.push_back(i);
  }
  if (out.frames.empty() || out.nodes.empty()) throw WindowError("parabolic ball contains no samples");
  return out;
}

std::vector<std::size_t> strided(const std::vector<std::size_t>& frames, int limit) {
  const auto cap = static_cast<std::size_t>(std::max(2, limit));
  if (frames.size() <= cap) return frames;
  const std::size_t stride = (frames.size() + cap - 2) / (cap - 1);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < frames.size(); i += stride) out.push_back(frames[i]);
  return out;
}

// Second-order time difference of u at frame k.
VectorField time_difference(const Trajectory& u, std::size_t k) {
  const std::size_t n = u.size();
  if (n < 3) throw InputError("time derivatives need at least 3 frames");
  const double h = u.step();
  if (k == 0) return (u[0] * -1.5 + u[1] * 2.0 - u[2] * 0.5) * (1.0 / h);
  if (k == n - 1) return (u[n - 1] * 1.5 - u[n - 2] * 2.0 + u[n - 3] * 0.5) * (1.0 / h);
  return (u[k + 1] - u[k - 1]) * (0.5 / h);
}

using ComponentFn = std::function<std::vector<ScalarField>(std::size_t)>;

double ball_seminorm(const Trajectory& u, const BallSamples& s, const ComponentFn& comps, double alpha,
                     const SchauderOptions& options) {
  const auto frames = strided(s.frames, options.holder_frames);
  const auto& grid = u.grid();
  std::optional<SampleSet> set;
  int f = 0;
  for (std::size_t k : frames) {
    const auto c = comps(k);
    if (!set) set.emplace(grid.length(), grid.dimension(), static_cast<int>(c.size()));
    std::vector<double> value(c.size());
    for (std::size_t i : s.nodes) {
      for (std::size_t q = 0; q < c.size(); ++q) value[q] = c[q][i];
      const auto idx = grid.multi_index(i);
      set->add(u.time(k), grid.node(i), value, {f, idx[0], idx[1], idx[2]});
    }
    ++f;
  }
  if (set->size() < 2) return 0.0;
  HolderOptions ho = options.holder;
  ho.lattice_period = 0;
  return holder_seminorm(*set, alpha, HolderMode::parabolic, ho).value;
}

double ball_sup(const BallSamples& s, const ComponentFn& comps) {
  double out = 0.0;
  for (std::size_t k : s.frames) {
    const auto c = comps(k);
    for (std::size_t i : s.nodes) {
      double sq = 0.0;
      for (const auto& f : c) sq += f[i] * f[i];
      out = std::max(out, std::sqrt(sq));
    }
  }
  return out;
}

}  // namespace

BoundReport check_schauder_instance(const Trajectory& u, const SchauderCoefficients& coeffs,
                                    const ParabolicBall& ball, double alpha, SchauderBound which,
                                    const SchauderOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const double ap = std::isnan(options.alpha_prime) ? 0.5 * (alpha + 1.0) : options.alpha_prime;
  if (which == SchauderBound::second_holder && !(ap > alpha && ap <= 1.0)) {
    throw InputError("alpha' must lie in (alpha, 1]");
  }
  const auto outer = select(u, ball);
  const auto inner = select(u, ball.inner());
  const auto& grid = u.grid();

  auto frame_u = [&](std::size_t k) { return u[k].components(); };
  const double sup_u = ball_sup(outer, frame_u);

  double a_norm = 0.0, b_norm = 0.0, f_norm = 0.0;
  if (coeffs.a) {
    for (std::size_t k : outer.frames) {
      const auto a = coeffs.a->at(u.time(k));
      for (std::size_t i : outer.nodes) {
        if (a[i] < 0.0) throw InputError("zeroth-order coefficient a is negative on the ball");
      }
    }
    a_norm = ball_seminorm(u, outer, [&](std::size_t k) { return std::vector{coeffs.a->at(u.time(k))}; }, alpha,
                           options);
  }
  if (coeffs.b) {
    b_norm = ball_seminorm(u, outer, [&](std::size_t k) { return coeffs.b->at(u.time(k)).components(); }, alpha,
                           options);
  }
  if (coeffs.f) {
    f_norm = ball_seminorm(u, outer, [&](std::size_t k) { return coeffs.f->at(u.time(k)).components(); }, alpha,
                           options);
  }
  double b_center = 0.0;
  if (coeffs.b) {
    const auto b0 = coeffs.b->at(ball.t0);
    double sq = 0.0;
    for (const auto& c : b0.components()) {
      const double v = evaluate_at(c, ball.x0);
      sq += v * v;
    }
    b_center = std::sqrt(sq);
  }
  const double mj = ball.duration();
  const double rb = 1.0 / (1.0 + std::sqrt(mj) * b_center);

  auto grad = [&](std::size_t k) { return gradient_components(u[k]); };
  auto hess = [&](std::size_t k) { return hessian_components(u[k]); };
  auto dtu = [&](std::size_t k) { return time_difference(u, k).components(); };

  double lhs = 0.0, rhs = 0.0;
  const double a = alpha;
  switch (which) {
    case SchauderBound::gradient:
      lhs = ball_sup(inner, grad);
      rhs = std::sqrt(mj) / rb *
            (std::pow(mj, a / 2) * f_norm +
             (std::pow(mj, a) / rb * b_norm * b_norm + std::pow(mj, a / 2) * a_norm + 1.0 / mj) * sup_u);
      break;
    case SchauderBound::gradient_holder:
      lhs = ball_seminorm(u, inner, grad, alpha, options);
      rhs = std::pow(mj, -a / 2) * std::pow(rb, -(1 + a) / 2) *
            (std::pow(mj, (1 + a) / 2) * f_norm +
             (std::pow(mj, (1 + a + a * a) / (2 * a)) * std::pow(rb, -(1 + a) / (2 * a)) *
                  std::pow(b_norm, (1 + a) / a) +
              std::pow(mj, (1 + a) / 2) * a_norm + std::pow(mj, -0.5)) *
                 sup_u);
      break;
    case SchauderBound::second:
      lhs = std::max(ball_sup(inner, hess), ball_sup(inner, dtu));
      rhs = 1.0 / rb *
            (std::pow(mj, a / 2) * f_norm +
             (std::pow(mj, a) / rb * b_norm * b_norm + std::pow(mj, a / 2) * a_norm + 1.0 / mj) * sup_u);
      break;
    case SchauderBound::second_holder:
      lhs = std::max(ball_seminorm(u, inner, hess, alpha, options), ball_seminorm(u, inner, dtu, alpha, options));
      rhs = std::pow(mj, -a / 2) * std::pow(rb, -(1 + ap / 2)) *
            (std::pow(mj, a / 2) * f_norm +
             (std::pow(mj, a / 2) * std::pow(rb, -(2 + ap) / (2 * (1 + a))) * std::pow(b_norm, (2 + a) / (1 + a)) +
              std::pow(mj, a / 2) * a_norm + 1.0 / mj) *
                 sup_u);
      break;
  }

  BoundReport r;
  r.name = std::string("schauder_") + to_string(which);
  r.params = {{"alpha", alpha}, {"M", ball.M}, {"j", ball.j}, {"t0", ball.t0}, {"L", grid.length()}};
  if (which == SchauderBound::second_holder) r.params["alpha_prime"] = ap;
  r.times = {ball.t0};
  r.lhs = {lhs};
  r.rhs = {rhs};
  const double implied = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  r.c_unclamped = implied;
  r.c_star = implied;
  r.worst_ratio = implied;
  r.worst_t = ball.t0;
  r.pass = std::isfinite(implied);
  r.extra = {{"sup_u", sup_u},        {"a_seminorm", a_norm}, {"b_seminorm", b_norm}, {"f_seminorm", f_norm},
             {"b_center", b_center},  {"R_b", rb},            {"seed", options.holder.seed},
             {"outer_samples", outer.frames.size() * outer.nodes.size()},
             {"inner_samples", inner.frames.size() * inner.nodes.size()}};
  return r;
}

namespace {

ScalarField regrid(const ScalarField& f, const GridSpec& grid) {
  return ScalarField(grid, std::vector<double>(f.values().begin(), f.values().end()));
}

VectorField regrid(const VectorField& u, const GridSpec& grid) {
  std::vector<ScalarField> comps;
  for (const auto& c : u.components()) comps.push_back(regrid(c, grid));
  return VectorField(std::move(comps));
}

}  // namespace

RescaledBundle parabolic_rescale(const Trajectory& u, const SchauderCoefficients& coeffs, int j, double M) {
  if (!(M > 1.0) || !std::isfinite(M)) throw InputError("rescale base M must be finite and > 1");
  const auto& g = u.grid();
  const double time_scale = std::pow(M, j);
  const double space_scale = std::pow(M, 0.5 * j);
  const GridSpec grid(g.dimension(), g.points(), g.length() / space_scale);
  std::vector<VectorField> frames;
  frames.reserve(u.size());
  for (const auto& f : u.frames()) frames.push_back(regrid(f, grid));
  RescaledBundle out{Trajectory(grid, u.start() / time_scale, u.step() / time_scale, std::move(frames)), {}};
  if (coeffs.a) {
    out.coeffs.a = TimeSeries<ScalarField>::function(
        [a = *coeffs.a, grid, time_scale](double t) { return regrid(a.at(time_scale * t), grid) * time_scale; });
  }
  if (coeffs.b) {
    out.coeffs.b = TimeSeries<VectorField>::function([b = *coeffs.b, grid, time_scale, space_scale](double t) {
      return regrid(b.at(time_scale * t), grid) * space_scale;
    });
  }
  if (coeffs.f) {
    out.coeffs.f = TimeSeries<VectorField>::function(
        [f = *coeffs.f, grid, time_scale](double t) { return regrid(f.at(time_scale * t), grid) * time_scale; });
  }
  return out;
}

std::vector<double> schauder_residual(const Trajectory& u, const SchauderCoefficients& coeffs) {
  const auto dtu = time_derivative(u);
  const auto& grid = u.grid();
  std::vector<double> out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u.time(k);
    std::optional<ScalarField> a;
    std::optional<VectorField> b, f;
    if (coeffs.a) a = coeffs.a->at(t);
    if (coeffs.b) b = coeffs.b->at(t);
    if (coeffs.f) f = coeffs.f->at(t);
    std::vector<ScalarField> comps;
    for (int c = 0; c < u[k].dimension(); ++c) {
      const auto& uc = u[k][c];
      const auto lap = laplacian(uc);
      std::vector<double> r(grid.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = dtu[k][c][i] - lap[i] + (a ? (*a)[i] * uc[i] : 0.0);
      if (b) {
        const auto du = gradient(uc);
        for (int q = 0; q < grid.dimension(); ++q) {
          for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (*b)[q][i] * du[q][i];
        }
      }
      if (f) {
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (*f)[c][i];
      }
      comps.emplace_back(grid, std::move(r));
    }
    out.push_back(sup_norm(VectorField(std::move(comps))));
  }
  return out;
}

}  // namespace burgers
