#include <doctest.h>

#include <cmath>
#include <limits>

#include <burgers/norms.hpp>
#include <burgers/schauder.hpp>
#include <burgers/scheme.hpp>
#include <burgers/transport.hpp>
#include <burgers/trig_field.hpp>
#include <burgers/verify.hpp>

#include "support.hpp"

using namespace burgers;
using namespace burgers::testing;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// e^{-t} sin(x - b0 t) sampled on [0, T].
Trajectory advected_heat(const GridSpec& g, double b0, double horizon, double dt) {
  std::vector<VectorField> frames;
  const auto steps = static_cast<int>(std::lround(horizon / dt));
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    frames.push_back(as_vector(
        ScalarField::from_function(g, [&](const Point& x) { return std::exp(-t) * std::sin(x[0] - b0 * t); })));
  }
  return Trajectory(g, 0.0, dt, std::move(frames));
}

SchauderCoefficients constant_drift(const GridSpec& g, double b) {
  SchauderCoefficients c;
  c.b = TimeSeries<VectorField>::constant(VectorField::constant(g, std::vector<double>{b}));
  return c;
}

}  // namespace

TEST_CASE("finalize fits the smallest constant") {
  BoundReport r;
  r.times = {0.0, 1.0};
  r.lhs = {1.0, 8.0};
  r.rhs = {1.0, 1.0};
  finalize(r, {1.0, 1.0}, {1.0, 3.0});
  CHECK_FALSE(r.pass);
  CHECK(r.c_unclamped == doctest::Approx(2.0));
  CHECK(r.c_star == doctest::Approx(2.0));
  CHECK(r.worst_t == 1.0);
  CHECK(r.worst_ratio == doctest::Approx(8.0));

  BoundReport s;
  s.times = {0.0};
  s.lhs = {0.5};
  s.rhs = {1.0};
  finalize(s, {1.0}, {2.0});
  CHECK(s.pass);
  CHECK(s.c_star == 1.0);
  CHECK(s.c_unclamped == doctest::Approx(std::sqrt(0.5)));

  BoundReport fixed;
  fixed.times = {0.0};
  fixed.lhs = {2.0};
  fixed.rhs = {1.0};
  finalize(fixed, fixed.rhs, 0.0);
  CHECK(fixed.c_star == kInf);
  CHECK(fixed.c_unclamped == doctest::Approx(2.0));
}

TEST_CASE("bound report serializes") {
  BoundReport r;
  r.name = "demo";
  r.times = {0.0, 0.5};
  r.lhs = {0.0, 1.0};
  r.rhs = {1.0, 1.5};
  finalize(r, r.rhs, 0.0);
  const auto j = to_json(r);
  for (const char* key : {"name", "params", "lhs", "rhs", "c_star", "verdict", "worst_t", "worst_ratio"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "pass");
  CHECK(slack_csv(r).rfind("t,slack\n", 0) == 0);
  CHECK(r.min_slack() == doctest::Approx(0.5));
}

TEST_CASE("zero run passes every uniform and short-time bound") {
  const GridSpec g(1, 16, kTwoPi);
  SchemeConfig cfg;
  cfg.grid = g;
  cfg.horizon = 0.1;
  cfg.dt = 1e-2;
  cfg.m_max = 3;
  cfg.tol_fp = 1e-30;
  const auto res = run_picard(cfg, VectorField(g), Forcing::zero(g));
  const KCalculator k(VectorField(g), Forcing::zero(g), 1.0, 0.5);
  const auto uni = check_uniform(res.records, k);
  for (const auto* r : uni.all()) {
    CHECK(r->pass);
    CHECK(r->c_star == 1.0);
  }
  const auto st = check_short_time(res.records, k, 0.25);
  for (const auto* r : st.all()) CHECK(r->pass);
}

TEST_CASE("heat iterate gradient report against K1") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = line(64);
    const auto u0 = make_trig_field(g, seed, 3, 1.0);
    const auto force = Forcing::steady(make_trig_field(g, seed + 50, 2, 0.5));
    SchemeConfig cfg;
    cfg.grid = g;
    cfg.horizon = 0.2;
    cfg.dt = 2e-3;
    cfg.m_max = 1;
    const auto res = run_picard(cfg, u0, force);
    const KCalculator k(u0, force, 1.0, 0.5);
    const auto r = check_heat_gradient(res.records.front(), k);
    CHECK(r.pass);
    CHECK(r.min_slack() >= -1e-8);
  }
}

TEST_CASE("fitted constants are stable under halving dt") {
  const auto g = line(32);
  const auto u0 = make_trig_field(g, 3, 3, 1.0);
  const KCalculator k(u0, Forcing::zero(g), 1.0, 0.5);
  auto fit = [&](double dt) {
    SchemeConfig cfg;
    cfg.grid = g;
    cfg.horizon = 0.2;
    cfg.dt = dt;
    cfg.tol_fp = 1e-12;
    return check_uniform(run_picard(cfg, u0, Forcing::zero(g)).records, k);
  };
  const auto a = fit(4e-3), b = fit(2e-3);
  CHECK(std::isfinite(a.second.c_star));
  CHECK(std::abs(a.second.c_unclamped - b.second.c_unclamped) <= 0.2 * b.second.c_unclamped);
  CHECK(std::abs(a.grad.c_unclamped - b.grad.c_unclamped) <= 0.2 * b.grad.c_unclamped);
}

TEST_CASE("short-time window closes for huge constants") {
  const auto g = line(32);
  const auto u0 = make_trig_field(g, 3, 3, 1.0);
  SchemeConfig cfg;
  cfg.grid = g;
  cfg.horizon = 0.05;
  cfg.dt = 1e-2;
  cfg.m_max = 2;
  const auto res = run_picard(cfg, u0, Forcing::zero(g));
  const KCalculator k(u0, Forcing::zero(g), 1e8, 0.5);
  CHECK_THROWS_AS(check_short_time(res.records, k, 0.25), WindowError);
  const KCalculator k1(u0, Forcing::zero(g), 1.0, 0.5);
  CHECK_THROWS_AS(check_short_time(res.records, k1, 0.5), InputError);
}

TEST_CASE("first increment sits below the integral bound") {
  const auto g = line(64);
  const auto u0 = make_trig_field(g, 8, 3, 1.0);
  const KCalculator k(u0, Forcing::zero(g), 1.0, 0.5);
  SchemeConfig cfg;
  cfg.grid = g;
  cfg.horizon = 0.05;
  cfg.dt = 1e-3;
  cfg.m_max = 3;
  cfg.tol_fp = 1e-30;
  const auto st = check_short_time(run_picard(cfg, u0, Forcing::zero(g)).records, k, 0.25);
  CHECK(st.first.pass);
  CHECK(st.first.extra["integral_within_K0_K_t"] == true);
}

TEST_CASE("gronwall with identical problems has zero difference") {
  const auto g = line(32);
  TransportProblem p(make_trig_field(g, 1, 3, 1.0), 0.2, 1e-2);
  p.drift = TimeSeries<VectorField>::constant(make_trig_field(g, 2, 2, 1.0));
  const auto check = check_gronwall(p, p);
  for (double l : check.report.lhs) CHECK(l == 0.0);
  CHECK(check.report.min_slack() >= 0.0);
}

TEST_CASE("gronwall under a small constant drift perturbation") {
  const auto g = line(64);
  for (double eps : {0.1, 0.01, 0.001}) {
    TransportProblem p(make_trig_field(g, 4, 3, 1.0), 0.3, 1e-2);
    p.drift = TimeSeries<VectorField>::constant(VectorField::constant(g, std::vector<double>{0.5}));
    auto pbar = p;
    pbar.drift = TimeSeries<VectorField>::constant(VectorField::constant(g, std::vector<double>{0.5 + eps}));
    const auto check = check_gronwall(p, pbar);
    CHECK(check.report.min_slack() >= -check.report.tolerance);
    CHECK(check.report.worst_ratio <= 1.0 + 1e-9);
    CHECK(check.report.worst_ratio > 0.1);
  }
}

TEST_CASE("gronwall amplification of a diagonal matrix is exponential") {
  const GridSpec g(2, 16, kTwoPi);
  const double lambda = 0.7;
  TransportProblem p(make_trig_field(g, 1, 3, 1.0), 0.5, 1e-2);
  auto pbar = p;
  const std::vector<double> diag{lambda, 0.0, 0.0, lambda};
  pbar.zeroth = TimeSeries<MatrixField>::constant(MatrixField::uniform(g, diag));
  pbar.source = TimeSeries<VectorField>::constant(make_trig_field(g, 9, 2, 0.5));
  const auto check = check_gronwall(p, pbar);
  for (std::size_t k = 0; k < check.exponents.size(); ++k) {
    CHECK(std::abs(check.exponents[k] - lambda * 1e-2 * static_cast<double>(k)) <= 1e-10);
  }
  CHECK(check.report.min_slack() >= -check.report.tolerance);
}

TEST_CASE("gronwall needs a shared initial condition") {
  const auto g = line(16);
  TransportProblem p(make_trig_field(g, 1, 3, 1.0), 0.1, 1e-2);
  TransportProblem q(make_trig_field(g, 2, 3, 1.0), 0.1, 1e-2);
  CHECK_THROWS_AS(check_gronwall(p, q), InputError);
}

TEST_CASE("series report over several cases") {
  const auto r = check_series({{1.0, 3.7}, {0.25, 10.0}, {2.0, 0.0}});
  CHECK(r.pass);
  CHECK(r.lhs.size() == 3);
}

TEST_CASE("schauder ball geometry") {
  const ParabolicBall ball{1.0, {0.0, 0.0, 0.0}, -2, 2.0};
  CHECK(ball.duration() == doctest::Approx(0.25));
  CHECK(ball.radius() == doctest::Approx(0.5));
  CHECK(ball.inner().j == -3);
  CHECK(schauder_bound_from_string(to_string(SchauderBound::second_holder)) == SchauderBound::second_holder);
  CHECK_THROWS_AS(schauder_bound_from_string("3.46"), InputError);
}

TEST_CASE("schauder on a constant solution has zero implied constant") {
  const auto g = line(64);
  const Trajectory u(g, 0.0, 0.01, std::vector<VectorField>(101, VectorField::constant(g, std::vector<double>{2.0})));
  for (auto which : {SchauderBound::gradient, SchauderBound::gradient_holder, SchauderBound::second,
                     SchauderBound::second_holder}) {
    const auto r = check_schauder_instance(u, {}, {1.0, {3.0, 0.0, 0.0}, -1, 2.0}, 0.5, which);
    CHECK(r.c_unclamped == 0.0);
    CHECK(r.pass);
  }
}

TEST_CASE("schauder implied constant is scale invariant on heat solutions") {
  const auto g = line(256);
  const auto u = advected_heat(g, 0.0, 1.0, 1e-3);
  double lo = kInf, hi = 0.0;
  for (int j = -4; j <= 0; ++j) {
    const auto r = check_schauder_instance(u, {}, {1.0, {0.0, 0.0, 0.0}, j, 2.0}, 0.5, SchauderBound::gradient);
    lo = std::min(lo, r.c_unclamped);
    hi = std::max(hi, r.c_unclamped);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 2.0);
}

TEST_CASE("schauder implied constant does not grow with the drift") {
  const auto g = line(256);
  double prev = kInf;
  for (double b0 : {0.0, 2.0, 8.0, 32.0}) {
    const auto u = advected_heat(g, b0, 1.0, 1e-3);
    const auto r = check_schauder_instance(u, constant_drift(g, -b0), {1.0, {1.0, 0.0, 0.0}, -2, 2.0}, 0.5,
                                           SchauderBound::gradient);
    CHECK(r.c_unclamped <= prev * (1.0 + 1e-12));
    prev = r.c_unclamped;
  }
}

TEST_CASE("schauder rejects balls outside the data and negative potentials") {
  const auto g = line(64);
  const auto u = advected_heat(g, 0.0, 0.5, 1e-2);
  CHECK_THROWS_AS(check_schauder_instance(u, {}, {0.5, {0.0, 0.0, 0.0}, 1, 2.0}, 0.5, SchauderBound::gradient),
                  WindowError);
  CHECK_THROWS_AS(check_schauder_instance(u, {}, {0.7, {0.0, 0.0, 0.0}, -4, 2.0}, 0.5, SchauderBound::gradient),
                  WindowError);
  SchauderCoefficients neg;
  neg.a = TimeSeries<ScalarField>::constant(ScalarField::constant(g, -1.0));
  CHECK_THROWS_AS(check_schauder_instance(u, neg, {0.5, {0.0, 0.0, 0.0}, -2, 2.0}, 0.5, SchauderBound::gradient),
                  InputError);
}

TEST_CASE("parabolic rescale with j = 0 is the identity") {
  const auto g = line(64);
  const auto u = advected_heat(g, 1.0, 0.2, 1e-2);
  const auto bundle = parabolic_rescale(u, constant_drift(g, -1.0), 0, 3.0);
  CHECK(bundle.u.grid() == g);
  CHECK(bundle.u.step() == u.step());
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(bit_equal(bundle.u[k], u[k]));
}

TEST_CASE("parabolic rescale keeps the heat equation") {
  const auto g = line(64);
  const auto u = advected_heat(g, 0.0, 0.2, 1e-4);
  const auto bundle = parabolic_rescale(u, {}, -2, 2.0);
  double worst = 0.0;
  for (double r : schauder_residual(bundle.u, bundle.coeffs)) worst = std::max(worst, r);
  CHECK(worst <= 1e-8);
  CHECK(bundle.u.grid().length() == doctest::Approx(2.0 * kTwoPi));
}

TEST_CASE("parabolic rescale scales the coefficients") {
  const auto g = line(64);
  const auto u = advected_heat(g, 2.0, 0.2, 1e-3);
  const int j = -2;
  const double M = 2.0;
  const auto bundle = parabolic_rescale(u, constant_drift(g, -2.0), j, M);
  const double b_tilde = bundle.coeffs.b->at(0.0)[0][0];
  CHECK(std::abs(b_tilde) == doctest::Approx(std::pow(M, j / 2.0) * 2.0).epsilon(1e-15));
  double orig = 0.0, scaled = 0.0;
  for (double r : schauder_residual(u, constant_drift(g, -2.0))) orig = std::max(orig, r);
  for (double r : schauder_residual(bundle.u, bundle.coeffs)) scaled = std::max(scaled, r);
  CHECK(scaled == doctest::Approx(std::pow(M, j) * orig).epsilon(1e-6));
}

TEST_CASE("schauder implied constant survives a parabolic rescale") {
  const auto g = line(128);
  const auto u = advected_heat(g, 0.0, 1.0, 1e-3);
  const ParabolicBall ball{1.0, {0.0, 0.0, 0.0}, -1, 2.0};
  const auto base = check_schauder_instance(u, {}, ball, 0.5, SchauderBound::gradient);
  for (int jr : {-2, -1, 1}) {
    const auto bundle = parabolic_rescale(u, {}, jr, 2.0);
    const auto r = check_schauder_instance(bundle.u, bundle.coeffs, ball.rescaled(jr), 0.5, SchauderBound::gradient);
    CHECK(r.c_unclamped == doctest::Approx(base.c_unclamped).epsilon(1e-10));
  }
}
