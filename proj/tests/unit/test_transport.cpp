#include <doctest.h>

#include <cmath>

#include <burgers/heat.hpp>
#include <burgers/norms.hpp>
#include <burgers/random.hpp>
#include <burgers/transport.hpp>
#include <burgers/trig_field.hpp>

#include "support.hpp"

using namespace burgers;
using namespace burgers::testing;

namespace {

double shifted_sine_error(double c0, double dt) {
  const auto g = line(64);
  TransportProblem p(as_vector(sine(g)), 1.0, dt);
  p.drift = TimeSeries<VectorField>::constant(VectorField::constant(g, std::vector<double>{c0}));
  const auto traj = solve_transport(p);
  const auto exact = ScalarField::from_function(g, [&](const Point& x) { return std::exp(-1.0) * std::sin(x[0] - c0); });
  return max_abs_diff(traj[traj.size() - 1][0], exact);
}

TransportProblem random_problem(const GridSpec& g, std::uint64_t seed, double horizon, double dt, bool matrix) {
  Rng rng(seed);
  TransportProblem p(make_trig_field(g, seed, 3, rng.uniform(0.2, 1.5)), horizon, dt);
  p.drift = TimeSeries<VectorField>::constant(make_trig_field(g, seed + 1000, 2, rng.uniform(0.0, 2.0)));
  p.source = TimeSeries<VectorField>::constant(make_trig_field(g, seed + 2000, 2, rng.uniform(0.0, 1.0)));
  if (matrix) {
    const int d = g.dimension();
    std::vector<double> m(static_cast<std::size_t>(d * d));
    for (double& x : m) x = rng.uniform(-1.0, 1.0);
    p.zeroth = TimeSeries<MatrixField>::constant(MatrixField::uniform(g, m));
  }
  return p;
}

}  // namespace

TEST_CASE("pure heat flow of a sine mode") {
  const auto g = line(64);
  TransportProblem p(as_vector(sine(g)), 1.0, 1e-3);
  const auto traj = solve_transport(p);
  REQUIRE(traj.size() == 1001);
  CHECK(max_abs_diff(traj[1000][0], sine(g) * std::exp(-1.0)) <= 1e-8);
}

TEST_CASE("constant drift shifts the heat eigenfunction at second order") {
  const double e1 = shifted_sine_error(0.7, 2e-2);
  const double e2 = shifted_sine_error(0.7, 1e-2);
  CHECK(e1 <= 1e-3);
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
}

TEST_CASE("constants are transported to themselves") {
  const GridSpec g(2, 16, kTwoPi);
  TransportProblem p(VectorField::constant(g, std::vector<double>{1.5, -0.25}), 0.5, 1e-2);
  p.drift = TimeSeries<VectorField>::constant(make_trig_field(g, 5, 3, 2.0));
  const auto traj = solve_transport(p);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(max_abs_diff(traj[k], p.u0) <= 1e-12);
  }
  for (double s : max_principle_slack(traj, p)) CHECK(std::abs(s) <= 1e-12);
}

TEST_CASE("heat flow slack is nonnegative and nondecreasing") {
  const auto g = line(64);
  TransportProblem p(make_trig_field(g, 3, 5, 1.0), 0.5, 1e-2);
  const auto traj = solve_transport(p);
  const auto slack = max_principle_slack(traj, p);
  const double tol = transport_tolerance(p);
  for (std::size_t k = 0; k < slack.size(); ++k) {
    CHECK(slack[k] >= -tol);
    if (k > 0) CHECK(slack[k] >= slack[k - 1] - 1e-13);
  }
}

TEST_CASE("maximum principle holds over random problems") {
  int count = 0;
  for (int d : {1, 2}) {
    const GridSpec g(d, d == 1 ? 32 : 16, kTwoPi);
    const int problems = d == 1 ? 70 : 30;
    for (int i = 0; i < problems; ++i) {
      const auto p = random_problem(g, 100 + static_cast<std::uint64_t>(i), 0.2, 2e-3, i % 2 == 1);
      const auto traj = solve_transport(p);
      const double tol = transport_tolerance(p);
      for (double s : max_principle_slack(traj, p)) CHECK(s >= -tol);
      ++count;
    }
  }
  CHECK(count == 100);
}

TEST_CASE("solution is linear in datum and source") {
  const GridSpec g(1, 32, kTwoPi);
  auto p1 = random_problem(g, 7, 0.2, 1e-2, true);
  auto p2 = random_problem(g, 8, 0.2, 1e-2, true);
  p2.drift = p1.drift;
  p2.zeroth = p1.zeroth;
  TransportProblem mix(p1.u0 * 2.0 + p2.u0 * -3.0, 0.2, 1e-2);
  mix.drift = p1.drift;
  mix.zeroth = p1.zeroth;
  mix.source = TimeSeries<VectorField>::constant(p1.source->at(0.0) * 2.0 + p2.source->at(0.0) * -3.0);
  const auto a = solve_transport(p1), b = solve_transport(p2), c = solve_transport(mix);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(max_abs_diff(c[k], a[k] * 2.0 + b[k] * -3.0) <= 1e-10);
}

TEST_CASE("without drift the solve reduces to the duhamel formula") {
  const GridSpec g(1, 32, kTwoPi);
  const auto u0 = make_trig_field(g, 2, 4, 1.0);
  const auto f = make_trig_field(g, 3, 3, 1.0);
  double prev = 0.0;
  for (double dt : {2e-2, 1e-2}) {
    TransportProblem p(u0, 0.4, dt);
    p.source = TimeSeries<VectorField>::constant(f);
    const auto diff = max_abs_diff(solve_transport(p), duhamel_forced_heat(u0, Forcing::steady(f), 0.4, dt));
    CHECK(diff <= 10.0 * dt * dt);
    if (prev > 0.0) CHECK(diff < prev);
    prev = diff;
  }
}

TEST_CASE("random problem converges to a fine reference at second order") {
  const GridSpec g(1, 32, kTwoPi);
  auto solve = [&](double dt) {
    auto p = random_problem(g, 41, 0.4, dt, true);
    return solve_transport(p);
  };
  const auto ref = solve(1.25e-3);
  const auto coarse = solve(1e-2), half = solve(5e-3);
  const double e1 = max_abs_diff(coarse[coarse.size() - 1], ref[ref.size() - 1]);
  const double e2 = max_abs_diff(half[half.size() - 1], ref[ref.size() - 1]);
  const double model = max_abs_diff(coarse[coarse.size() - 1], half[half.size() - 1]) * 4.0 / 3.0;
  CHECK(e1 <= 64.0 * model);
  CHECK(e1 / e2 >= 3.4);
  CHECK(e1 / e2 <= 4.6);
}

TEST_CASE("drift increment matches the difference of two solves") {
  const GridSpec g(1, 32, kTwoPi);
  auto p = random_problem(g, 9, 0.2, 1e-2, true);
  const auto base = solve_transport(p);
  const auto delta = make_trig_field(g, 77, 2, 0.3);
  auto q = p;
  q.drift = TimeSeries<VectorField>::constant(p.drift->at(0.0) + delta);
  const auto inc = solve_drift_increment(p, base, TimeSeries<VectorField>::constant(delta));
  CHECK(max_abs_diff(inc, difference(solve_transport(q), base)) <= 1e-12);
}

TEST_CASE("gates reject blocked and divergent solves") {
  const auto g = line(64);
  TransportProblem blocked(as_vector(sine(g, 30)), 0.1, 1e-2);
  CHECK_THROWS_AS(solve_transport(blocked), ResolutionError);

  TransportProblem wild(as_vector(sine(g)), 20.0, 0.1);
  wild.drift = TimeSeries<VectorField>::constant(VectorField::constant(g, std::vector<double>{1e3}));
  CHECK_THROWS_AS(solve_transport(wild), DivergenceError);
}

TEST_CASE("cumulative trapezoid integrates linear data exactly") {
  const auto c = cumulative_trapezoid({0.0, 1.0, 2.0, 3.0}, 0.5);
  REQUIRE(c.size() == 4);
  CHECK(c[3] == doctest::Approx(2.25));
}

TEST_CASE("tolerance follows the documented scale") {
  const auto g = line(16);
  TransportProblem p(as_vector(sine(g, 1, 3.0)), 1.0, 1e-2);
  CHECK(transport_tolerance(p) == doctest::Approx(10.0 * 1e-4 * 3.0 + 1e-10));
}
