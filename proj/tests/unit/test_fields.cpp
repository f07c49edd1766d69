#include <doctest.h>

#include <cmath>
#include <numbers>

#include <burgers/random.hpp>
#include <burgers/snapshot.hpp>
#include <burgers/spectral.hpp>
#include <burgers/trig_field.hpp>

#include "support.hpp"

using namespace burgers;
using namespace burgers::testing;

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(GridSpec(4, 16, 1.0), InputError);
  CHECK_THROWS_AS(GridSpec(1, 12, 1.0), InputError);
  CHECK_THROWS_AS(GridSpec(1, 4, 1.0), InputError);
  CHECK_THROWS_AS(GridSpec(1, 16, 0.0), InputError);
  CHECK_THROWS_AS(GridSpec(1, 16, std::numeric_limits<double>::infinity()), InputError);
  const GridSpec g(2, 8, 4.0);
  CHECK(g.size() == 64);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.flat_index(g.multi_index(37)) == 37);
  CHECK(g.distance({0.1, 0.0, 0.0}, {3.9, 0.0, 0.0}) == doctest::Approx(0.2));
}

TEST_CASE("fields reject non-finite samples and size mismatches") {
  const auto g = line(8);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(7, 0.0)), InputError);
  std::vector<double> v(8, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(ScalarField(g, v), InputError);
  CHECK_THROWS_AS(Trajectory(g, 0.0, 0.0, {VectorField(g)}), InputError);
}

TEST_CASE("trig field with zero amplitude is zero") {
  const GridSpec g(2, 16, kTwoPi);
  const auto u = make_trig_field(g, 3, 4, 0.0);
  for (const auto& c : u.components()) CHECK(max_abs(c) == 0.0);
}

TEST_CASE("trig field is deterministic in its seed") {
  const GridSpec g(2, 16, kTwoPi);
  CHECK(bit_equal(make_trig_field(g, 11, 3, 1.0), make_trig_field(g, 11, 3, 1.0)));
  CHECK_FALSE(bit_equal(make_trig_field(g, 11, 3, 1.0), make_trig_field(g, 12, 3, 1.0)));
}

TEST_CASE("trig field sup norm is below its coefficient sum") {
  const auto g = line(64);
  const auto polys = make_trig_polynomials(g, 7, 4, 1.0, 1);
  double sum = 0.0;
  for (const auto& t : polys[0].terms) sum += std::abs(t.cos_coeff) + std::abs(t.sin_coeff);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const auto u = make_trig_field(g, 7, 4, 1.0);
  CHECK(max_abs(u[0]) <= sum);
  for (std::size_t i = 0; i < g.size(); i += 5) {
    CHECK(u[0][i] == doctest::Approx(polys[0].value(g.node(i), 1)).epsilon(1e-12));
  }
}

TEST_CASE("trig field has no content above kmax") {
  const GridSpec g(2, 32, kTwoPi);
  const int kmax = 3;
  const auto u = make_trig_field(g, 5, kmax, 2.0);
  const auto& ops = spectral_ops(g);
  for (const auto& c : u.components()) {
    const auto coeffs = ops.forward(c.values());
    for (std::size_t k = 0; k < ops.modes(); ++k) {
      if (ops.max_index(k) > kmax) CHECK(std::abs(coeffs[k]) / static_cast<double>(g.size()) <= 1e-13 * 2.0);
    }
  }
}

TEST_CASE("trig field refuses modes the grid cannot hold") {
  CHECK_THROWS_AS(make_trig_field(line(16), 1, 8, 1.0), ResolutionError);
}

TEST_CASE("gradient of a constant vanishes") {
  const GridSpec g(3, 8, 2.0);
  const auto grad = gradient(ScalarField::constant(g, 4.5));
  for (const auto& c : grad.components()) CHECK(max_abs(c) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gradient and laplacian of a sine mode") {
  const double L = 3.0;
  const auto g = line(32, L);
  const double k = 2.0 * std::numbers::pi / L;
  const auto f = sine(g);
  const auto expected = ScalarField::from_function(g, [&](const Point& x) { return k * std::cos(k * x[0]); });
  CHECK(max_abs_diff(gradient(f)[0], expected) <= 1e-12);
  CHECK(max_abs_diff(laplacian(f), f * (-k * k)) <= 1e-11);
  CHECK(max_abs(laplacian(ScalarField::constant(g, 2.0))) <= 1e-14);
}

TEST_CASE("spectral gradient agrees with sixth-order differences") {
  const auto g = line(256);
  const auto polys = make_trig_polynomials(g, 21, 6, 1.0, 1);
  const auto f = polys[0].sample(g);
  const auto df = gradient(f)[0];
  // Truncation error of the stencil is h^6 / 140 |f^(7)|.
  double seventh = 0.0;
  for (const auto& t : polys[0].terms) {
    const double k = std::abs(t.mode[0]) * g.base_wavenumber();
    seventh += (std::abs(t.cos_coeff) + std::abs(t.sin_coeff)) * std::pow(k, 7);
  }
  const double h = g.spacing();
  const double tol = 1.01 * std::pow(h, 6) / 140.0 * seventh + 1e-12;
  const std::size_t n = g.size();
  auto at = [&](std::size_t i, int s) { return f[(i + n + static_cast<std::size_t>(s + 8) - 8) % n]; };
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fd = (45.0 * (at(i, 1) - at(i, -1)) - 9.0 * (at(i, 2) - at(i, -2)) + (at(i, 3) - at(i, -3))) /
                      (60.0 * h);
    worst = std::max(worst, std::abs(fd - df[i]));
  }
  CHECK(worst <= tol);
}

TEST_CASE("laplacian equals divergence of gradient") {
  const GridSpec g(2, 32, kTwoPi);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = make_trig_scalar(g, seed, 8, 1.0);
    const auto lap = laplacian(f);
    const double scale = std::max(1.0, max_abs(lap));
    CHECK(max_abs_diff(lap, divergence(gradient(f))) <= 1e-12 * scale);
  }
}

TEST_CASE("derivatives are linear and commute with cyclic shifts") {
  const GridSpec g(1, 64, kTwoPi);
  const auto f = make_trig_scalar(g, 2, 5, 1.0);
  const auto h = make_trig_scalar(g, 3, 5, 1.0);
  const auto lhs = gradient(f * 2.0 + h * -0.5)[0];
  const auto rhs = gradient(f)[0] * 2.0 + gradient(h)[0] * -0.5;
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(1.0, max_abs(rhs)));

  std::vector<double> shifted(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) shifted[(i + 1) % g.size()] = f[i];
  const auto df = gradient(f)[0];
  const auto ds = gradient(ScalarField(g, shifted))[0];
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ds[(i + 1) % g.size()] == doctest::Approx(df[i]).epsilon(1e-12));
}

TEST_CASE("evaluate_at interpolates") {
  const auto g = line(32);
  const auto f = make_trig_scalar(g, 4, 6, 1.0);
  for (std::size_t i = 0; i < g.size(); i += 3) CHECK(evaluate_at(f, g.node(i)) == doctest::Approx(f[i]).epsilon(1e-13));
  CHECK(evaluate_at(ScalarField::constant(g, -1.25), {1.2345, 0.0, 0.0}) == doctest::Approx(-1.25).epsilon(1e-14));
  CHECK(std::abs(evaluate_at(sine(g), {kTwoPi / 8.0, 0.0, 0.0}) - std::sin(std::numbers::pi / 4.0)) <= 1e-12);
}

TEST_CASE("upsampling preserves band-limited fields") {
  const GridSpec g(2, 16, kTwoPi), fine(2, 64, kTwoPi);
  const auto f = make_trig_scalar(g, 9, 4, 1.0);
  const auto up = upsample(f, fine);
  for (std::size_t i = 0; i < fine.size(); i += 37) {
    CHECK(up[i] == doctest::Approx(evaluate_at(f, fine.node(i))).epsilon(1e-12));
  }
}

TEST_CASE("dealias removes the top third") {
  const auto g = line(64);
  const auto f = sine(g, 30) + sine(g, 2);
  CHECK(high_mode_energy_fraction(f) > 0.4);
  CHECK(high_mode_energy_fraction(dealias(f)) <= 1e-20);
  CHECK(max_abs_diff(dealias(f), sine(g, 2)) <= 1e-13);
}

TEST_CASE("snapshot round trip is bit exact") {
  const GridSpec g(2, 8, 1.5);
  const auto u = make_trig_field(g, 1, 2, 3.0);
  const auto bytes = encode_snapshot(u);
  REQUIRE(bytes.size() == 4 + 1 + 4 + 4 + 8 + 4 + 2 * 64 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "BFLD");
  CHECK(bytes[4] == kSnapshotVersion);
  const auto back = decode_snapshot(bytes);
  CHECK(back.grid() == g);
  CHECK(bit_equal(back, u));
  auto broken = bytes;
  broken[0] = 'X';
  CHECK_THROWS_AS(decode_snapshot(broken), InputError);
  broken = bytes;
  broken.pop_back();
  CHECK_THROWS_AS(decode_snapshot(broken), InputError);
}

TEST_CASE("sampled series look up exact frames") {
  const auto g = line(8);
  const auto s = TimeSeries<double>::sampled(0.5, 0.25, {1.0, 2.0, 3.0});
  CHECK(s.at(0.75) == 2.0);
  CHECK_THROWS_AS(s.at(0.6), InputError);
  CHECK_THROWS_AS(s.at(2.0), InputError);
  const Trajectory traj(g, 0.0, 0.1, {VectorField(g), VectorField(g)});
  CHECK(traj.frame_at(0.1) == 1);
  CHECK_THROWS_AS(traj.frame_at(0.05), InputError);
}

TEST_CASE("seeded generator is reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = c.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}
