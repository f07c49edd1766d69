#include <doctest.h>

#include <cmath>

#include <burgers/heat.hpp>
#include <burgers/kconstants.hpp>
#include <burgers/norms.hpp>
#include <burgers/spectral.hpp>
#include <burgers/trig_field.hpp>

#include "support.hpp"

using namespace burgers;
using namespace burgers::testing;

namespace {

// Closed form of the continuum seminorm, frozen from the tan s = 2 s root.
constexpr double kSineHalfSeminorm = 1.2038366614925037;

}  // namespace

TEST_CASE("independent seminorm oracle matches the frozen value") {
  CHECK(sine_half_seminorm() == doctest::Approx(kSineHalfSeminorm).epsilon(1e-13));
}

TEST_CASE("sup norms of simple fields") {
  const auto g = line(64);
  CHECK(sup_norm(ScalarField(g)) == 0.0);
  CHECK(sup_norm(sine(g)) == doctest::Approx(1.0).epsilon(1e-15));
  const GridSpec g2(2, 8, kTwoPi);
  const std::vector<double> a{3.0, 4.0};
  CHECK(sup_norm(VectorField::constant(g2, a)) == doctest::Approx(5.0));
}

TEST_CASE("sup norm agrees with eight-fold oversampling") {
  const auto g = line(512);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = make_trig_scalar(g, seed, 3, 1.0);
    const double coarse = sup_norm(f);
    const double fine = oversampled_sup_norm(f, 8);
    CHECK(fine >= coarse - 1e-15);
    CHECK((fine - coarse) / fine <= 1e-3);
  }
}

TEST_CASE("derivative sup norms use Frobenius magnitudes") {
  const GridSpec g(2, 16, kTwoPi);
  const auto f = ScalarField::from_function(g, [](const Point& x) { return std::sin(x[0]) + std::sin(x[1]); });
  // |grad f| = sqrt(cos^2 x + cos^2 y), max sqrt(2) at the origin.
  CHECK(sup_gradient_norm(f) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sup_hessian_norm(f) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const auto comps = hessian_components(VectorField(std::vector<ScalarField>{f, f}));
  CHECK(comps.size() == 6);
}

TEST_CASE("holder seminorm of a constant is zero") {
  const GridSpec g(2, 16, kTwoPi);
  CHECK(holder_seminorm(ScalarField::constant(g, 2.0), 0.5).value == 0.0);
  CHECK_THROWS_AS(holder_seminorm(sine(line(16)), 1.5), InputError);
  CHECK_THROWS_AS(holder_seminorm(sine(line(16)), 0.0), InputError);
}

TEST_CASE("holder seminorm of sine refines to the continuum value") {
  const auto coarse = holder_seminorm(sine(line(256)), 0.5);
  const auto fine = holder_seminorm(sine(line(4096)), 0.5);
  CHECK(coarse.exhaustive);
  CHECK(fine.exhaustive);
  CHECK(std::abs(coarse.value - fine.value) / fine.value <= 0.02);
  CHECK(std::abs(fine.value - kSineHalfSeminorm) / kSineHalfSeminorm <= 0.02);
  CHECK(fine.value <= kSineHalfSeminorm + 1e-12);
  CHECK(coarse.value == doctest::Approx(dense_pair_seminorm({sine(line(256))}, 0.5)).epsilon(1e-13));
}

TEST_CASE("sampled holder estimates are lower bounds of the exhaustive value") {
  const GridSpec g(2, 32, kTwoPi);
  const auto f = make_trig_scalar(g, 5, 4, 1.0);
  const auto exact = holder_seminorm(f, 0.5);
  HolderOptions opts;
  opts.exhaustive_limit = 1000;
  opts.pairs_per_stratum = 2000;
  opts.uniform_pairs = 5000;
  opts.lattice_period = g.points();
  const auto sampled = holder_seminorm(f, 0.5, opts);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.value <= exact.value + 1e-15);
  CHECK(sampled.value >= 0.9 * exact.value);
}

TEST_CASE("time-constant trajectory has parabolic seminorm equal to the isotropic one") {
  const auto g = line(64);
  const auto f = make_trig_scalar(g, 2, 4, 1.0);
  SampleSet s(g.length(), 1, 1);
  const std::vector<ScalarField> comps{f};
  for (int k = 0; k < 5; ++k) s.append(comps, 0.1 * k, k);
  const auto par = holder_seminorm(s, 0.5, HolderMode::parabolic);
  CHECK(par.value == doctest::Approx(holder_seminorm(f, 0.5).value).epsilon(1e-14));
}

TEST_CASE("lipschitz seminorm approaches the gradient from below") {
  const auto g = line(512);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = make_trig_scalar(g, seed, 8, 1.0);
    const double h = holder_seminorm(f, 1.0).value;
    // Node pairs see the gradient between nodes, so compare with the oversampled sup.
    const double grad = oversampled_sup_norm(gradient(f)[0], 8);
    CHECK(h <= grad * (1.0 + 1e-9));
    CHECK(h >= 0.98 * grad);
  }
}

TEST_CASE("K constants of trivial data") {
  const GridSpec g(2, 16, kTwoPi);
  const auto zero = compute_k_constants(VectorField(g), Forcing::zero(g), 1.0, 1.0, 0.5);
  CHECK(zero.K0 == 0.0);
  CHECK(zero.K1 == 0.0);
  CHECK(zero.K2 == 0.0);
  CHECK(zero.K2alpha == 0.0);
  CHECK(zero.K == 0.0);
  const std::vector<double> a{0.6, -0.8};
  const auto k = compute_k_constants(VectorField::constant(g, a), Forcing::zero(g), 3.0, 2.0, 0.5);
  CHECK(k.K0 == doctest::Approx(1.0));
  CHECK(k.K1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(k.K2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(k.K2alpha == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(k.K == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("K constants of a sine datum") {
  const auto g = line(64);
  const auto u0 = as_vector(sine(g));
  const auto k = compute_k_constants(u0, Forcing::zero(g), 1.0, 1.0, 0.5);
  CHECK(k.K0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.K1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k.K2 == doctest::Approx(2.0).epsilon(1e-12));
  // Hessian of sin is -sin: the dense-pair oracle on the same nodes.
  const double dense = dense_pair_seminorm({sine(g) * -1.0}, 0.5);
  CHECK(k.K2alpha == doctest::Approx(dense).epsilon(1e-10));
  CHECK(std::abs(k.K2alpha - kSineHalfSeminorm) / kSineHalfSeminorm <= 0.01);
  const double assembled = 1.0 + 1.0 + std::pow(2.0, 2.0 / 3.0) + std::pow(dense, 2.0 / 3.5);
  CHECK(k.K == doctest::Approx(assembled).epsilon(1e-10));
  CHECK(assemble_k(1.0, 0.5, 1.0, 1.0, 1.0, 2.0, dense) == doctest::Approx(assembled).epsilon(1e-14));
  const auto j = to_json(k);
  for (const char* key : {"t", "c", "alpha", "nu", "K0", "K1", "K2", "K2alpha", "K"}) CHECK(j.contains(key));
}

TEST_CASE("K constants without forcing do not depend on time") {
  const GridSpec g(2, 16, kTwoPi);
  const auto u0 = make_trig_field(g, 4, 3, 1.0);
  const KCalculator calc(u0, Forcing::zero(g), 1.5, 0.5);
  const auto a = calc.at(0.1), b = calc.at(7.0);
  CHECK(a.K0 == b.K0);
  CHECK(a.K1 == b.K1);
  CHECK(a.K2 == b.K2);
  CHECK(a.K2alpha == b.K2alpha);
  CHECK(a.K == b.K);
  CHECK(calc.time_independent());
}

TEST_CASE("K constants grow with time under forcing") {
  const auto g = line(32);
  const auto u0 = make_trig_field(g, 4, 3, 1.0);
  for (const auto& force : {Forcing::steady(make_trig_field(g, 5, 2, 0.5)),
                            Forcing::modulated(make_trig_field(g, 5, 2, 0.5), make_trig_field(g, 6, 2, 0.5), 3.0)}) {
    const KCalculator calc(u0, force, 1.0, 0.5);
    double prev = -1.0;
    for (double t : {0.0, 0.05, 0.1, 0.37, 0.8, 1.5}) {
      const auto k = calc.at(t);
      CHECK(k.K >= prev);
      prev = k.K;
    }
  }
  // Steady forcing: K0 = |u0| + t |g| exactly.
  const auto gv = make_trig_field(g, 5, 2, 0.5);
  const auto k = compute_k_constants(u0, Forcing::steady(gv), 0.3, 1.0, 0.5);
  CHECK(k.K0 == doctest::Approx(sup_norm(u0) + 0.3 * sup_norm(gv)).epsilon(1e-13));
}

TEST_CASE("K scales quadratically under the parabolic scaling") {
  // u -> 2 u(2 x) on a torus of half the length; g = 0 so time plays no role.
  const auto g = line(128);
  const auto half = line(128, kTwoPi / 2.0);
  const auto k1 = compute_k_constants(as_vector(sine(g)), Forcing::zero(g), 0.0, 1.0, 0.5);
  const auto k2 = compute_k_constants(as_vector(sine(half, 1, 2.0)), Forcing::zero(half), 0.0, 1.0, 0.5);
  CHECK(k2.K0 == doctest::Approx(2.0 * k1.K0).epsilon(1e-12));
  CHECK(k2.K1 == doctest::Approx(4.0 * k1.K1).epsilon(1e-12));
  CHECK(k2.K2 == doctest::Approx(8.0 * k1.K2).epsilon(1e-12));
  CHECK(k2.K2alpha == doctest::Approx(std::pow(2.0, 3.5) * k1.K2alpha).epsilon(1e-10));
  CHECK(k2.K == doctest::Approx(4.0 * k1.K).epsilon(1e-10));
}

TEST_CASE("interpolation of constants has zero gap") {
  const GridSpec g(2, 16, kTwoPi);
  const std::vector<double> a{1.0, 2.0};
  const auto gap = interpolation_gap_space(VectorField::constant(g, a), 0.5);
  CHECK(gap.lhs == 0.0);
  CHECK(gap.rhs == 0.0);
  CHECK(gap.gap == 0.0);
}

TEST_CASE("printed interpolation constant is exceeded by a sine mode") {
  const auto g = line(256);
  const auto printed = interpolation_gap_space(sine(g), 0.5, InterpolationConstant::printed);
  const auto sharp = interpolation_gap_space(sine(g), 0.5, InterpolationConstant::sharp);
  CHECK(printed.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(printed.lhs > 1.19);
  CHECK(printed.gap < 0.0);
  CHECK(sharp.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sharp.gap >= 0.0);
}

TEST_CASE("sharp interpolation constant holds on random fields") {
  for (int d : {1, 2}) {
    const GridSpec g(d, d == 1 ? 128 : 32, kTwoPi);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto u = make_trig_field(g, seed, 4, 1.0);
      const auto gap = interpolation_gap_space(u, 0.5, InterpolationConstant::sharp);
      CHECK(gap.gap >= -1e-10 * std::max(1.0, gap.rhs));
    }
  }
}

TEST_CASE("space-time interpolation holds on a heat trajectory") {
  const auto g = line(64);
  const auto u0 = make_trig_field(g, 3, 4, 1.0);
  std::vector<VectorField> frames;
  for (int k = 0; k <= 20; ++k) frames.push_back(heat_apply(u0, 0.01 * k));
  const Trajectory traj(g, 0.0, 0.01, frames);
  const auto gap = interpolation_gap_spacetime(traj, 0.5);
  CHECK(gap.lhs > 0.0);
  CHECK(gap.gap >= -1e-10 * std::max(1.0, gap.rhs));
}

TEST_CASE("time derivative is second order") {
  const auto g = line(16);
  auto err = [&](double dt) {
    std::vector<VectorField> frames;
    for (int k = 0; k * dt <= 0.5 + 1e-12; ++k) frames.push_back(as_vector(sine(g) * std::exp(-k * dt)));
    const Trajectory traj(g, 0.0, dt, frames);
    const auto dtu = time_derivative(traj);
    double e = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      e = std::max(e, max_abs_diff(dtu[k][0], sine(g) * -std::exp(-traj.time(k))));
    }
    return e;
  };
  const double ratio = err(0.02) / err(0.01);
  CHECK(ratio > 3.4);
  CHECK(ratio < 4.6);
}
