#include "burgers/trig_field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "burgers/error.hpp"
#include "burgers/random.hpp"

namespace burgers {

double TrigPolynomial::value(const Point& x, int dimension) const {
  const double k0 = 2.0 * std::numbers::pi / length;
  double s = 0.0;
  for (const auto& t : terms) {
    double phase = 0.0;
    for (int a = 0; a < dimension; ++a) phase += k0 * t.mode[a] * x[a];
    s += t.cos_coeff * std::cos(phase) + t.sin_coeff * std::sin(phase);
  }
  return s;
}

double TrigPolynomial::coefficient_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.cos_coeff) + std::abs(t.sin_coeff);
  return s;
}

ScalarField TrigPolynomial::sample(const GridSpec& grid) const {
  return ScalarField::from_function(grid, [&](const Point& x) { return value(x, grid.dimension()); });
}

namespace {

// Half lattice: the first nonzero entry of m is positive (plus m = 0).
bool in_half_lattice(const std::array<int, 3>& m, int d) {
  for (int a = 0; a < d; ++a) {
    if (m[a] != 0) return m[a] > 0;
  }
  return true;
}

void check_args(const GridSpec& grid, int kmax, double amplitude) {
  if (kmax < 0) throw InputError("kmax must be >= 0");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InputError("amplitude must be finite and >= 0");
  if (kmax >= grid.points() / 2) {
    throw ResolutionError("kmax " + std::to_string(kmax) + " aliases on a grid with n = " +
                          std::to_string(grid.points()));
  }
}

}  // namespace

std::vector<TrigPolynomial> make_trig_polynomials(const GridSpec& grid, std::uint64_t seed, int kmax,
                                                  double amplitude, int components) {
  check_args(grid, kmax, amplitude);
  const int d = grid.dimension();
  Rng rng(seed);
  std::vector<TrigPolynomial> out;
  for (int c = 0; c < components; ++c) {
    TrigPolynomial p;
    p.length = grid.length();
    std::array<int, 3> m{0, 0, 0};
    const int lo = -kmax;
    const int side = 2 * kmax + 1;
    int total = 1;
    for (int a = 0; a < d; ++a) total *= side;
    for (int flat = 0; flat < total; ++flat) {
      int rest = flat;
      for (int a = d - 1; a >= 0; --a) {
        m[a] = lo + rest % side;
        rest /= side;
      }
      if (!in_half_lattice(m, d)) continue;
      double m2 = 0.0;
      for (int a = 0; a < d; ++a) m2 += m[a] * m[a];
      const double decay = 1.0 / (1.0 + m2);
      TrigPolynomial::Term t;
      t.mode = m;
      t.cos_coeff = decay * rng.uniform(-1.0, 1.0);
      t.sin_coeff = (m2 == 0.0) ? 0.0 : decay * rng.uniform(-1.0, 1.0);
      p.terms.push_back(t);
    }
    const double sum = p.coefficient_sum();
    const double scale = sum > 0.0 ? amplitude / sum : 0.0;
    for (auto& t : p.terms) {
      t.cos_coeff *= scale;
      t.sin_coeff *= scale;
    }
    out.push_back(std::move(p));
  }
  return out;
}

VectorField make_trig_field(const GridSpec& grid, std::uint64_t seed, int kmax, double amplitude) {
  std::vector<ScalarField> comps;
  for (const auto& p : make_trig_polynomials(grid, seed, kmax, amplitude, grid.dimension())) {
    comps.push_back(p.sample(grid));
  }
  return VectorField(std::move(comps));
}

ScalarField make_trig_scalar(const GridSpec& grid, std::uint64_t seed, int kmax, double amplitude) {
  return make_trig_polynomials(grid, seed, kmax, amplitude, 1).front().sample(grid);
}

int lacunary_octaves(const GridSpec& grid) {
  int j = 0;
  while ((1 << (j + 1)) < grid.points() / 2) ++j;
  return j + 1;
}

ScalarField lacunary_field(const GridSpec& grid, double alpha, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("lacunary exponent must lie in (0,1)");
  Rng rng(seed);
  const int octaves = lacunary_octaves(grid);
  std::vector<double> theta(static_cast<std::size_t>(octaves));
  for (auto& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double k0 = grid.base_wavenumber();
  return ScalarField::from_function(grid, [&](const Point& x) {
    double s = 0.0;
    for (int j = 0; j < octaves; ++j) {
      const double f = std::ldexp(1.0, j);
      s += std::pow(f, -alpha) * std::cos(f * k0 * x[0] + theta[static_cast<std::size_t>(j)]);
    }
    return s;
  });
}

}  // namespace burgers
