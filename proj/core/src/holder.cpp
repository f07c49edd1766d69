#include "burgers/holder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "burgers/error.hpp"
#include "burgers/random.hpp"

namespace burgers {

SampleSet::SampleSet(double length, int dimension, int components)
    : length_(length), dimension_(dimension), components_(components) {
  if (!(length > 0.0) || dimension < 1 || dimension > 3 || components < 1) {
    throw InputError("invalid sample set shape");
  }
}

void SampleSet::add(double t, const Point& x, std::span<const double> value, const std::array<int, 4>& lattice) {
  if (static_cast<int>(value.size()) != components_) throw InputError("sample value has wrong size");
  for (double v : value) {
    if (!std::isfinite(v)) throw InputError("sample value is not finite");
  }
  times_.push_back(t);
  positions_.push_back(x);
  values_.insert(values_.end(), value.begin(), value.end());
  lattice_.push_back(lattice);
}

void SampleSet::append(std::span<const ScalarField> comps, double t, int frame) {
  if (comps.empty() || static_cast<int>(comps.size()) != components_) throw InputError("component count mismatch");
  const auto& grid = comps.front().grid();
  std::vector<double> v(comps.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t c = 0; c < comps.size(); ++c) v[c] = comps[c][i];
    const auto idx = grid.multi_index(i);
    add(t, grid.node(i), v, {frame, idx[0], idx[1], idx[2]});
  }
}

SampleSet SampleSet::from_components(std::span<const ScalarField> comps, double t, int frame) {
  if (comps.empty()) throw InputError("no components");
  const auto& grid = comps.front().grid();
  SampleSet s(grid.length(), grid.dimension(), static_cast<int>(comps.size()));
  s.append(comps, t, frame);
  return s;
}

SampleSet SampleSet::from_field(const ScalarField& f, double t, int frame) {
  return from_components(std::span<const ScalarField>(&f, 1), t, frame);
}

SampleSet SampleSet::from_field(const VectorField& u, double t, int frame) {
  return from_components(u.components(), t, frame);
}

double SampleSet::distance(std::size_t i, std::size_t j) const noexcept {
  double s = 0.0;
  for (int a = 0; a < dimension_; ++a) {
    const double g = periodic_gap(positions_[i][a], positions_[j][a], length_);
    s += g * g;
  }
  return std::sqrt(s);
}

double SampleSet::value_gap(std::size_t i, std::size_t j) const noexcept {
  const auto c = static_cast<std::size_t>(components_);
  double s = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    const double d = values_[i * c + k] - values_[j * c + k];
    s += d * d;
  }
  return std::sqrt(s);
}

double SampleSet::sup() const noexcept {
  const auto c = static_cast<std::size_t>(components_);
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < c; ++k) s += values_[i * c + k] * values_[i * c + k];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

std::uint64_t pair_count(std::size_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return m < 2 ? 0 : m * (m - 1) / 2;
}

namespace {

struct PairRatio {
  const SampleSet& s;
  double alpha;
  HolderMode mode;

  // Returns a negative value for pairs that do not count.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    const double dt = std::abs(s.time(i) - s.time(j));
    if (mode == HolderMode::isotropic && dt != 0.0) return -1.0;
    const double dx = s.distance(i, j);
    double denom = dx > 0.0 ? std::pow(dx, alpha) : 0.0;
    if (mode == HolderMode::parabolic && dt > 0.0) denom += std::pow(dt, 0.5 * alpha);
    if (!(denom > 0.0)) return -1.0;
    return s.value_gap(i, j) / denom;
  }
};

struct LatticeHash {
  std::size_t operator()(const std::array<int, 4>& a) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : a) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

HolderEstimate holder_seminorm(const SampleSet& samples, double alpha, HolderMode mode, const HolderOptions& opt) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("Holder exponent must lie in (0, 1]");
  if (samples.size() < 2) throw InputError("Holder seminorm needs at least two samples");
  HolderEstimate est;
  est.alpha = alpha;
  est.mode = mode;
  est.seed = opt.seed;
  const PairRatio ratio{samples, alpha, mode};
  const std::size_t n = samples.size();

  if (pair_count(n) <= opt.exhaustive_limit) {
    double best = 0.0;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double r = ratio(i, j);
        if (r < 0.0) continue;
        ++used;
        best = std::max(best, r);
      }
    }
    est.value = best;
    est.pairs = used;
    est.exhaustive = true;
    return est;
  }

  std::unordered_map<std::array<int, 4>, std::size_t, LatticeHash> where;
  where.reserve(n * 2);
  std::array<int, 4> lo{0, 0, 0, 0};
  std::array<int, 4> hi{0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = samples.lattice(i);
    where.emplace(l, i);
    for (int k = 0; k < 4; ++k) {
      lo[k] = i == 0 ? l[k] : std::min(lo[k], l[k]);
      hi[k] = i == 0 ? l[k] : std::max(hi[k], l[k]);
    }
  }
  int span = 1;
  for (int k = 0; k < 4; ++k) span = std::max(span, hi[k] - lo[k] + 1);

  Rng rng(opt.seed);
  double best = 0.0;
  std::uint64_t used = 0;
  auto consider = [&](std::size_t i, std::size_t j) {
    const double r = ratio(i, j);
    if (r < 0.0) return;
    ++used;
    best = std::max(best, r);
  };

  const int dims = samples.dimension();
  for (int s = 0; (1 << s) <= span; ++s) {
    const int reach = 1 << s;
    for (std::uint64_t p = 0; p < opt.pairs_per_stratum; ++p) {
      const std::size_t i = static_cast<std::size_t>(rng.index(n));
      auto target = samples.lattice(i);
      bool moved = false;
      for (int k = 0; k < 4; ++k) {
        if (k > dims) break;
        if (k == 0 && mode == HolderMode::isotropic) continue;
        const int off = static_cast<int>(rng.index(static_cast<std::uint64_t>(2 * reach + 1))) - reach;
        if (off == 0) continue;
        moved = true;
        target[k] += off;
        if (k > 0 && opt.lattice_period > 0) target[k] = ((target[k] % opt.lattice_period) + opt.lattice_period) % opt.lattice_period;
      }
      if (!moved) continue;
      const auto it = where.find(target);
      if (it != where.end() && it->second != i) consider(i, it->second);
    }
  }
  for (std::uint64_t p = 0; p < opt.uniform_pairs; ++p) {
    const auto i = static_cast<std::size_t>(rng.index(n));
    const auto j = static_cast<std::size_t>(rng.index(n));
    if (i != j) consider(i, j);
  }
  est.value = best;
  est.pairs = used;
  est.exhaustive = false;
  return est;
}

HolderEstimate holder_seminorm(const ScalarField& f, double alpha, const HolderOptions& options) {
  HolderOptions o = options;
  if (o.lattice_period == 0) o.lattice_period = f.grid().points();
  return holder_seminorm(SampleSet::from_field(f), alpha, HolderMode::isotropic, o);
}

HolderEstimate holder_seminorm(const VectorField& u, double alpha, const HolderOptions& options) {
  HolderOptions o = options;
  if (o.lattice_period == 0) o.lattice_period = u.grid().points();
  return holder_seminorm(SampleSet::from_field(u), alpha, HolderMode::isotropic, o);
}

}  // namespace burgers
