#include "burgers/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "burgers/error.hpp"
#include "burgers/io.hpp"
#include "burgers/norms.hpp"

namespace burgers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> BoundReport::slack() const {
  std::vector<double> out(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = rhs[i] - lhs[i];
  return out;
}

double BoundReport::min_slack() const {
  double out = kInf;
  for (double s : slack()) out = std::min(out, s);
  return out;
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"name", r.name},
          {"params", r.params},
          {"lhs", json_numbers(r.lhs)},
          {"rhs", json_numbers(r.rhs)},
          {"t", json_numbers(r.times)},
          {"tolerance", r.tolerance},
          {"c_star", json_number(r.c_star)},
          {"c_unclamped", json_number(r.c_unclamped)},
          {"verdict", r.pass ? "pass" : "fail"},
          {"worst_t", json_number(r.worst_t)},
          {"worst_ratio", json_number(r.worst_ratio)},
          {"extra", r.extra}};
}

std::string slack_csv(const BoundReport& r) {
  std::vector<std::vector<double>> rows;
  const auto s = r.slack();
  for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({r.times[i], s[i]});
  return to_csv({"t", "slack"}, rows);
}

void finalize(BoundReport& r, const std::vector<double>& base, const std::vector<double>& powers) {
  r.pass = true;
  r.worst_ratio = 0.0;
  r.worst_t = r.times.empty() ? 0.0 : r.times.front();
  r.c_unclamped = 0.0;
  bool fixed_fail = false;
  double fixed_ratio = 0.0;
  for (std::size_t i = 0; i < r.lhs.size(); ++i) {
    const double l = r.lhs[i];
    const double h = r.rhs[i];
    if (!(l - h <= r.tolerance)) r.pass = false;
    const double ratio = h > 0.0 ? l / h : (l > 0.0 ? kInf : 0.0);
    if (ratio > r.worst_ratio || std::isnan(ratio)) {
      r.worst_ratio = ratio;
      r.worst_t = r.times[i];
    }
    if (powers[i] == 0.0) {
      if (!(l - h <= r.tolerance)) fixed_fail = true;
      fixed_ratio = std::max(fixed_ratio, ratio);
      continue;
    }
    if (!(l > r.tolerance)) continue;
    const double c = base[i] > 0.0 ? std::pow(l / base[i], 1.0 / powers[i]) : kInf;
    r.c_unclamped = std::max(r.c_unclamped, c);
  }
  r.c_star = std::max(1.0, r.c_unclamped);
  if (fixed_fail) r.c_star = kInf;
  const bool all_fixed = std::all_of(powers.begin(), powers.end(), [](double p) { return p == 0.0; });
  if (all_fixed) r.c_unclamped = fixed_ratio;
}

void finalize(BoundReport& r, const std::vector<double>& base, double power) {
  finalize(r, base, std::vector<double>(r.lhs.size(), power));
}

namespace {

// K-constants on the time grid shared by the records.
std::vector<KConstants> k_series(const std::vector<double>& times, const KCalculator& k) {
  std::vector<KConstants> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(k.at(t));
  return out;
}

nlohmann::json base_params(const KCalculator& k) {
  return {{"c", k.c()}, {"alpha", k.alpha()}, {"nu", k.options().nu}};
}

}  // namespace

UniformReports check_uniform(const std::vector<IterationRecord>& records, const KCalculator& k) {
  UniformReports out;
  out.sup.name = "uniform_sup";
  out.grad.name = "uniform_grad";
  out.second.name = "uniform_second";
  out.holder.name = "uniform_holder";
  for (auto* r : {&out.sup, &out.grad, &out.second, &out.holder}) r->params = base_params(k);
  if (records.empty()) return out;

  const double c = k.c();
  const double c2 = c * c;
  const auto ks = k_series(records.front().times, k);
  const double horizon = records.front().times.back();
  out.sup.tolerance = 1e-6 * std::max(1.0, ks.front().K0);
  out.grad.tolerance = 1e-10;
  out.second.tolerance = 1e-10;
  out.holder.tolerance = 1e-10;
  std::vector<double> base_grad, base_second, base_holder;
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      const auto& kc = ks[i];
      const double kt = kc.K / c2;
      out.sup.times.push_back(rec.times[i]);
      out.sup.lhs.push_back(rec.sup_u[i]);
      out.sup.rhs.push_back(kc.K0);
      out.grad.times.push_back(rec.times[i]);
      out.grad.lhs.push_back(rec.sup_grad_u[i]);
      out.grad.rhs.push_back(kc.K);
      base_grad.push_back(kt);
      out.second.times.push_back(rec.times[i]);
      out.second.lhs.push_back(std::max(rec.sup_hess_u[i], rec.sup_dt_u[i]));
      out.second.rhs.push_back(std::pow(c * kc.K, 1.5));
      base_second.push_back(std::pow(kt, 1.5));
    }
    if (std::isfinite(rec.holder_hess_u) && std::isfinite(rec.holder_dt_u)) {
      const auto& kc = ks.back();
      const double p = 0.5 * (3.0 + k.alpha());
      out.holder.times.push_back(horizon);
      out.holder.lhs.push_back(std::max(rec.holder_hess_u, rec.holder_dt_u));
      out.holder.rhs.push_back(std::pow(c * kc.K, p));
      base_holder.push_back(std::pow(kc.K / c2, p));
    }
  }
  finalize(out.sup, out.sup.rhs, 0.0);
  finalize(out.grad, base_grad, 2.0);
  finalize(out.second, base_second, 4.5);
  finalize(out.holder, base_holder, 1.5 * (3.0 + k.alpha()));
  out.sup.extra["iterates"] = records.size();
  return out;
}

BoundReport check_heat_gradient(const IterationRecord& record, const KCalculator& k, double tolerance) {
  BoundReport r;
  r.name = "heat_gradient";
  r.params = base_params(k);
  r.params["m"] = record.m;
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    r.times.push_back(record.times[i]);
    r.lhs.push_back(record.sup_grad_u[i]);
    r.rhs.push_back(k.at(record.times[i]).K1);
  }
  finalize(r, r.rhs, 0.0);
  return r;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

ShortTimeReports check_short_time(const std::vector<IterationRecord>& records, const KCalculator& k, double beta) {
  if (!(beta > 0.0 && beta < 0.5)) throw InputError("beta must lie in (0, 1/2)");
  if (records.size() < 2) throw InputError("short-time checks need iterates m >= 1");
  const double c = k.c();
  const double c3 = c * c * c;
  const double horizon = records.front().times.back();
  const auto kt = k.at(horizon);
  const double ckt = c * kt.K;
  const double k_unit = ckt / c3;

  ShortTimeReports out;
  out.sup.name = "short_time_sup";
  out.grad.name = "short_time_grad";
  out.first.name = "short_time_first";
  for (auto* r : {&out.sup, &out.grad, &out.first}) {
    r->params = base_params(k);
    r->params["beta"] = beta;
    r->params["T"] = horizon;
    r->params["cK_T"] = ckt;
    r->tolerance = 1e-10;
  }
  out.first.tolerance = 1e-8;

  std::vector<double> base_sup, pow_sup, base_grad, pow_grad;
  bool any = false;
  for (std::size_t idx = 1; idx < records.size(); ++idx) {
    const auto& rec = records[idx];
    const double m = rec.m;
    const double edge = ckt > 0.0 ? std::min(horizon, m / ckt) : horizon;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      const double t = rec.times[i];
      if (!(t > 0.0) || t > edge * (1.0 + 1e-12)) continue;
      any = true;
      out.sup.times.push_back(t);
      out.sup.lhs.push_back(rec.sup_v[i]);
      out.sup.rhs.push_back(c * kt.K0 * std::pow(ckt * t / m, m));
      base_sup.push_back(kt.K0 * std::pow(k_unit * t / m, m));
      pow_sup.push_back(1.0 + 3.0 * m);
      out.grad.times.push_back(t);
      out.grad.lhs.push_back(rec.sup_grad_v[i]);
      out.grad.rhs.push_back(ckt * std::pow(ckt * t / m, beta * m));
      base_grad.push_back(k_unit * std::pow(k_unit * t / m, beta * m));
      pow_grad.push_back(3.0 + 3.0 * beta * m);
    }
  }
  if (!any) throw WindowError("no frame lies in the short-time window t <= m / cK(T) at the supplied c");
  finalize(out.sup, base_sup, pow_sup);
  finalize(out.grad, base_grad, pow_grad);

  const auto& r0 = records[0];
  const auto& r1 = records[1];
  double integral = 0.0;
  bool within_k0kt = true;
  for (std::size_t i = 0; i < r1.times.size(); ++i) {
    if (i > 0) {
      const double h = r0.times[i] - r0.times[i - 1];
      integral += 0.5 * h * (r0.sup_u[i - 1] * r0.sup_grad_u[i - 1] + r0.sup_u[i] * r0.sup_grad_u[i]);
    }
    out.first.times.push_back(r1.times[i]);
    out.first.lhs.push_back(r1.sup_v[i]);
    out.first.rhs.push_back(integral);
    const auto kc = k.at(r1.times[i]);
    if (integral > kc.K0 * kc.K * r1.times[i] * (1.0 + 1e-12) + 1e-14) within_k0kt = false;
  }
  finalize(out.first, out.first.rhs, 0.0);
  out.first.extra["integral_within_K0_K_t"] = within_k0kt;

  std::vector<double> x, ys, yg;
  for (const auto& rec : records) {
    if (rec.m < 2 || rec.m > 8) continue;
    const double vt = rec.sup_v.back();
    const double gt = rec.sup_grad_v.back();
    if (!(vt > 0.0) || !(gt > 0.0) || !(ckt > 0.0)) continue;
    x.push_back(rec.m * std::log(ckt * horizon / rec.m));
    ys.push_back(std::log(vt));
    yg.push_back(std::log(gt));
  }
  out.decay_sup = fit_slope(x, ys);
  out.decay_grad = fit_slope(x, yg);
  for (std::size_t idx = 1; idx < records.size(); ++idx) {
    const double prev = records[idx - 1].max_v();
    const double cur = records[idx].max_v();
    out.ratios.push_back(prev > 0.0 ? cur / prev : 0.0);
  }
  out.sup.extra["decay_exponent"] = json_number(out.decay_sup);
  out.grad.extra["decay_exponent"] = json_number(out.decay_grad);
  out.sup.extra["ratios"] = json_numbers(out.ratios);
  return out;
}

namespace {

VectorField series_or_zero(const std::optional<TimeSeries<VectorField>>& s, double t, const GridSpec& grid) {
  return s ? s->at(t) : VectorField(grid);
}

MatrixField matrix_or_zero(const std::optional<TimeSeries<MatrixField>>& s, double t, const GridSpec& grid) {
  return s ? s->at(t) : MatrixField(grid);
}

bool same_values(const VectorField& a, const VectorField& b) {
  if (!(a.grid() == b.grid()) || a.dimension() != b.dimension()) return false;
  for (int c = 0; c < a.dimension(); ++c) {
    if (!std::equal(a[c].values().begin(), a[c].values().end(), b[c].values().begin())) return false;
  }
  return true;
}

}  // namespace

GronwallCheck check_gronwall(const TransportProblem& p, const TransportProblem& pbar) {
  if (!same_values(p.u0, pbar.u0)) throw InputError("both problems need the same initial condition");
  if (p.horizon != pbar.horizon || p.dt != pbar.dt) throw InputError("both problems need the same time grid");
  const auto& grid = p.u0.grid();
  const auto phi = solve_transport(p);
  const auto phibar = solve_transport(pbar);
  const std::size_t n = phi.size();

  std::vector<double> integrand(n), cbar(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = phi.time(k);
    const double db = sup_norm(series_or_zero(pbar.drift, t, grid) - series_or_zero(p.drift, t, grid));
    const double dc = (matrix_or_zero(pbar.zeroth, t, grid) - matrix_or_zero(p.zeroth, t, grid)).sup_operator_norm();
    const double df = sup_norm(series_or_zero(pbar.source, t, grid) - series_or_zero(p.source, t, grid));
    integrand[k] = db * sup_gradient_norm(phi[k]) + dc * sup_norm(phi[k]) + df;
    cbar[k] = pbar.zeroth ? pbar.zeroth->at(t).sup_operator_norm() : 0.0;
  }
  GronwallCheck out;
  out.exponents = cumulative_trapezoid(cbar, p.dt);
  auto& r = out.report;
  r.name = "gronwall";
  r.params = {{"T", p.horizon}, {"dt", p.dt}};
  r.tolerance = std::max(transport_tolerance(p), transport_tolerance(pbar));
  const auto& big_i = out.exponents;
  for (std::size_t k = 0; k < n; ++k) {
    double rhs = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      rhs += 0.5 * p.dt *
             (std::exp(big_i[k] - big_i[j - 1]) * integrand[j - 1] + std::exp(big_i[k] - big_i[j]) * integrand[j]);
    }
    r.times.push_back(phi.time(k));
    r.lhs.push_back(sup_norm(phibar[k] - phi[k]));
    r.rhs.push_back(rhs);
  }
  finalize(r, r.rhs, 0.0);
  return out;
}

BoundReport check_series(const std::vector<std::pair<double, double>>& cases) {
  BoundReport r;
  r.name = "series_majorant";
  r.params["cases"] = cases.size();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [gamma, ckt] = cases[i];
    const auto s = series_majorant(static_cast<int>(std::floor(ckt)), gamma, ckt);
    r.times.push_back(static_cast<double>(i));
    r.lhs.push_back(s.empirical);
    r.rhs.push_back(s.bound);
  }
  finalize(r, r.rhs, 0.0);
  return r;
}

}  // namespace burgers
