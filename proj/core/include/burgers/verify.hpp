#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/kconstants.hpp"
#include "burgers/scheme.hpp"
#include "burgers/transport.hpp"

namespace burgers {

/// One inequality LHS <= RHS checked along a series of sample points.
struct BoundReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double tolerance = 0.0;
  /// Smallest c >= 1 making the bound hold; +inf when no c helps.
  double c_star = 1.0;
  /// Same without the clamp at 1 (0 when every LHS vanishes).
  double c_unclamped = 0.0;
  bool pass = true;
  double worst_t = 0.0;
  double worst_ratio = 0.0;
  nlohmann::json extra = nlohmann::json::object();

  std::vector<double> slack() const;
  double min_slack() const;
};

nlohmann::json to_json(const BoundReport& r);
/// Two columns t, slack.
std::string slack_csv(const BoundReport& r);

/// Fills verdict, worst point and fitted constant. At point i the RHS is
/// base[i] * c^powers[i] for the supplied c; power 0 means it does not involve c.
void finalize(BoundReport& r, const std::vector<double>& base, const std::vector<double>& powers);
void finalize(BoundReport& r, const std::vector<double>& base, double power);

struct UniformReports {
  BoundReport sup;
  BoundReport grad;
  BoundReport second;
  BoundReport holder;
  std::vector<const BoundReport*> all() const { return {&sup, &grad, &second, &holder}; }
};

/// Every iterate against K0(t), K(t), (cK(t))^(3/2), and the second-derivative
/// seminorms at T against (cK(T))^((3+alpha)/2).
UniformReports check_uniform(const std::vector<IterationRecord>& records, const KCalculator& k);

/// ||grad u^(0)_t|| <= K1(t).
BoundReport check_heat_gradient(const IterationRecord& record, const KCalculator& k, double tolerance = 1e-8);

struct ShortTimeReports {
  BoundReport sup;
  BoundReport grad;
  /// ||v^(1)_t|| <= int_0^t ||u^(0)|| ||grad u^(0)|| ds <= K0 K t.
  BoundReport first;
  /// Slopes of log ||v^(m)_T|| against m log(cK T / m), m = 2..8.
  double decay_sup = 0.0;
  double decay_grad = 0.0;
  /// ||v^(m)|| / ||v^(m-1)|| by sup over t, from m = 1.
  std::vector<double> ratios;
  std::vector<const BoundReport*> all() const { return {&sup, &grad, &first}; }
};

/// Throws InputError without iterates m >= 1 and WindowError when no frame
/// with t > 0 lies in any window t <= m / cK(T).
ShortTimeReports check_short_time(const std::vector<IterationRecord>& records, const KCalculator& k, double beta);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct GronwallCheck {
  BoundReport report;
  /// Trapezoid I(t_k) of |||C-bar||| at the frame times; A(s,t) = exp(I(t) - I(s)).
  std::vector<double> exponents;
};

/// Difference of two transport solves with the same datum against the integral bound.
GronwallCheck check_gronwall(const TransportProblem& p, const TransportProblem& pbar);

/// Empirical sums against e^gamma / (e^gamma - 1) for the given (gamma, cK t) pairs.
BoundReport check_series(const std::vector<std::pair<double, double>>& cases);

}  // namespace burgers
