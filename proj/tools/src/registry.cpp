#include "burgers_cli/registry.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <burgers/heat.hpp>
#include <burgers/norms.hpp>
#include <burgers/oracle.hpp>
#include <burgers/schauder.hpp>
#include <burgers/verify.hpp>

namespace burgers::cli {

namespace {

// Operation name -> linked symbol. Taking the address fails to compile if the operation is gone.
const std::map<std::string, const void*>& operations() {
  static const std::map<std::string, const void*> table{
      {"verify::check_uniform", reinterpret_cast<const void*>(&check_uniform)},
      {"verify::check_short_time", reinterpret_cast<const void*>(&check_short_time)},
      {"verify::check_gronwall", reinterpret_cast<const void*>(&check_gronwall)},
      {"verify::check_schauder_instance", reinterpret_cast<const void*>(&check_schauder_instance)},
      {"norms::interpolation_gap_space",
       reinterpret_cast<const void*>(static_cast<InterpolationGap (*)(
           const VectorField&, double, InterpolationConstant, const HolderOptions&)>(&interpolation_gap_space))},
      {"heat_semigroup::holder_scaling_probe", reinterpret_cast<const void*>(&holder_scaling_probe)},
      {"oracle::cole_hopf", reinterpret_cast<const void*>(&cole_hopf)},
  };
  return table;
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> table = [] {
    std::vector<Experiment> t{
        {"uniform_estimates", "every iterate within K0, K, (cK)^(3/2) and the Holder bound at T", {"uniform"}},
        {"short_time", "increments v^(m) against c K0 (cKt/m)^m and the gradient analogue", {"short_time"}},
        {"gronwall", "difference of two transport solves against the amplification bound", {"gronwall"}},
        {"schauder", "implied constant of the interior gradient bound on parabolic balls", {"schauder"}},
        {"interpolation", "Holder interpolation between sup norm and gradient, space and space-time",
         {"interpolation"}},
        {"heat_scaling", "decay of heat derivatives of a lacunary field against t^((alpha-kappa)/2)",
         {"heat_scaling"}},
        {"oracle_compare", "Picard fixed point against the Cole-Hopf solution", {"oracle_compare"}},
    };
    std::stable_sort(t.begin(), t.end(), [](const Experiment& a, const Experiment& b) { return a.name < b.name; });
    return t;
  }();
  return table;
}

const std::vector<CheckInfo>& checks() {
  static const std::vector<CheckInfo> table{
      {"gronwall", "verify::check_gronwall", false},
      {"heat_scaling", "heat_semigroup::holder_scaling_probe", false},
      {"interpolation", "norms::interpolation_gap_space", true},
      {"oracle_compare", "oracle::cole_hopf", true},
      {"schauder", "verify::check_schauder_instance", true},
      {"short_time", "verify::check_short_time", true},
      {"uniform", "verify::check_uniform", true},
  };
  return table;
}

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : experiments()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const CheckInfo* find_check(const std::string& name) {
  for (const auto& c : checks()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string catalog() {
  std::size_t width = 0;
  for (const auto& e : experiments()) width = std::max(width, e.name.size());
  std::ostringstream out;
  for (const auto& e : experiments()) {
    out << e.name << std::string(width + 2 - e.name.size(), ' ') << e.summary << " [";
    for (std::size_t i = 0; i < e.checks.size(); ++i) out << (i ? ", " : "") << e.checks[i];
    out << "]\n";
  }
  return out.str();
}

std::vector<std::string> registry_self_test() {
  std::vector<std::string> problems;
  const auto& ops = operations();
  for (const auto& e : experiments()) {
    if (e.checks.empty()) problems.push_back("experiment " + e.name + " has no checks");
    for (const auto& c : e.checks) {
      if (!find_check(c)) problems.push_back("experiment " + e.name + " names unknown check " + c);
    }
  }
  for (const auto& c : checks()) {
    const auto it = ops.find(c.operation);
    if (it == ops.end() || it->second == nullptr) {
      problems.push_back("check " + c.name + " names missing operation " + c.operation);
    }
  }
  const auto& ex = experiments();
  if (!std::is_sorted(ex.begin(), ex.end(), [](const auto& a, const auto& b) { return a.name < b.name; })) {
    problems.push_back("catalog is not sorted");
  }
  return problems;
}

}  // namespace burgers::cli
