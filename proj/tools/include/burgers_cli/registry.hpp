#pragma once

#include <string>
#include <vector>

namespace burgers::cli {

struct Experiment {
  std::string name;
  std::string summary;
  std::vector<std::string> checks;
};

struct CheckInfo {
  std::string name;
  /// Library operation the check drives.
  std::string operation;
  /// Whether the check needs the Picard solve of the scenario.
  bool needs_solve = false;
};

/// Sorted by name.
const std::vector<Experiment>& experiments();
const std::vector<CheckInfo>& checks();

const Experiment* find_experiment(const std::string& name);
const CheckInfo* find_check(const std::string& name);

/// One line per experiment, stable order.
std::string catalog();

/// Problems found in the registry; empty when every entry resolves to a
/// registered check and every check to a linked library operation.
std::vector<std::string> registry_self_test();

}  // namespace burgers::cli
