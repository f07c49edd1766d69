#pragma once

#include <filesystem>
#include <iosfwd>

#include "burgers_cli/config.hpp"

namespace burgers::cli {

enum ExitStatus : int { ok = 0, check_failed = 1, config_error = 2, diverged = 3 };

/// Executes a parsed config and writes its artifacts; BURGERS_OUT_DIR overrides the output directory.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Loads, validates and runs; parse and validation errors map to config_error.
int run_file(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Verbs run <config>, list, version.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

const char* version() noexcept;

}  // namespace burgers::cli
