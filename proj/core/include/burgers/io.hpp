#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace burgers {

/// Writes via a sibling temp file and rename, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// %.17g; round-trips every finite double.
std::string format_double(double x);

/// CSV with a header row; every value formatted with format_double.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Pretty JSON with a trailing newline. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j);

/// JSON number, or null when x is not finite.
nlohmann::json json_number(double x);
nlohmann::json json_numbers(const std::vector<double>& xs);

}  // namespace burgers
