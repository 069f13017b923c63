#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sqfl {

inline constexpr std::string_view kVersion = "1.0.0";

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, bool, std::string>;

// Tabular result of a scan. Rows follow the grid definition order; params and
// summary are JSON objects with insertion-ordered keys.
struct ScanReport {
  std::string name;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json summary = Json::object();

  void add_row(std::vector<Cell> row);
  // Column index by name; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view column_name) const;
};

// Header row then one line per row; 17 significant digits for reals.
std::string to_csv(const ScanReport& report);

// {"name", "version", "params", "columns", "rows", "summary"}, two-space indent.
std::string to_json(const ScanReport& report);
Json to_json_value(const ScanReport& report);

} // namespace sqfl
