#include "sqfl/report.hpp"

#include <stdexcept>

#include "sqfl/format.hpp"

namespace sqfl {

void ScanReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("report row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t ScanReport::column(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == col) return i;
  throw std::out_of_range("no column named " + std::string(col));
}

double ScanReport::number(std::size_t row, std::string_view column_name) const {
  const Cell& c = rows.at(row).at(column(column_name));
  if (auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&c)) return *d;
  if (auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
  throw std::invalid_argument("column " + std::string(column_name) + " is not numeric");
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>)
          return format::real(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return format::csv_field(v);
      },
      c);
}

Json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return Json(v); }, c);
}

} // namespace

std::string to_csv(const ScanReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += format::csv_field(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

Json to_json_value(const ScanReport& report) {
  Json j = Json::object();
  j["name"] = report.name;
  j["version"] = std::string(kVersion);
  j["params"] = report.params;
  j["columns"] = report.columns;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[report.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["summary"] = report.summary;
  return j;
}

std::string to_json(const ScanReport& report) { return to_json_value(report).dump(2) + "\n"; }

} // namespace sqfl
