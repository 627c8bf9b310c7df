#ifndef FEPA_REPORT_HPP_
#define FEPA_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fepa/fraction.hpp"

namespace fepa {

// One value in a report. Reals are rounded to `decimals` in every output
// format so that JSON, CSV and text agree at printed precision. Fractions
// print as counts plus a one-decimal percentage.
struct Cell {
  std::variant<std::monostate, std::string, std::int64_t, double, Fraction> value;
  int decimals = 3;

  static Cell empty() { return {}; }
  static Cell text(std::string s) { return {std::move(s), 0}; }
  static Cell integer(std::int64_t v) { return {v, 0}; }
  static Cell real(double v, int decimals = 3) { return {v, decimals}; }
  static Cell ratio(Fraction f) { return {f, 1}; }
  static Cell maybe(const std::optional<double>& v, int decimals = 3) {
    return v ? real(*v, decimals) : empty();
  }

  // The text shown in table output.
  std::string render() const;
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
  std::string title;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<ReportTable> tables;

  void add(std::string key, Cell value) {
    summary.emplace_back(std::move(key), std::move(value));
  }
  ReportTable& table(std::string name, std::vector<std::string> columns);
};

enum class ReportFormat { kJson, kCsv, kTable };

// Throws InvalidArgument.
ReportFormat parse_report_format(std::string_view text);

void write_report(std::ostream& out, const Report& report, ReportFormat format);

// Rounds half away from zero to `decimals` places.
double round_decimals(double value, int decimals);

}  // namespace fepa

#endif  // FEPA_REPORT_HPP_
