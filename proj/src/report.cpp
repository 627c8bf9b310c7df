#include "fepa/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "fepa/error.hpp"

namespace fepa {

double round_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

namespace {

std::string fixed(double value, int decimals) {
  return fmt::format("{:.{}f}", round_decimals(value, decimals), decimals);
}

std::optional<double> percent_of(const Fraction& f) {
  if (!f.defined()) return std::nullopt;
  return round_decimals(f.percent(), 1);
}

}  // namespace

std::string Cell::render() const {
  return std::visit(
      [this](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "-";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return fixed(v, decimals);
        } else {
          const auto pct = percent_of(v);
          return pct ? fmt::format("{}/{} ({:.1f}%)", v.num, v.den, *pct)
                     : fmt::format("{}/{} (n/a)", v.num, v.den);
        }
      },
      value);
}

ReportTable& Report::table(std::string name, std::vector<std::string> columns) {
  tables.push_back({std::move(name), std::move(columns), {}});
  return tables.back();
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "table") return ReportFormat::kTable;
  throw Error(ErrorKind::kInvalidArgument,
              fmt::format("unknown report format '{}' (json, csv, table)", text));
}

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const Cell& cell) {
  return std::visit(
      [&cell](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, std::string> ||
                             std::is_same_v<T, std::int64_t>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return round_decimals(v, cell.decimals);
        } else {
          ordered_json j{{"num", v.num}, {"den", v.den}};
          const auto pct = percent_of(v);
          j["percent"] = pct ? ordered_json(*pct) : ordered_json(nullptr);
          return j;
        }
      },
      cell.value);
}

void write_json(std::ostream& out, const Report& report) {
  ordered_json doc;
  doc["title"] = report.title;
  ordered_json summary = ordered_json::object();
  for (const auto& [key, cell] : report.summary) summary[key] = to_json(cell);
  doc["summary"] = std::move(summary);
  ordered_json tables = ordered_json::object();
  for (const auto& table : report.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json r = ordered_json::object();
      for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) {
        r[table.columns[i]] = to_json(row[i]);
      }
      rows.push_back(std::move(r));
    }
    tables[table.name] = std::move(rows);
  }
  doc["tables"] = std::move(tables);
  out << doc.dump(2) << '\n';
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// CSV keeps numbers bare; a fraction column becomes num, den and percent.
std::vector<std::string> csv_cells(const Cell& cell) {
  if (const auto* f = std::get_if<Fraction>(&cell.value)) {
    const auto pct = percent_of(*f);
    return {std::to_string(f->num), std::to_string(f->den),
            pct ? fmt::format("{:.1f}", *pct) : std::string()};
  }
  if (std::holds_alternative<std::monostate>(cell.value)) return {""};
  return {csv_field(cell.render())};
}

void write_csv_table(std::ostream& out, const ReportTable& table) {
  std::vector<bool> is_fraction(table.columns.size(), false);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size() && i < is_fraction.size(); ++i) {
      if (std::holds_alternative<Fraction>(row[i].value)) is_fraction[i] = true;
    }
  }
  std::vector<std::string> header;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    const auto& c = table.columns[i];
    if (is_fraction[i]) {
      header.insert(header.end(), {c + "_num", c + "_den", c + "_pct"});
    } else {
      header.push_back(csv_field(c));
    }
  }
  out << fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const Cell cell = i < row.size() ? row[i] : Cell::empty();
      auto cells = csv_cells(cell);
      if (is_fraction[i] && cells.size() == 1) cells = {"", "", ""};
      fields.insert(fields.end(), cells.begin(), cells.end());
    }
    out << fmt::format("{}\n", fmt::join(fields, ","));
  }
}

void write_csv(std::ostream& out, const Report& report) {
  ReportTable summary{"summary", {"key", "value"}, {}};
  for (const auto& [key, cell] : report.summary) {
    summary.add_row({Cell::text(key), Cell::text(cell.render())});
  }
  bool first = true;
  auto section = [&](const ReportTable& t) {
    if (!first) out << '\n';
    first = false;
    out << "# " << t.name << '\n';
    write_csv_table(out, t);
  };
  if (!report.summary.empty()) section(summary);
  for (const auto& t : report.tables) section(t);
}

bool numeric(const Cell& cell) {
  return !std::holds_alternative<std::string>(cell.value);
}

void write_text_table(std::ostream& out, const ReportTable& table) {
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    width[i] = table.columns[i].size();
  }
  std::vector<std::vector<std::string>> text;
  for (const auto& row : table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      line.push_back(i < row.size() ? row[i].render() : "-");
      width[i] = std::max(width[i], line.back().size());
    }
  }
  out << table.name << '\n';
  std::string header;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) header += "  ";
    header += fmt::format("{:<{}}", table.columns[i], width[i]);
  }
  while (!header.empty() && header.back() == ' ') header.pop_back();
  out << header << '\n' << std::string(header.size(), '-') << '\n';
  for (std::size_t r = 0; r < text.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < text[r].size(); ++i) {
      if (i) line += "  ";
      const bool right = i < table.rows[r].size() && numeric(table.rows[r][i]);
      line += right ? fmt::format("{:>{}}", text[r][i], width[i])
                    : fmt::format("{:<{}}", text[r][i], width[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

void write_text(std::ostream& out, const Report& report) {
  if (!report.title.empty()) out << report.title << "\n\n";
  std::size_t key_width = 0;
  for (const auto& [key, cell] : report.summary) {
    key_width = std::max(key_width, key.size());
  }
  for (const auto& [key, cell] : report.summary) {
    out << fmt::format("{:<{}}  {}\n", key, key_width, cell.render());
  }
  for (const auto& table : report.tables) {
    out << '\n';
    write_text_table(out, table);
  }
}

}  // namespace

void write_report(std::ostream& out, const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: write_json(out, report); break;
    case ReportFormat::kCsv: write_csv(out, report); break;
    case ReportFormat::kTable: write_text(out, report); break;
  }
}

}  // namespace fepa
