#include "pdcslab/table_output.hpp"

#include "pdcslab/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <ostream>

namespace pdcslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_cell(const Cell& cell) {
  return std::visit(
      overloaded{[](std::monostate) { return std::string(); },
                 [](double v) { return format_number(v); },
                 [](bool b) { return std::string(b ? "true" : "false"); },
                 [](const std::string& s) {
                   if (s.find_first_of(",\"\n") == std::string::npos) return s;
                   std::string q = "\"";
                   for (char c : s) {
                     if (c == '"') q += '"';
                     q += c;
                   }
                   return q + '"';
                 }},
      cell);
}

std::string json_cell(const Cell& cell) {
  return std::visit(overloaded{[](std::monostate) { return std::string("null"); },
                               [](double v) {
                                 auto s = format_number(v);
                                 return s.empty() ? std::string("null") : s;
                               },
                               [](bool b) { return std::string(b ? "true" : "false"); },
                               [](const std::string& s) { return nlohmann::json(s).dump(); }},
                    cell);
}

void check_shape(const Table& t) {
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) {
      throw Error(ErrorCode::domain,
                  fmt::format("table row has {} cells for {} columns", row.size(),
                              t.columns.size()));
    }
  }
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return {};
  return fmt::format("{:.12g}", value);
}

void write_csv(std::ostream& out, const Table& table) {
  check_shape(table);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const Table& table) {
  check_shape(table);
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << nlohmann::json(table.columns[i]).dump() << ':' << json_cell(row[i]);
    }
    out << "}\n";
  }
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_jsonl(out, table);
  }
}

}  // namespace pdcslab
