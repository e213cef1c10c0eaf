#pragma once

// Row tables written as CSV or JSON lines with identical fields and values.

#include "pdcslab/config.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pdcslab {

/// Missing values print as an empty CSV cell and JSON null.
using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits; non-finite values become missing.
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
void write_jsonl(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

}  // namespace pdcslab
