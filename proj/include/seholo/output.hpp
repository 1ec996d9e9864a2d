#pragma once

// Tabular results and their CSV / JSON renderings. Numbers carry 10
// significant digits so identical runs give identical bytes.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "seholo/config.hpp"

namespace seholo {

using Cell = std::variant<std::string, double, long>;

struct Table {
  std::string name;                  // JSON key when several tables are written together
  std::vector<std::string> columns;  // include unit suffixes, e.g. "time_ns"
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws InvalidArgument on a width mismatch
};

void write_csv(const Table& t, std::ostream& os);
void write_json(const std::vector<Table>& tables, std::ostream& os);

/// Writes one or more tables in `format`. One JSON table is an array of row
/// objects; several become an object keyed by table name. Several CSV
/// tables are separated by a blank line.
void write_tables(const std::vector<Table>& tables, OutputFormat format, std::ostream& os);

/// `out` with "_<name>" inserted before the extension; where extra CSV
/// tables go when an output path is given.
std::string sibling_path(const std::string& out, const std::string& name);

}  // namespace seholo
