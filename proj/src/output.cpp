#include "seholo/output.hpp"

#include <cmath>
#include <filesystem>

#include "json.hpp"

#include "seholo/errors.hpp"

namespace seholo {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::to_string(std::get<long>(c));
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    // Round through the CSV text so both formats carry the same value.
    return std::stod(format_number(*d));
  }
  return std::get<long>(c);
}

nlohmann::ordered_json table_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = cell_json(row[j]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("table '" + name + "': row width does not match the header");
  }
  rows.push_back(std::move(row));
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    os << (j ? "," : "") << csv_field(t.columns[j]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << cell_text(row[j]);
    os << '\n';
  }
}

void write_json(const std::vector<Table>& tables, std::ostream& os) {
  if (tables.size() == 1) {
    os << table_json(tables.front()).dump(2) << '\n';
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& t : tables) doc[t.name] = table_json(t);
  os << doc.dump(2) << '\n';
}

void write_tables(const std::vector<Table>& tables, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::json) {
    write_json(tables, os);
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) os << '\n';
    write_csv(tables[i], os);
  }
}

std::string sibling_path(const std::string& out, const std::string& name) {
  const std::filesystem::path p(out);
  std::filesystem::path q = p.parent_path() / (p.stem().string() + "_" + name);
  q += p.extension();
  return q.string();
}

}  // namespace seholo
