#include "lsflow/csv_io.hpp"

#include "lsflow/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lsflow {

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{})
    throw IoError("format_double: value does not fit the buffer");
  return std::string(buf, p);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw ValidationError("write_csv: row width " +
                            std::to_string(row.size()) +
                            " does not match header width " +
                            std::to_string(table.header.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("'" + path + "': empty file, expected a header line");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  int ln = 1;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || p != cell.data() + cell.size())
        throw ParseError("'" + path + "' line " + std::to_string(ln) +
                         ": cell '" + cell + "' is not a number");
      row.push_back(v);
    }
    if (row.size() != table.header.size())
      throw ParseError("'" + path + "' line " + std::to_string(ln) +
                       ": row width does not match the header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lsflow
