#pragma once

#include <string>
#include <vector>

namespace lsflow {

/// Numeric table with a one-line header.  Values are written with shortest
/// round-trip formatting, so read_csv(write_csv(t)) reproduces the doubles
/// bit-exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

void write_csv(const std::string& path, const CsvTable& table);

/// Parses a table written by write_csv; IoError / ParseError on failure.
CsvTable read_csv(const std::string& path);

}  // namespace lsflow
