#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcs {

/// Numeric table with a header row. Numbers are written in the shortest
/// representation that parses back to the same double, independent of locale.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double value);
double parse_number(const std::string& text);

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

}  // namespace lcs
