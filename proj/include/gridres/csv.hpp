#pragma once

#include <string>
#include <vector>

namespace gridres {

// Minimal CSV layer for the bundle formats. Fields never contain commas or
// quotes by construction, so no quoting rules are implemented.
struct CsvTable {
  std::string path;
  std::vector<std::vector<std::string>> rows;  // header excluded
};

std::vector<std::string> split_csv_line(const std::string& line);

// Reads a CSV file and checks the header matches `expected_header` exactly.
// Errors carry the file name and 1-based line number.
CsvTable read_csv(const std::string& path, const std::string& expected_header);

double parse_double_field(const std::string& value, const std::string& path,
                          std::size_t line_no, const std::string& column);
long long parse_int_field(const std::string& value, const std::string& path,
                          std::size_t line_no, const std::string& column);
bool parse_bool_field(const std::string& value, const std::string& path,
                      std::size_t line_no, const std::string& column);

// Fixed-precision formatting so repeated runs emit byte-identical files.
std::string fmt_double(double v, int decimals = 6);

// Snaps a value to what parsing its fixed-decimal text yields, so generated
// data survives a CSV round-trip bit-exactly.
double snap_decimal(double v, int decimals);

}  // namespace gridres
