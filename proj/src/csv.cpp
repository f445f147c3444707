#include "gridres/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "gridres/common.hpp"

namespace gridres {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

CsvTable read_csv(const std::string& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  CsvTable table;
  table.path = path;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ":1: missing header");
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != expected_header) {
    throw InputError(path + ":1: bad header '" + line + "', expected '" +
                     expected_header + "'");
  }
  const std::size_t n_cols = split_csv_line(expected_header).size();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != n_cols) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(n_cols) + " fields, got " +
                       std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

namespace {

[[noreturn]] void bad_field(const std::string& value, const std::string& path,
                            std::size_t line_no, const std::string& column,
                            const char* kind) {
  throw InputError(path + ":" + std::to_string(line_no) + ": column '" + column +
                   "': invalid " + kind + " '" + value + "'");
}

}  // namespace

double parse_double_field(const std::string& value, const std::string& path,
                          std::size_t line_no, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    bad_field(value, path, line_no, column, "number");
  }
  return v;
}

long long parse_int_field(const std::string& value, const std::string& path,
                          std::size_t line_no, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    bad_field(value, path, line_no, column, "integer");
  }
  return v;
}

bool parse_bool_field(const std::string& value, const std::string& path,
                      std::size_t line_no, const std::string& column) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_field(value, path, line_no, column, "boolean (true/false)");
}

std::string fmt_double(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

double snap_decimal(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return std::strtod(buf, nullptr);
}

}  // namespace gridres
