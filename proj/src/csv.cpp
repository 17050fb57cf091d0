#include "mte/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mte {

Eigen::Index Table::col(const std::string& name) const {
  for (size_t j = 0; j < columns.size(); ++j)
    if (columns[j] == name) return static_cast<Eigen::Index>(j);
  throw DataError("no column named '" + name + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan";
}

double parse_cell(const std::string& raw, long line, size_t col) {
  std::string s = trim(raw);
  if (is_missing(s)) return std::nan("");
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end != c + s.size())
    throw DataError("line " + std::to_string(line) + ", field " +
                        std::to_string(col + 1) + ": not a number: '" + s + "'",
                    line);
  return v;
}

}  // namespace

Table read_csv_stream(std::istream& in, const std::string& origin) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line))
    throw DataError(origin + ": empty file", 1);
  ++lineno;
  Table t;
  for (const std::string& h : split_fields(line)) {
    std::string name = trim(h);
    if (name.empty())
      throw DataError(origin + ": line 1: empty column name", 1);
    t.columns.push_back(name);
  }
  const size_t width = t.columns.size();
  std::vector<double> buf;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.eof()) break;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != width)
      throw DataError(origin + ": line " + std::to_string(lineno) + ": expected " +
                          std::to_string(width) + " fields, got " +
                          std::to_string(fields.size()),
                      lineno);
    for (size_t j = 0; j < width; ++j) buf.push_back(parse_cell(fields[j], lineno, j));
    ++rows;
  }
  if (rows == 0) throw DataError(origin + ": no data rows", lineno);
  t.values.resize(rows, static_cast<Eigen::Index>(width));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(width); ++j)
      t.values(i, j) = buf[static_cast<size_t>(i) * width + j];
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open " + path);
  return read_csv_stream(f, path);
}

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "na";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table, int precision) {
  for (size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << table.columns[j];
  out << "\n";
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.values.cols(); ++j)
      out << (j ? "," : "") << format_double(table.values(i, j), precision);
    out << "\n";
  }
}

void write_csv_file(const std::string& path, const Table& table, int precision) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  write_csv(f, table, precision);
}

void write_csv(std::ostream& out, const StringTable& table) {
  for (size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << table.columns[j];
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
    out << "\n";
  }
}

void write_csv_file(const std::string& path, const StringTable& table) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  write_csv(f, table);
}

void write_kv_file(const std::string& path, const KvPairs& pairs) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  for (const auto& [k, v] : pairs) f << k << " = " << v << "\n";
}

KvPairs read_kv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open " + path);
  KvPairs out;
  std::string line;
  long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ": line " + std::to_string(lineno) + ": expected key = value",
                      lineno);
    out.emplace_back(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return out;
}

}  // namespace mte
