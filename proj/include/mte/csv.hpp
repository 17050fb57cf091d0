#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mte/types.hpp"

namespace mte {

// Rectangular numeric table with named columns. Cells are doubles; missing
// cells (empty or NA/na/NaN) are NaN in memory.
struct Table {
  std::vector<std::string> columns;
  Matrix values;  // one row per record

  Eigen::Index col(const std::string& name) const;  // DataError if absent
};

// Strict CSV reader: one header line, comma separation, every record must
// have the same width, every cell numeric or missing. Parse problems raise
// DataError with the 1-based line number.
Table read_csv(const std::string& path);
Table read_csv_stream(std::istream& in, const std::string& origin);

// max_precision round-trips doubles exactly
void write_csv(std::ostream& out, const Table& table, int precision = 10);
void write_csv_file(const std::string& path, const Table& table, int precision = 10);

// Report-style table with preformatted cells.
struct StringTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const StringTable& table);
void write_csv_file(const std::string& path, const StringTable& table);

// key = value sidecar files, order preserving
using KvPairs = std::vector<std::pair<std::string, std::string>>;
void write_kv_file(const std::string& path, const KvPairs& pairs);
KvPairs read_kv_file(const std::string& path);

std::string format_double(double v, int precision);

}  // namespace mte
