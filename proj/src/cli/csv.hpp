#pragma once

#include <string>
#include <vector>

namespace bmidas::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const;  // -1 when absent
};

// Strict reader: rectangular, comma-separated, no quoting, no empty cells.
// Violations raise ConfigError naming the offending cell; unreadable files
// raise IoError.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

double parse_double(const std::string& cell, const std::string& context);
long parse_long(const std::string& cell, const std::string& context);

// Shortest round-trippable decimal representation.
std::string format_double(double v);

}  // namespace bmidas::cli
