#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace docest::csv {

// Shortest round-trip decimal formatting; CSVs reproduce doubles bit-exactly.
std::string fmt(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const;  // -1 when absent
  double num(size_t row, int col) const;
};

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);

}  // namespace docest::csv
