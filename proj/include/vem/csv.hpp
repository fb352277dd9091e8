#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vem::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index by header name; -1 when absent.
  int column(const std::string& name) const;
};

/// Reads a comma-separated numeric table with one header line. Lines starting
/// with '#' are skipped. Parse failures carry the 1-based data-row index.
Table read_table(const std::filesystem::path& path);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Writes content to path via a temporary file and rename, so readers never
/// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace vem::csv
