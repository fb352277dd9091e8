#include "vem/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vem/errors.hpp"

namespace vem::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim whitespace and stray carriage returns
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());

  Table t;
  std::string line;
  long data_row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_line(line);
    if (!header_seen) {
      t.header = fields;
      header_seen = true;
      continue;
    }
    ++data_row;
    if (fields.size() != t.header.size())
      throw ParseError(path.string() + ": expected " + std::to_string(t.header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       data_row);
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        std::size_t used = 0;
        row[i] = std::stod(fields[i], &used);
        if (used != fields[i].size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw ParseError(path.string() + ": bad number '" + fields[i] + "' in column " +
                             t.header[i],
                         data_row);
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError(path.string() + ": missing header line");
  return t;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, p);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace vem::csv
