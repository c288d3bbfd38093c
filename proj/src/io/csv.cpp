#include "vadecon/io/csv.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vadecon/errors.hpp"

namespace vadecon::io {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw DataError("read failure on file: " + path.string());
  }
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot open file for writing: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw DataError("write failure on file: " + path.string());
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::string content = read_text_file(path);
  CsvTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  // Strip a UTF-8 BOM if present.
  if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    pos = 3;
  }
  while (pos <= content.size()) {
    if (pos == content.size()) break;
    std::size_t eol = content.find('\n', pos);
    std::string_view line;
    if (eol == std::string::npos) {
      line = std::string_view(content).substr(pos);
      pos = content.size();
    } else {
      line = std::string_view(content).substr(pos, eol - pos);
      pos = eol + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (line_no == 1) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ValidationError(path.string() + ": row " +
                            std::to_string(line_no - 1) + " has " +
                            std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) {
    throw ValidationError(path.string() + ": missing header row");
  }
  return table;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view field, const std::string& context) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ValidationError(context + ": non-numeric value '" +
                          std::string(field) + "'");
  }
  return value;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace vadecon::io
