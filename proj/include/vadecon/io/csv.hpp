#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vadecon::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Strict reader for the plain comma-separated formats used throughout:
// UTF-8, comma separators, no quoting, decimal point '.', uniform column
// count. Rows are numbered from 1 (first line after the header) in errors.
CsvTable read_csv(const std::filesystem::path& path);

std::vector<std::string> split_csv_line(std::string_view line);

// Shortest round-trip decimal text for a double via std::to_chars, so that
// emitted files are byte-stable across runs.
std::string format_double(double v);

// Strict full-field parse; `context` names the offending location.
double parse_double(std::string_view field, const std::string& context);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

// FNV-1a 64-bit content hash, hex encoded; used for run-manifest checksums.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace vadecon::io
