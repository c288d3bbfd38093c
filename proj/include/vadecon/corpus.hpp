#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vadecon/dates.hpp"

namespace vadecon {

enum class SourceKind { kEcb, kFed, kOther };

// Document origin. "ECB" and "FED" (case-insensitive) are recognized tags;
// anything else is carried verbatim as a free label.
struct Source {
  SourceKind kind = SourceKind::kOther;
  std::string label;

  static Source parse(std::string_view tag);

  auto operator<=>(const Source&) const = default;
};

struct Document {
  std::string id;  // manifest-relative file path
  Source source;
  Date date;
  std::string text;
  std::vector<std::string> tokens;

  std::size_t token_count() const { return tokens.size(); }
};

struct ManifestRow {
  std::string file;
  Date date;
  Source source;
};

// Reads a `file,date,source` CSV. Duplicate file entries or malformed
// dates raise ValidationError; an empty manifest raises DataError.
std::vector<ManifestRow> load_manifest(const std::filesystem::path& path);

struct SourceStats {
  std::size_t documents = 0;
  double mean_tokens = 0.0;
};

struct Corpus {
  std::vector<Document> documents;               // sorted by (source, date, id)
  std::map<std::string, SourceStats> stats;      // keyed by source label
};

// Loads and tokenizes every manifest row. Files are tokenized in parallel;
// the result is sorted by (source, date, id) and therefore independent of
// scheduling and of filesystem enumeration order.
Corpus ingest_corpus(const std::filesystem::path& root,
                     const std::filesystem::path& manifest_path);

std::vector<std::string> tokenize(std::string_view textual);

}  // namespace vadecon
