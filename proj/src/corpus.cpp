#include "vadecon/corpus.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"
#include "vadecon/text.hpp"

namespace vadecon {

Source Source::parse(std::string_view tag) {
  std::string upper(tag);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 0x20) : c;
  });
  if (upper == "ECB") return {SourceKind::kEcb, "ECB"};
  if (upper == "FED") return {SourceKind::kFed, "FED"};
  return {SourceKind::kOther, std::string(tag)};
}

std::vector<std::string> tokenize(std::string_view textual) {
  return text::tokenize(textual);
}

std::vector<ManifestRow> load_manifest(const std::filesystem::path& path) {
  io::CsvTable table = io::read_csv(path);
  const std::vector<std::string> expected = {"file", "date", "source"};
  if (table.header != expected) {
    throw ValidationError(path.string() +
                          ": expected header 'file,date,source'");
  }
  if (table.rows.empty()) {
    throw DataError(path.string() + ": manifest lists no documents");
  }
  std::vector<ManifestRow> rows;
  rows.reserve(table.rows.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& fields = table.rows[i];
    const std::string where = path.string() + ": row " + std::to_string(i + 1);
    if (fields[0].empty()) {
      throw ValidationError(where + ": empty file field");
    }
    if (!seen.insert(fields[0]).second) {
      throw ValidationError(where + ": duplicate file entry '" + fields[0] +
                            "'");
    }
    ManifestRow row;
    row.file = fields[0];
    try {
      row.date = parse_date(fields[1]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    row.source = Source::parse(fields[2]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Corpus ingest_corpus(const std::filesystem::path& root,
                     const std::filesystem::path& manifest_path) {
  std::vector<ManifestRow> rows = load_manifest(manifest_path);

  Corpus corpus;
  corpus.documents.resize(rows.size());
  // File reads stay sequential so error reporting can name the row.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ManifestRow& row = rows[i];
    std::filesystem::path file_path = root / row.file;
    if (!std::filesystem::exists(file_path)) {
      throw DataError(manifest_path.string() + ": row " + std::to_string(i + 1) +
                      " references missing file '" + row.file + "'");
    }
    Document& doc = corpus.documents[i];
    doc.id = row.file;
    doc.source = row.source;
    doc.date = row.date;
    doc.text = io::read_text_file(file_path);
  }

  // Tokenization is per-document and order-free.
  const auto n = static_cast<std::ptrdiff_t>(corpus.documents.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& doc = corpus.documents[static_cast<std::size_t>(i)];
    doc.tokens = text::tokenize(doc.text);
  }

  std::sort(corpus.documents.begin(), corpus.documents.end(),
            [](const Document& a, const Document& b) {
              return std::tie(a.source, a.date, a.id) <
                     std::tie(b.source, b.date, b.id);
            });

  for (const Document& doc : corpus.documents) {
    SourceStats& s = corpus.stats[doc.source.label];
    s.mean_tokens += static_cast<double>(doc.token_count());
    ++s.documents;
  }
  for (auto& [label, s] : corpus.stats) {
    s.mean_tokens /= static_cast<double>(s.documents);
  }
  return corpus;
}

}  // namespace vadecon
