#include "vadecon/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"
#include "vadecon/text.hpp"

namespace vadecon {

namespace {

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\v\f") != std::string_view::npos;
}

}  // namespace

EmotionLexicon::EmotionLexicon(WordMap entries, double scale_min,
                               double scale_max,
                               std::size_t duplicates_dropped)
    : entries_(std::move(entries)),
      scale_min_(scale_min),
      scale_max_(scale_max),
      midpoint_((scale_min + scale_max) / 2.0),
      duplicates_dropped_(duplicates_dropped) {
  if (!(scale_min_ < scale_max_)) {
    throw ValidationError("lexicon scale_min must be below scale_max");
  }
}

EmotionLexicon::LookupResult EmotionLexicon::lookup(
    std::string_view token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) {
    return {neutral(), false};
  }
  return {it->second, true};
}

EmotionLexicon load_lexicon(const std::filesystem::path& path,
                            double scale_min, double scale_max) {
  if (!(scale_min < scale_max)) {
    throw ValidationError("lexicon scale_min must be below scale_max");
  }
  io::CsvTable table = io::read_csv(path);
  const std::vector<std::string> expected = {"word", "valence", "arousal",
                                             "dominance"};
  if (table.header != expected) {
    throw ValidationError(path.string() +
                          ": expected header 'word,valence,arousal,dominance'");
  }
  if (table.rows.empty()) {
    throw DataError(path.string() + ": lexicon has no entries");
  }

  EmotionLexicon::WordMap entries;
  entries.reserve(table.rows.size());
  std::size_t duplicates = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where =
        path.string() + ": row " + std::to_string(i + 1);
    std::string word = text::lower_copy(row[0]);
    if (word.empty() || has_whitespace(word)) {
      throw ValidationError(where + ": invalid word '" + row[0] + "'");
    }
    VadVector v;
    v.valence = io::parse_double(row[1], where);
    v.arousal = io::parse_double(row[2], where);
    v.dominance = io::parse_double(row[3], where);
    for (double value : {v.valence, v.arousal, v.dominance}) {
      if (!std::isfinite(value) || value < scale_min || value > scale_max) {
        throw ValidationError(where + ": value " + io::format_double(value) +
                              " outside scale [" +
                              io::format_double(scale_min) + ", " +
                              io::format_double(scale_max) + "]");
      }
    }
    auto [it, inserted] = entries.emplace(std::move(word), v);
    if (!inserted) ++duplicates;  // first occurrence wins
  }
  return EmotionLexicon(std::move(entries), scale_min, scale_max, duplicates);
}

void save_lexicon(const EmotionLexicon& lexicon,
                  const std::filesystem::path& path) {
  std::vector<const std::string*> keys;
  keys.reserve(lexicon.size());
  for (const auto& [word, value] : lexicon.entries()) keys.push_back(&word);
  std::sort(keys.begin(), keys.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  std::string out = "word,valence,arousal,dominance\n";
  for (const std::string* key : keys) {
    const VadVector& v = lexicon.entries().find(*key)->second;
    out += *key;
    out += ',';
    out += io::format_double(v.valence);
    out += ',';
    out += io::format_double(v.arousal);
    out += ',';
    out += io::format_double(v.dominance);
    out += '\n';
  }
  io::write_text_file(path, out);
}

}  // namespace vadecon
