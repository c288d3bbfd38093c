#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "vadecon/vad.hpp"

namespace vadecon {

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view sv) const {
    return std::hash<std::string_view>{}(sv);
  }
};
}  // namespace detail

// Word -> VAD mapping on a caller-declared bipolar rating scale.
// Immutable after construction; concurrent reads are safe.
class EmotionLexicon {
 public:
  using WordMap = std::unordered_map<std::string, VadVector, detail::StringHash,
                                     std::equal_to<>>;

  EmotionLexicon(WordMap entries, double scale_min, double scale_max,
                 std::size_t duplicates_dropped = 0);

  double scale_min() const { return scale_min_; }
  double scale_max() const { return scale_max_; }
  // Neutral point of the scale; stands in for out-of-vocabulary words.
  double midpoint() const { return midpoint_; }
  VadVector neutral() const { return {midpoint_, midpoint_, midpoint_}; }

  std::size_t size() const { return entries_.size(); }
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }

  struct LookupResult {
    VadVector value;
    bool in_vocabulary = false;
  };

  // `token` must already be lowercase (see text::tokenize). Unknown tokens
  // map to the neutral vector with in_vocabulary = false.
  LookupResult lookup(std::string_view token) const;

  bool contains(std::string_view token) const {
    return entries_.find(token) != entries_.end();
  }

  const WordMap& entries() const { return entries_; }

 private:
  WordMap entries_;
  double scale_min_;
  double scale_max_;
  double midpoint_;
  std::size_t duplicates_dropped_;
};

// Reads a UTF-8 CSV with header `word,valence,arousal,dominance`. Keys are
// lowercased; duplicates keep the first occurrence and bump the lexicon's
// duplicate counter. Values outside [scale_min, scale_max] or non-numeric
// raise ValidationError naming the row; a file with no data rows raises
// DataError.
EmotionLexicon load_lexicon(const std::filesystem::path& path,
                            double scale_min, double scale_max);

// Writes the exact CSV format load_lexicon reads, entries in sorted key
// order. Intended for fixtures and round-trip checks.
void save_lexicon(const EmotionLexicon& lexicon,
                  const std::filesystem::path& path);

}  // namespace vadecon
