#pragma once

#include <span>
#include <string>
#include <vector>

#include "vadecon/corpus.hpp"
#include "vadecon/lexicon.hpp"
#include "vadecon/vad.hpp"

namespace vadecon {

// Term weighting for the document average. Absolute term frequency is the
// only mode; the enum keeps the call sites explicit and leaves room for
// alternatives.
enum class WeightingMode { kAbsoluteTf };

// Treatment of tokens missing from the lexicon: kNeutral folds them in as
// the scale midpoint (the default), kSkip leaves them out of both the
// numerator and the denominator.
enum class OovMode { kNeutral, kSkip };

struct DocumentScore {
  VadVector emotion;
  double coverage = 0.0;  // in-vocabulary tokens / total tokens
};

// Per-dimension weighted average of the word emotion vectors. Aggregates
// term frequencies over word types in first-occurrence order, which is
// algebraically the same as a per-token sum. Throws DataError when the
// document has no tokens (or, under kSkip, no in-vocabulary tokens).
DocumentScore score_document(const Document& doc, const EmotionLexicon& lexicon,
                             WeightingMode weighting, OovMode oov);

struct ScoredRow {
  std::string id;
  Source source;
  Date date;
  VadVector emotion;
  double coverage = 0.0;
};

struct ScoredExclusion {
  std::string id;
  std::string reason;
};

struct ScoredCorpus {
  std::vector<ScoredRow> rows;             // input order, minus exclusions
  std::vector<ScoredExclusion> excluded;   // unscorable documents
};

// Scores every document, fanning out across documents with OpenMP. Row
// order and values are identical to the serial variant for any thread
// count. Throws DataError when every document is unscorable.
ScoredCorpus score_corpus(std::span<const Document> docs,
                          const EmotionLexicon& lexicon,
                          WeightingMode weighting, OovMode oov);

// Single-threaded reference used by tests and benchmarks.
ScoredCorpus score_corpus_serial(std::span<const Document> docs,
                                 const EmotionLexicon& lexicon,
                                 WeightingMode weighting, OovMode oov);

}  // namespace vadecon
