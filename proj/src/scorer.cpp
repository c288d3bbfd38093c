#include "vadecon/scorer.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <utility>

#include "vadecon/errors.hpp"

namespace vadecon {

namespace {

struct TypeCount {
  const std::string* word;
  double count;
};

// Term frequencies over word types, sorted lexicographically so the
// accumulation below runs in a canonical order: reordering or duplicating
// the token stream cannot change the floating-point result.
std::vector<TypeCount> type_frequencies(const std::vector<std::string>& tokens) {
  std::vector<TypeCount> types;
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(tokens.size());
  for (const std::string& token : tokens) {
    auto [it, inserted] = index.emplace(token, types.size());
    if (inserted) {
      types.push_back({&token, 1.0});
    } else {
      types[it->second].count += 1.0;
    }
  }
  std::sort(types.begin(), types.end(),
            [](const TypeCount& a, const TypeCount& b) {
              return *a.word < *b.word;
            });
  return types;
}

std::optional<DocumentScore> try_score(const Document& doc,
                                       const EmotionLexicon& lexicon,
                                       OovMode oov, std::string* reason) {
  if (doc.tokens.empty()) {
    *reason = "no tokens";
    return std::nullopt;
  }
  VadVector numerator;
  double denominator = 0.0;
  double in_vocab_tokens = 0.0;
  for (const TypeCount& tc : type_frequencies(doc.tokens)) {
    auto hit = lexicon.lookup(*tc.word);
    if (!hit.in_vocabulary && oov == OovMode::kSkip) continue;
    numerator.valence += tc.count * hit.value.valence;
    numerator.arousal += tc.count * hit.value.arousal;
    numerator.dominance += tc.count * hit.value.dominance;
    denominator += tc.count;
    if (hit.in_vocabulary) in_vocab_tokens += tc.count;
  }
  if (denominator == 0.0) {
    *reason = "no in-vocabulary tokens";
    return std::nullopt;
  }
  DocumentScore score;
  score.emotion = {numerator.valence / denominator,
                   numerator.arousal / denominator,
                   numerator.dominance / denominator};
  score.coverage = in_vocab_tokens / static_cast<double>(doc.tokens.size());
  return score;
}

template <bool Parallel>
ScoredCorpus score_corpus_impl(std::span<const Document> docs,
                               const EmotionLexicon& lexicon, WeightingMode,
                               OovMode oov) {
  struct Slot {
    std::optional<DocumentScore> score;
    std::string reason;
  };
  std::vector<Slot> slots(docs.size());

  const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& slot = slots[static_cast<std::size_t>(i)];
    slot.score = try_score(docs[static_cast<std::size_t>(i)], lexicon, oov,
                           &slot.reason);
  }

  ScoredCorpus result;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    if (slots[i].score) {
      result.rows.push_back({doc.id, doc.source, doc.date,
                             slots[i].score->emotion, slots[i].score->coverage});
    } else {
      result.excluded.push_back({doc.id, slots[i].reason});
    }
  }
  if (result.rows.empty()) {
    throw DataError("no scorable documents in corpus");
  }
  return result;
}

}  // namespace

DocumentScore score_document(const Document& doc, const EmotionLexicon& lexicon,
                             WeightingMode, OovMode oov) {
  std::string reason;
  auto score = try_score(doc, lexicon, oov, &reason);
  if (!score) {
    throw DataError("document '" + doc.id + "' is unscorable: " + reason);
  }
  return *score;
}

ScoredCorpus score_corpus(std::span<const Document> docs,
                          const EmotionLexicon& lexicon,
                          WeightingMode weighting, OovMode oov) {
  return score_corpus_impl<true>(docs, lexicon, weighting, oov);
}

ScoredCorpus score_corpus_serial(std::span<const Document> docs,
                                 const EmotionLexicon& lexicon,
                                 WeightingMode weighting, OovMode oov) {
  return score_corpus_impl<false>(docs, lexicon, weighting, oov);
}

}  // namespace vadecon
