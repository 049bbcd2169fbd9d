#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/lexicon.hpp"
#include "stylo/text_stats.hpp"

namespace stylo {

inline constexpr std::size_t kFeatureCount = 25;

/// Feature names in schema order. The order is fixed and identical across
/// every document, run and serialized artifact.
const std::array<std::string_view, kFeatureCount>& feature_names();

/// Index of `name` in the schema; throws UnknownFeatureError.
std::size_t feature_index(std::string_view name);

/// FNV-1a hash of the comma-joined schema names; persisted with every model
/// so a model can refuse inputs with a different feature layout.
std::string feature_schema_hash();

using FeatureVector = std::array<double, kFeatureCount>;

struct ReadabilityIndices {
  double flesch_reading_ease = 0.0;
  double flesch_kincaid_grade = 0.0;
  double smog_index = 0.0;
  double coleman_liau_index = 0.0;
};

/// Distinct lowercased words over total words, in (0, 1]. Throws
/// EmptyDocumentError when the sequence is empty.
double type_token_ratio(const std::vector<std::string>& words);

/// The four readability indices:
///   FRE  = 206.835 - 1.015*(words/sentences) - 84.6*(syllables/words)
///   FKG  = 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59
///   SMOG = 1.0430*sqrt(polysyllables*30/sentences) + 3.1291
///   CLI  = 0.0588*L - 0.296*S - 15.8, L/S = letters/sentences per 100 words
/// Throws DegenerateStatsError unless word_count >= 1 and sentence_count >= 1.
ReadabilityIndices readability_indices(const TextStats& stats);

/// Per-category fraction of word tokens carrying that category, counted with
/// multiplicity. Throws EmptyDocumentError when the sequence is empty.
std::array<double, kEmotionCount> emotion_proportions(const std::vector<std::string>& words,
                                                      const EmotionLexicon& lex);

/// All 24 schema slots for one document text.
FeatureVector extract_features(std::string_view text, const EmotionLexicon& lex);

}  // namespace stylo
