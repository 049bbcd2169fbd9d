#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stylo/features.hpp"
#include "stylo/lexicon.hpp"
#include "stylo/matrix.hpp"

namespace stylo {

enum class ClassLabel : int { Human = 0, Ai = 1 };

std::string to_string(ClassLabel label);
ClassLabel parse_label(std::string_view text);  // case-insensitive; throws BadLabelError

/// One labeled article. pair_id links a human article to its machine rewrite;
/// empty means unpaired.
struct RawDocument {
  std::string id;
  std::string text;
  ClassLabel label = ClassLabel::Human;
  std::string pair_id;
};

struct CorpusLoadResult {
  std::vector<RawDocument> documents;
  std::size_t dropped_count = 0;  // rows removed for empty/whitespace-only text
};

/// Reads a corpus CSV with header `id,text,label[,pair_id]` (RFC-4180
/// quoting, UTF-8). Rows whose text is empty after whitespace trimming are
/// dropped and counted. Throws BadHeaderError, BadLabelError or
/// DuplicateIdError; row numbers count the header as row 1.
CorpusLoadResult load_corpus(std::istream& in);
CorpusLoadResult load_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, std::span<const RawDocument> docs);

/// Feature rows for a document collection, in document order.
struct FeatureMatrix {
  std::vector<std::string> feature_names;  // schema order
  Matrix features;                         // n x kFeatureCount
  std::vector<ClassLabel> labels;
  std::vector<std::string> ids;

  std::size_t rows() const { return features.rows; }
  FeatureMatrix select(std::span<const std::size_t> row_indices) const;
};

/// Extracts features for every document; row i corresponds to docs[i].
/// Extraction failures are rethrown with the offending document id.
FeatureMatrix build_matrix(std::span<const RawDocument> docs, const EmotionLexicon& lex,
                           unsigned threads = 1);

void write_features_csv(std::ostream& out, const FeatureMatrix& m);
FeatureMatrix load_features_csv(std::istream& in);
FeatureMatrix load_features_csv_file(const std::string& path);

struct SplitResult {
  FeatureMatrix train;
  FeatureMatrix test;
};

/// Stratified-by-label random split. Per class, train takes
/// floor(train_fraction * class_n) rows chosen by a seeded shuffle; the
/// partition is exact and fully determined by (matrix, fraction, seed). Row
/// order within each partition follows the input order.
SplitResult split_train_test(const FeatureMatrix& m, double train_fraction, std::uint64_t seed);

/// Like split_train_test, but rows sharing a pair id never straddle the
/// partitions. pair_ids aligns with matrix rows; empty entries are unpaired.
/// Complete human/machine pairs are split as units, remaining rows per class.
SplitResult split_train_test_pairs(const FeatureMatrix& m, double train_fraction,
                                   std::uint64_t seed, std::span<const std::string> pair_ids);

/// Per-column centering/scaling parameters, fitted on training rows only.
struct StandardizationParams {
  std::vector<double> means;
  std::vector<double> stds;  // sample std (n-1); columns with std < 1e-12 get 1
  std::size_t fitted_on = 0;
};

StandardizationParams fit_standardizer(const FeatureMatrix& train);
FeatureMatrix apply_standardizer(const StandardizationParams& params, const FeatureMatrix& m);

/// Audit record of one split: seed, fraction and the id -> partition map.
struct SplitManifest {
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
  bool pair_safe = false;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

SplitManifest make_manifest(const SplitResult& split, std::uint64_t seed, double train_fraction,
                            bool pair_safe);
void write_manifest(std::ostream& out, const SplitManifest& manifest);
SplitManifest load_manifest(std::istream& in);
SplitManifest load_manifest_file(const std::string& path);

/// Rebuilds a split from a manifest over a feature matrix with matching ids.
SplitResult apply_manifest(const FeatureMatrix& m, const SplitManifest& manifest);

}  // namespace stylo
