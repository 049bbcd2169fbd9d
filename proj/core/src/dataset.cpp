#include "stylo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "stylo/csv.hpp"
#include "stylo/errors.hpp"
#include "stylo/parallel.hpp"
#include "stylo/rng.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

bool is_blank(std::string_view text) {
  for (auto cp : unicode::decode_utf8(text)) {
    if (!unicode::is_whitespace(cp)) return false;
  }
  return true;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  }
  return out;
}

double parse_double_field(const std::string& field, std::size_t row) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError("row " + std::to_string(row) + ": bad numeric field '" + field + "'");
  }
  return value;
}

}  // namespace

std::string to_string(ClassLabel label) { return label == ClassLabel::Ai ? "ai" : "human"; }

ClassLabel parse_label(std::string_view text) {
  std::string lower = ascii_lower(text);
  if (lower == "human") return ClassLabel::Human;
  if (lower == "ai") return ClassLabel::Ai;
  throw BadLabelError(0, std::string(text));
}

CorpusLoadResult load_corpus(std::istream& in) {
  auto header = csv::read_record(in);
  bool with_pair = false;
  if (header && header->size() == 4 && (*header)[3] == "pair_id") {
    with_pair = true;
  } else if (!header || header->size() != 3) {
    std::string got;
    if (header) {
      for (std::size_t i = 0; i < header->size(); ++i) {
        if (i > 0) got += ',';
        got += (*header)[i];
      }
    }
    throw BadHeaderError(got);
  }
  if ((*header)[0] != "id" || (*header)[1] != "text" || (*header)[2] != "label") {
    std::string got = (*header)[0] + "," + (*header)[1] + "," + (*header)[2];
    throw BadHeaderError(got);
  }

  CorpusLoadResult result;
  std::unordered_set<std::string> seen_ids;
  std::size_t row = 1;  // header occupied row 1
  while (auto record = csv::read_record(in)) {
    ++row;
    if (record->size() == 1 && (*record)[0].empty()) continue;  // trailing blank line
    if (record->size() != header->size()) {
      throw IoError("row " + std::to_string(row) + ": expected " +
                    std::to_string(header->size()) + " fields, got " +
                    std::to_string(record->size()));
    }
    RawDocument doc;
    doc.id = std::move((*record)[0]);
    doc.text = std::move((*record)[1]);
    try {
      doc.label = parse_label((*record)[2]);
    } catch (const BadLabelError&) {
      throw BadLabelError(row, (*record)[2]);
    }
    if (with_pair) doc.pair_id = std::move((*record)[3]);

    if (is_blank(doc.text)) {
      ++result.dropped_count;
      continue;
    }
    if (!seen_ids.insert(doc.id).second) throw DuplicateIdError(row, doc.id);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

CorpusLoadResult load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  return load_corpus(in);
}

void write_corpus(std::ostream& out, std::span<const RawDocument> docs) {
  bool with_pair = std::any_of(docs.begin(), docs.end(),
                               [](const RawDocument& d) { return !d.pair_id.empty(); });
  std::vector<std::string> header = {"id", "text", "label"};
  if (with_pair) header.push_back("pair_id");
  csv::write_record(out, header);
  for (const auto& doc : docs) {
    std::vector<std::string> record = {doc.id, doc.text, to_string(doc.label)};
    if (with_pair) record.push_back(doc.pair_id);
    csv::write_record(out, record);
  }
}

FeatureMatrix FeatureMatrix::select(std::span<const std::size_t> row_indices) const {
  FeatureMatrix out;
  out.feature_names = feature_names;
  out.features = Matrix(row_indices.size(), features.cols);
  out.labels.reserve(row_indices.size());
  out.ids.reserve(row_indices.size());
  for (std::size_t i = 0; i < row_indices.size(); ++i) {
    std::size_t r = row_indices[i];
    auto src = features.row(r);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(labels[r]);
    out.ids.push_back(ids[r]);
  }
  return out;
}

FeatureMatrix build_matrix(std::span<const RawDocument> docs, const EmotionLexicon& lex,
                           unsigned threads) {
  if (docs.empty()) throw TooFewRowsError("no documents to extract features from");
  FeatureMatrix m;
  m.feature_names.assign(feature_names().begin(), feature_names().end());
  m.features = Matrix(docs.size(), kFeatureCount);
  m.labels.resize(docs.size());
  m.ids.resize(docs.size());

  std::vector<std::string> failures(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    const RawDocument& doc = docs[i];
    try {
      FeatureVector v = extract_features(doc.text, lex);
      std::copy(v.begin(), v.end(), m.features.row(i).begin());
    } catch (const Error& e) {
      failures[i] = e.what();
    }
    m.labels[i] = doc.label;
    m.ids[i] = doc.id;
  });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!failures[i].empty()) {
      throw EmptyDocumentError("document '" + docs[i].id + "': " + failures[i]);
    }
  }
  return m;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& m) {
  std::vector<std::string> header = {"id", "label"};
  for (const auto& name : m.feature_names) header.push_back(name);
  csv::write_record(out, header);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> record = {m.ids[r], to_string(m.labels[r])};
    for (double v : m.features.row(r)) record.push_back(csv::format_double(v));
    csv::write_record(out, record);
  }
}

FeatureMatrix load_features_csv(std::istream& in) {
  auto header = csv::read_record(in);
  if (!header || header->size() < 3 || (*header)[0] != "id" || (*header)[1] != "label") {
    throw BadHeaderError("feature csv must start with 'id,label,...'");
  }
  FeatureMatrix m;
  m.feature_names.assign(header->begin() + 2, header->end());
  const std::size_t width = m.feature_names.size();
  std::vector<double> values;
  std::size_t row = 1;
  while (auto record = csv::read_record(in)) {
    ++row;
    if (record->size() == 1 && (*record)[0].empty()) continue;
    if (record->size() != width + 2) {
      throw IoError("row " + std::to_string(row) + ": expected " + std::to_string(width + 2) +
                    " fields, got " + std::to_string(record->size()));
    }
    m.ids.push_back((*record)[0]);
    try {
      m.labels.push_back(parse_label((*record)[1]));
    } catch (const BadLabelError&) {
      throw BadLabelError(row, (*record)[1]);
    }
    for (std::size_t c = 0; c < width; ++c) {
      values.push_back(parse_double_field((*record)[c + 2], row));
    }
  }
  m.features.rows = m.ids.size();
  m.features.cols = width;
  m.features.values = std::move(values);
  return m;
}

FeatureMatrix load_features_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open features file '" + path + "'");
  return load_features_csv(in);
}

namespace {

SplitResult assemble_split(const FeatureMatrix& m, std::vector<std::size_t> train_idx,
                           std::vector<std::size_t> test_idx) {
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {m.select(train_idx), m.select(test_idx)};
}

void check_split_pre(const FeatureMatrix& m, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigInvalidError("train fraction must be in (0,1)");
  }
  std::size_t human = 0, ai = 0;
  for (ClassLabel label : m.labels) (label == ClassLabel::Human ? human : ai)++;
  if (human < 2 || ai < 2) {
    throw TooFewRowsError("need at least 2 rows per class, got " + std::to_string(human) +
                          " human / " + std::to_string(ai) + " ai");
  }
}

// Shuffles each class's row indices and sends the first floor(fraction*n_c)
// to train. Human rows are shuffled before machine rows on a single stream,
// so the partition is a pure function of (labels, fraction, seed).
void stratified_assign(const FeatureMatrix& m, std::span<const std::size_t> rows,
                       double train_fraction, SeededRng& rng,
                       std::vector<std::size_t>& train_idx, std::vector<std::size_t>& test_idx) {
  for (ClassLabel cls : {ClassLabel::Human, ClassLabel::Ai}) {
    std::vector<std::size_t> members;
    for (std::size_t r : rows) {
      if (m.labels[r] == cls) members.push_back(r);
    }
    rng.shuffle(members);
    auto train_n = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < train_n ? train_idx : test_idx).push_back(members[i]);
    }
  }
}

}  // namespace

SplitResult split_train_test(const FeatureMatrix& m, double train_fraction, std::uint64_t seed) {
  check_split_pre(m, train_fraction);
  std::vector<std::size_t> all(m.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  SeededRng rng(seed);
  std::vector<std::size_t> train_idx, test_idx;
  stratified_assign(m, all, train_fraction, rng, train_idx, test_idx);
  return assemble_split(m, std::move(train_idx), std::move(test_idx));
}

SplitResult split_train_test_pairs(const FeatureMatrix& m, double train_fraction,
                                   std::uint64_t seed, std::span<const std::string> pair_ids) {
  check_split_pre(m, train_fraction);
  if (pair_ids.size() != m.rows()) {
    throw SchemaMismatchError("pair id count does not match row count");
  }

  // Complete pairs (exactly one row per class) are split as units; everything
  // else falls back to the per-class assignment.
  std::map<std::string, std::vector<std::size_t>> groups;
  std::vector<std::size_t> loose;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (pair_ids[r].empty()) {
      loose.push_back(r);
    } else {
      groups[pair_ids[r]].push_back(r);
    }
  }
  std::vector<std::vector<std::size_t>> pairs;
  for (auto& [pair_id, members] : groups) {
    bool complete = members.size() == 2 && m.labels[members[0]] != m.labels[members[1]];
    if (complete) {
      pairs.push_back(members);
    } else {
      loose.insert(loose.end(), members.begin(), members.end());
    }
  }

  SeededRng rng(seed);
  rng.shuffle(pairs);
  auto train_pairs = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(pairs.size())));
  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& dest = i < train_pairs ? train_idx : test_idx;
    dest.insert(dest.end(), pairs[i].begin(), pairs[i].end());
  }
  stratified_assign(m, loose, train_fraction, rng, train_idx, test_idx);
  return assemble_split(m, std::move(train_idx), std::move(test_idx));
}

StandardizationParams fit_standardizer(const FeatureMatrix& train) {
  const std::size_t n = train.rows();
  if (n < 2) throw TooFewRowsError("standardizer needs at least 2 rows");
  const std::size_t cols = train.features.cols;

  StandardizationParams params;
  params.means.assign(cols, 0.0);
  params.stds.assign(cols, 0.0);
  params.fitted_on = n;
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += train.features.at(r, c);
    double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double d = train.features.at(r, c) - mean;
      ss += d * d;
    }
    double std = std::sqrt(ss / static_cast<double>(n - 1));
    params.means[c] = mean;
    params.stds[c] = std < 1e-12 ? 1.0 : std;  // constant columns pass through centered
  }
  return params;
}

FeatureMatrix apply_standardizer(const StandardizationParams& params, const FeatureMatrix& m) {
  if (params.means.size() != m.features.cols) {
    throw SchemaMismatchError("standardizer fitted on " + std::to_string(params.means.size()) +
                              " columns, matrix has " + std::to_string(m.features.cols));
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.features.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = (row[c] - params.means[c]) / params.stds[c];
    }
  }
  return out;
}

SplitManifest make_manifest(const SplitResult& split, std::uint64_t seed, double train_fraction,
                            bool pair_safe) {
  SplitManifest manifest;
  manifest.seed = seed;
  manifest.train_fraction = train_fraction;
  manifest.pair_safe = pair_safe;
  manifest.train_ids = split.train.ids;
  manifest.test_ids = split.test.ids;
  return manifest;
}

void write_manifest(std::ostream& out, const SplitManifest& manifest) {
  nlohmann::ordered_json j;
  j["seed"] = manifest.seed;
  j["train_fraction"] = manifest.train_fraction;
  j["pair_safe"] = manifest.pair_safe;
  j["train_ids"] = manifest.train_ids;
  j["test_ids"] = manifest.test_ids;
  out << j.dump(2) << '\n';
}

SplitManifest load_manifest(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  SplitManifest manifest;
  manifest.seed = j.at("seed").get<std::uint64_t>();
  manifest.train_fraction = j.at("train_fraction").get<double>();
  manifest.pair_safe = j.at("pair_safe").get<bool>();
  manifest.train_ids = j.at("train_ids").get<std::vector<std::string>>();
  manifest.test_ids = j.at("test_ids").get<std::vector<std::string>>();
  return manifest;
}

SplitManifest load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  return load_manifest(in);
}

SplitResult apply_manifest(const FeatureMatrix& m, const SplitManifest& manifest) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t r = 0; r < m.rows(); ++r) index.emplace(m.ids[r], r);
  auto lookup = [&](const std::vector<std::string>& ids) {
    std::vector<std::size_t> rows;
    rows.reserve(ids.size());
    for (const auto& id : ids) {
      auto it = index.find(id);
      if (it == index.end()) {
        throw SchemaMismatchError("manifest id '" + id + "' not present in feature matrix");
      }
      rows.push_back(it->second);
    }
    return rows;
  };
  return {m.select(lookup(manifest.train_ids)), m.select(lookup(manifest.test_ids))};
}

}  // namespace stylo
