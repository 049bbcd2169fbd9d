#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "stylo/dataset.hpp"
#include "stylo/errors.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

CorpusLoadResult parse(const std::string& content) {
  std::istringstream in(content);
  return load_corpus(in);
}

// A balanced matrix with deterministic pseudo-feature values.
FeatureMatrix toy_matrix(std::size_t per_class, std::uint64_t seed = 9) {
  FeatureMatrix m;
  m.feature_names.assign(feature_names().begin(), feature_names().end());
  std::size_t n = 2 * per_class;
  m.features = Matrix(n, kFeatureCount);
  SeededRng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    m.labels.push_back(r % 2 == 0 ? ClassLabel::Human : ClassLabel::Ai);
    m.ids.push_back("d" + std::to_string(r));
    for (std::size_t c = 0; c < kFeatureCount; ++c) m.features.at(r, c) = rng.normal();
  }
  return m;
}

}  // namespace

TEST_CASE("load_corpus accepts the documented format") {
  auto result = parse(
      "id,text,label\n"
      "a1,\"First, quoted text.\",human\n"
      "a2,Second text.,AI\n"
      "a3,\"Line with \"\"quotes\"\" and\nnewline.\",Human\n");
  CHECK(result.documents.size() == 3);
  CHECK(result.dropped_count == 0);
  CHECK(result.documents[0].text == "First, quoted text.");
  CHECK(result.documents[1].label == ClassLabel::Ai);
  CHECK(result.documents[2].text == "Line with \"quotes\" and\nnewline.");
  CHECK(result.documents[0].pair_id.empty());
}

TEST_CASE("load_corpus reads pair ids when present") {
  auto result = parse(
      "id,text,label,pair_id\n"
      "h1,Some text.,human,p1\n"
      "a1,Other text.,ai,p1\n"
      "x1,Unpaired.,human,\n");
  CHECK(result.documents[0].pair_id == "p1");
  CHECK(result.documents[2].pair_id.empty());
}

TEST_CASE("empty-text rows are dropped and counted") {
  auto result = parse(
      "id,text,label\n"
      "a,Real text.,human\n"
      "b,   ,ai\n"
      "c,\"\",ai\n"
      "d,More text.,ai\n");
  CHECK(result.documents.size() == 2);
  CHECK(result.dropped_count == 2);
}

TEST_CASE("corpus validation errors") {
  CHECK_THROWS_AS(parse("wrong,header,here\nx,y,human\n"), BadHeaderError);
  CHECK_THROWS_AS(parse("id,text\nx,y\n"), BadHeaderError);
  CHECK_THROWS_AS(parse("id,text,label\nx,text.,real\n"), BadLabelError);
  CHECK_THROWS_AS(parse("id,text,label\nx,text.,human\nx,more.,ai\n"), DuplicateIdError);
  try {
    parse("id,text,label\nok,text.,human\nx,text.,bogus\n");
  } catch (const BadLabelError& e) {
    CHECK(e.row() == 3);
  }
}

TEST_CASE("labels parse case-insensitively") {
  CHECK(parse_label("human") == ClassLabel::Human);
  CHECK(parse_label("HUMAN") == ClassLabel::Human);
  CHECK(parse_label("Ai") == ClassLabel::Ai);
  CHECK_THROWS_AS(parse_label("machine"), BadLabelError);
}

TEST_CASE("corpus round-trips through write_corpus") {
  std::vector<RawDocument> docs = {
      {"h1", "Text with, commas and \"quotes\".", ClassLabel::Human, "p1"},
      {"a1", "Second\nline.", ClassLabel::Ai, "p1"},
  };
  std::ostringstream out;
  write_corpus(out, docs);
  auto result = parse(out.str());
  REQUIRE(result.documents.size() == 2);
  CHECK(result.documents[0].text == docs[0].text);
  CHECK(result.documents[1].text == docs[1].text);
  CHECK(result.documents[1].pair_id == "p1");
}

TEST_CASE("build_matrix keeps order and reports the offending id") {
  EmotionLexicon empty;
  std::vector<RawDocument> docs = {
      {"d1", "Solid text here.", ClassLabel::Human, ""},
      {"d2", "More words follow.", ClassLabel::Ai, ""},
  };
  auto m = build_matrix(docs, empty);
  CHECK(m.rows() == 2);
  CHECK(m.features.cols == kFeatureCount);
  CHECK(m.ids == std::vector<std::string>{"d1", "d2"});

  docs.push_back({"d3", "123 456", ClassLabel::Ai, ""});
  try {
    build_matrix(docs, empty);
    FAIL("expected an extraction error");
  } catch (const EmptyDocumentError& e) {
    CHECK(std::string(e.what()).find("d3") != std::string::npos);
  }
  CHECK_THROWS_AS(build_matrix({}, empty), TooFewRowsError);
}

TEST_CASE("feature csv round-trips exactly") {
  auto m = toy_matrix(3);
  std::ostringstream out;
  write_features_csv(out, m);
  std::istringstream in(out.str());
  auto back = load_features_csv(in);
  CHECK(back.feature_names == m.feature_names);
  CHECK(back.ids == m.ids);
  CHECK(back.labels == m.labels);
  // Shortest round-trip decimal must reparse to the identical double.
  CHECK(back.features.values == m.features.values);
}

TEST_CASE("feature csv rejects malformed rows") {
  auto parse_features = [](const std::string& content) {
    std::istringstream in(content);
    return load_features_csv(in);
  };
  CHECK_THROWS_AS(parse_features("wrong,header\n"), BadHeaderError);
  CHECK_THROWS_AS(parse_features("id,label,x\nr1,human,not_a_number\n"), IoError);
  CHECK_THROWS_AS(parse_features("id,label,x\nr1,bogus,1.0\n"), BadLabelError);
  CHECK_THROWS_AS(parse_features("id,label,x\nr1,human\n"), IoError);  // missing field
}

TEST_CASE("split sizes follow the stratified floor rule") {
  SUBCASE("1000 balanced rows at 0.8 give exactly 800/200") {
    auto m = toy_matrix(500);
    auto split = split_train_test(m, 0.8, 1);
    CHECK(split.train.rows() == 800);
    CHECK(split.test.rows() == 200);
  }
  SUBCASE("10 rows split 8/2 with balanced classes") {
    auto m = toy_matrix(5);
    auto split = split_train_test(m, 0.8, 1);
    CHECK(split.train.rows() == 8);
    CHECK(split.test.rows() == 2);
    std::size_t train_human = 0;
    for (auto label : split.train.labels) train_human += label == ClassLabel::Human;
    CHECK(train_human == 4);
    std::size_t test_human = 0;
    for (auto label : split.test.labels) test_human += label == ClassLabel::Human;
    CHECK(test_human == 1);
  }
}

TEST_CASE("split is an exact partition") {
  auto m = toy_matrix(20);
  auto split = split_train_test(m, 0.7, 3);
  std::multiset<std::string> seen;
  for (const auto& id : split.train.ids) seen.insert(id);
  for (const auto& id : split.test.ids) seen.insert(id);
  std::multiset<std::string> expected(m.ids.begin(), m.ids.end());
  CHECK(seen == expected);
}

TEST_CASE("split determinism and seed sensitivity") {
  auto m = toy_matrix(50);
  auto a = split_train_test(m, 0.8, 42);
  auto b = split_train_test(m, 0.8, 42);
  CHECK(a.train.ids == b.train.ids);
  CHECK(a.test.ids == b.test.ids);

  bool any_differs = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = split_train_test(m, 0.8, seed);
    if (c.train.ids != a.train.ids) any_differs = true;
  }
  CHECK(any_differs);
}

TEST_CASE("split preconditions") {
  auto m = toy_matrix(5);
  CHECK_THROWS_AS(split_train_test(m, 0.0, 1), ConfigInvalidError);
  CHECK_THROWS_AS(split_train_test(m, 1.0, 1), ConfigInvalidError);

  FeatureMatrix single;
  single.feature_names = m.feature_names;
  single.features = Matrix(3, kFeatureCount);
  single.labels = {ClassLabel::Human, ClassLabel::Human, ClassLabel::Ai};
  single.ids = {"a", "b", "c"};
  CHECK_THROWS_AS(split_train_test(single, 0.8, 1), TooFewRowsError);
}

TEST_CASE("pair-safe split keeps pairs together") {
  auto m = toy_matrix(40);
  std::vector<std::string> pair_ids(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) pair_ids[r] = "p" + std::to_string(r / 2);

  auto split = split_train_test_pairs(m, 0.8, 11, pair_ids);
  CHECK(split.train.rows() == 64);
  CHECK(split.test.rows() == 16);

  auto partition_of = [&](const std::string& id) {
    for (const auto& x : split.train.ids) {
      if (x == id) return 0;
    }
    return 1;
  };
  for (std::size_t p = 0; p < 40; ++p) {
    std::string human_id = "d" + std::to_string(2 * p);
    std::string ai_id = "d" + std::to_string(2 * p + 1);
    CHECK(partition_of(human_id) == partition_of(ai_id));
  }
}

TEST_CASE("standardizer fit and apply") {
  FeatureMatrix m;
  m.feature_names = {"x", "y"};
  m.features = Matrix(3, 2);
  m.labels = {ClassLabel::Human, ClassLabel::Ai, ClassLabel::Human};
  m.ids = {"a", "b", "c"};
  for (std::size_t r = 0; r < 3; ++r) {
    m.features.at(r, 0) = static_cast<double>(r + 1);  // 1,2,3
    m.features.at(r, 1) = 5.0;                         // constant
  }

  auto params = fit_standardizer(m);
  CHECK(params.means[0] == doctest::Approx(2.0));
  CHECK(params.stds[0] == doctest::Approx(1.0));
  CHECK(params.means[1] == doctest::Approx(5.0));
  CHECK(params.stds[1] == 1.0);  // substitution rule
  CHECK(params.fitted_on == 3);

  auto standardized = apply_standardizer(params, m);
  CHECK(standardized.features.at(0, 0) == doctest::Approx(-1.0));
  CHECK(standardized.features.at(1, 0) == doctest::Approx(0.0));
  CHECK(standardized.features.at(2, 0) == doctest::Approx(1.0));
  CHECK(standardized.features.at(0, 1) == doctest::Approx(0.0));  // centered pass-through
}

TEST_CASE("standardizer errors") {
  FeatureMatrix one;
  one.feature_names = {"x"};
  one.features = Matrix(1, 1);
  one.labels = {ClassLabel::Human};
  one.ids = {"a"};
  CHECK_THROWS_AS(fit_standardizer(one), TooFewRowsError);

  auto m = toy_matrix(4);
  auto params = fit_standardizer(m);
  FeatureMatrix narrow;
  narrow.feature_names = {"x"};
  narrow.features = Matrix(2, 1);
  narrow.labels = {ClassLabel::Human, ClassLabel::Ai};
  narrow.ids = {"a", "b"};
  CHECK_THROWS_AS(apply_standardizer(params, narrow), SchemaMismatchError);
}

TEST_CASE("post-standardization moments on the training partition") {
  auto m = toy_matrix(100);
  auto split = split_train_test(m, 0.8, 5);
  auto params = fit_standardizer(split.train);
  auto train = apply_standardizer(params, split.train);

  const auto n = static_cast<double>(train.rows());
  for (std::size_t c = 0; c < train.features.cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) mean += train.features.at(r, c);
    mean /= n;
    double ss = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      double d = train.features.at(r, c) - mean;
      ss += d * d;
    }
    double std = std::sqrt(ss / (n - 1.0));
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std - 1.0) < 1e-9);
  }
}

TEST_CASE("manifest round-trip and apply") {
  auto m = toy_matrix(10);
  auto split = split_train_test(m, 0.8, 77);
  auto manifest = make_manifest(split, 77, 0.8, false);

  std::ostringstream out;
  write_manifest(out, manifest);
  std::istringstream in(out.str());
  auto back = load_manifest(in);
  CHECK(back.seed == 77);
  CHECK(back.train_fraction == 0.8);
  CHECK(back.train_ids == manifest.train_ids);
  CHECK(back.test_ids == manifest.test_ids);

  auto rebuilt = apply_manifest(m, back);
  CHECK(rebuilt.train.ids == split.train.ids);
  CHECK(rebuilt.test.ids == split.test.ids);
  CHECK(rebuilt.train.features.values == split.train.features.values);

  SplitManifest bogus = back;
  bogus.test_ids.push_back("missing");
  CHECK_THROWS_AS(apply_manifest(m, bogus), SchemaMismatchError);
}

TEST_CASE("property: reordered rows still split exactly and stratified") {
  auto m = toy_matrix(30);
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < m.rows(); i += 2) perm.push_back(i);
  for (std::size_t i = 1; i < m.rows(); i += 2) perm.push_back(i);
  FeatureMatrix reordered = m.select(perm);

  auto split = split_train_test(reordered, 0.8, 4);
  CHECK(split.train.rows() + split.test.rows() == m.rows());
  std::multiset<std::string> seen;
  for (const auto& id : split.train.ids) seen.insert(id);
  for (const auto& id : split.test.ids) seen.insert(id);
  CHECK(seen == std::multiset<std::string>(m.ids.begin(), m.ids.end()));
  std::size_t train_human = 0;
  for (auto label : split.train.labels) train_human += label == ClassLabel::Human;
  CHECK(train_human == 24);  // floor(0.8 * 30) per class
}
