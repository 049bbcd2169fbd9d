#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stylo/errors.hpp"
#include "stylo/eval.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

// Independent pairwise oracle: P(score_pos > score_neg) with ties at 1/2.
double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

FeatureMatrix two_column_matrix(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<ClassLabel>& labels) {
  FeatureMatrix m;
  m.feature_names = {"first", "second"};
  m.features = Matrix(labels.size(), 2);
  m.labels = labels;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    m.ids.push_back("r" + std::to_string(r));
    m.features.at(r, 0) = a[r];
    m.features.at(r, 1) = b[r];
  }
  return m;
}

}  // namespace

TEST_CASE("accuracy") {
  CHECK(accuracy(std::vector<int>{1, 0, 1}, std::vector<int>{1, 0, 1}) == 1.0);
  CHECK(accuracy(std::vector<int>{1, 1, 1}, std::vector<int>{0, 0, 0}) == 0.0);
  CHECK(accuracy(std::vector<int>{1, 0, 1, 0}, std::vector<int>{1, 0, 1, 1}) == 0.75);
  CHECK_THROWS_AS(accuracy(std::vector<int>{1}, std::vector<int>{1, 0}), LengthMismatchError);
  CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), TooFewRowsError);
}

TEST_CASE("roc_auc on the documented cases") {
  SUBCASE("perfect separation") {
    std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
    std::vector<int> labels = {1, 1, 0, 0};
    auto roc = roc_auc(scores, labels);
    CHECK(roc.auc == 1.0);
    CHECK(roc.points.front() == std::pair{0.0, 0.0});
    CHECK(roc.points.back() == std::pair{1.0, 1.0});
  }
  SUBCASE("inverted labels give zero") {
    std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
    std::vector<int> labels = {0, 0, 1, 1};
    CHECK(roc_auc(scores, labels).auc == 0.0);
  }
  SUBCASE("interleaved case from the pairwise count") {
    std::vector<double> scores = {1, 3, 2, 4};
    std::vector<int> labels = {0, 0, 1, 1};
    CHECK(roc_auc(scores, labels).auc == doctest::Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("single class is rejected") {
    std::vector<double> scores = {0.1, 0.2};
    std::vector<int> labels = {1, 1};
    CHECK_THROWS_AS(roc_auc(scores, labels), SingleClassError);
  }
}

TEST_CASE("roc points are monotone and the area matches the trapezoid") {
  SeededRng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng.below(49);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    labels[0] = 0;
    labels[1] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 1) labels[i] = static_cast<int>(rng.below(2));
      scores[i] = static_cast<double>(rng.below(8)) / 4.0;  // deliberate ties
    }
    auto roc = roc_auc(scores, labels);
    for (std::size_t k = 1; k < roc.points.size(); ++k) {
      CHECK(roc.points[k].first >= roc.points[k - 1].first);
      CHECK(roc.points[k].second >= roc.points[k - 1].second);
    }
    double trapezoid = 0.0;
    for (std::size_t k = 1; k < roc.points.size(); ++k) {
      trapezoid += (roc.points[k].first - roc.points[k - 1].first) *
                   (roc.points[k].second + roc.points[k - 1].second) * 0.5;
    }
    CHECK(roc.auc == doctest::Approx(trapezoid).epsilon(1e-12));
  }
}

TEST_CASE("property: roc_auc equals the brute-force pairwise oracle") {
  SeededRng rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + rng.below(49);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    labels[0] = 0;
    labels[1] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 1) labels[i] = static_cast<int>(rng.below(2));
      scores[i] = static_cast<double>(rng.below(10)) / 5.0;
    }
    double expected = pairwise_auc(scores, labels);
    CHECK(std::abs(roc_auc(scores, labels).auc - expected) < 1e-12);
  }
}

TEST_CASE("property: auc is invariant under strictly increasing transforms") {
  SeededRng rng(56);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 4 + rng.below(40);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    labels[0] = 0;
    labels[1] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 1) labels[i] = static_cast<int>(rng.below(2));
      scores[i] = rng.uniform(-3.0, 3.0);
    }
    double base = roc_auc(scores, labels).auc;

    std::vector<double> transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = std::exp(scores[i]);
    CHECK(roc_auc(transformed, labels).auc == doctest::Approx(base).epsilon(1e-12));
    for (std::size_t i = 0; i < n; ++i) transformed[i] = 2.5 * scores[i] + 7.0;
    CHECK(roc_auc(transformed, labels).auc == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("per-feature auc") {
  std::vector<ClassLabel> labels = {ClassLabel::Human, ClassLabel::Human, ClassLabel::Ai,
                                    ClassLabel::Ai};
  // first column constant, second identical to the label
  auto m = two_column_matrix({3, 3, 3, 3}, {0, 0, 1, 1}, labels);
  auto aucs = per_feature_auc(m);
  REQUIRE(aucs.size() == 2);
  CHECK(aucs[0].feature == "first");
  CHECK(aucs[0].raw_auc == doctest::Approx(0.5));
  CHECK(aucs[0].oriented_auc == doctest::Approx(0.5));
  CHECK(aucs[1].raw_auc == doctest::Approx(1.0));
  CHECK(aucs[1].oriented_auc == doctest::Approx(1.0));

  // A feature anti-correlated with the label orients to the same value.
  auto inverted = two_column_matrix({0, 0, 1, 1}, {1, 1, 0, 0}, labels);
  auto inv = per_feature_auc(inverted);
  CHECK(inv[1].raw_auc == doctest::Approx(0.0));
  CHECK(inv[1].oriented_auc == doctest::Approx(1.0));
}

TEST_CASE("per-feature auc is unchanged by positive affine scaling") {
  SeededRng rng(78);
  std::vector<ClassLabel> labels;
  std::vector<double> a(30), b(30);
  for (std::size_t i = 0; i < 30; ++i) {
    labels.push_back(i % 2 == 0 ? ClassLabel::Human : ClassLabel::Ai);
    a[i] = rng.normal() + (i % 2) * 0.8;
    b[i] = 10.0 * a[i] - 4.0;
  }
  auto m = two_column_matrix(a, b, labels);
  auto aucs = per_feature_auc(m);
  CHECK(aucs[0].raw_auc == doctest::Approx(aucs[1].raw_auc).epsilon(1e-12));
}

TEST_CASE("importance report scaling and tie order") {
  std::vector<std::string> names = {"beta", "alpha", "gamma"};
  SUBCASE("top feature scales to 100") {
    std::vector<double> raw = {0.2, 0.5, 0.3};
    auto report = importance_report(names, raw);
    CHECK(report[0].feature == "alpha");
    CHECK(report[0].scaled == doctest::Approx(100.0));
    CHECK(report[1].feature == "gamma");
    CHECK(report[1].scaled == doctest::Approx(60.0));
    CHECK(report[2].scaled == doctest::Approx(40.0));
  }
  SUBCASE("equal importances order by name, all at 100") {
    std::vector<double> raw = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto report = importance_report(names, raw);
    CHECK(report[0].feature == "alpha");
    CHECK(report[1].feature == "beta");
    CHECK(report[2].feature == "gamma");
    for (const auto& e : report) CHECK(e.scaled == doctest::Approx(100.0));
  }
}

TEST_CASE("class density normalizes per class and reports means") {
  std::vector<ClassLabel> labels;
  std::vector<double> values;
  SeededRng rng(90);
  for (std::size_t i = 0; i < 200; ++i) {
    bool ai = i % 2 == 1;
    labels.push_back(ai ? ClassLabel::Ai : ClassLabel::Human);
    values.push_back(rng.normal() + (ai ? 0.0 : 2.0));  // human shifted upward
  }
  auto m = two_column_matrix(values, values, labels);
  auto density = class_density(m, "first", 30);

  CHECK(density.bin_edges.size() == 31);
  double human_mass = 0.0, ai_mass = 0.0;
  for (std::size_t b = 0; b < 30; ++b) {
    double width = density.bin_edges[b + 1] - density.bin_edges[b];
    human_mass += density.human_density[b] * width;
    ai_mass += density.ai_density[b] * width;
  }
  CHECK(human_mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ai_mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(density.human_mean > density.ai_mean);

  CHECK_THROWS_AS(class_density(m, "missing", 30), UnknownFeatureError);
  CHECK_THROWS_AS(class_density(m, "first", 1), ConfigInvalidError);
}

TEST_CASE("class density with a constant feature uses a degenerate range") {
  std::vector<ClassLabel> labels = {ClassLabel::Human, ClassLabel::Ai, ClassLabel::Human,
                                    ClassLabel::Ai};
  auto m = two_column_matrix({2, 2, 2, 2}, {2, 2, 2, 2}, labels);
  auto density = class_density(m, "first", 4);
  double human_mass = 0.0;
  for (std::size_t b = 0; b < 4; ++b) {
    human_mass += density.human_density[b] * (density.bin_edges[b + 1] - density.bin_edges[b]);
  }
  CHECK(human_mass == doctest::Approx(1.0).epsilon(1e-9));
}
