#include "stylo/models/svm_rbf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "math_util.hpp"
#include "model_io.hpp"

namespace stylo {

namespace {

const std::string kFamily = "svm_rbf";

struct SmoSolution {
  std::vector<double> alphas;
  double bias = 0.0;
};

// Sequential minimal optimization with second-order working-set selection:
// the first index is the most violating one, the partner maximizes the
// guaranteed objective decrease. Ties break to the lowest index, so the
// solve is deterministic. Terminates when the maximal KKT violation drops
// below the tolerance.
SmoSolution solve_smo(const Matrix& X, const std::vector<int>& y_pm, const Matrix& kernel,
                      const SvmHyperparams& hp) {
  const std::size_t n = X.rows;
  SmoSolution sol;
  sol.alphas.assign(n, 0.0);

  // Gradient of the dual objective 1/2 a'Qa - e'a, with Q_ij = y_i y_j K_ij.
  std::vector<double> grad(n, -1.0);

  const double c = hp.c;
  const double tol = hp.kkt_tolerance;
  constexpr double kCurvatureFloor = 1e-12;

  auto in_upper_set = [&](std::size_t t) {
    return y_pm[t] == 1 ? sol.alphas[t] < c : sol.alphas[t] > 0.0;
  };
  auto in_lower_set = [&](std::size_t t) {
    return y_pm[t] == 1 ? sol.alphas[t] > 0.0 : sol.alphas[t] < c;
  };

  std::size_t iterations = 0;
  for (;;) {
    // Maximal violating pair bounds.
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      double v = -y_pm[t] * grad[t];
      if (in_upper_set(t) && v > up_max) {
        up_max = v;
        i = t;
      }
      if (in_lower_set(t)) low_min = std::min(low_min, v);
    }
    if (i == n || up_max - low_min < tol) break;
    if (++iterations > hp.max_pair_updates) throw NoConvergenceError(iterations);

    // Partner with the largest guaranteed decrease b^2 / a.
    std::size_t j = n;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (t == i || !in_lower_set(t)) continue;
      double b = up_max + y_pm[t] * grad[t];  // up_max - (-y_t grad_t)
      if (b <= 0.0) continue;
      double a = kernel.at(i, i) + kernel.at(t, t) - 2.0 * kernel.at(i, t);
      if (a < kCurvatureFloor) a = kCurvatureFloor;
      double gain = b * b / a;
      if (gain > best_gain) {
        best_gain = gain;
        j = t;
      }
    }
    if (j == n) break;  // no feasible partner: violation cannot be reduced

    // Two-variable subproblem along the feasible direction.
    double a = kernel.at(i, i) + kernel.at(j, j) - 2.0 * kernel.at(i, j);
    if (a < kCurvatureFloor) a = kCurvatureFloor;
    const double old_i = sol.alphas[i], old_j = sol.alphas[j];
    double delta, lo, hi;
    if (y_pm[i] != y_pm[j]) {
      // alpha_i + delta, alpha_j + delta
      delta = -(grad[i] + grad[j]) / a;
      lo = std::max(-old_i, -old_j);
      hi = std::min(c - old_i, c - old_j);
    } else {
      // alpha_i + delta, alpha_j - delta
      delta = -(grad[i] - grad[j]) / a;
      lo = std::max(-old_i, old_j - c);
      hi = std::min(c - old_i, old_j);
    }
    delta = std::clamp(delta, lo, hi);
    sol.alphas[i] = old_i + delta;
    sol.alphas[j] = y_pm[i] != y_pm[j] ? old_j + delta : old_j - delta;

    const double di = sol.alphas[i] - old_i;
    const double dj = sol.alphas[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y_pm[t] * (y_pm[i] * kernel.at(i, t) * di + y_pm[j] * kernel.at(j, t) * dj);
    }
  }

  // Intercept from the free support vectors, or the violation midpoint when
  // every alpha sits at a bound.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (sol.alphas[t] > 0.0 && sol.alphas[t] < c) {
      free_sum += -y_pm[t] * grad[t];
      ++free_count;
    }
  }
  if (free_count > 0) {
    sol.bias = free_sum / static_cast<double>(free_count);
  } else {
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      double v = -y_pm[t] * grad[t];
      if (in_upper_set(t)) up_max = std::max(up_max, v);
      if (in_lower_set(t)) low_min = std::min(low_min, v);
    }
    sol.bias = (up_max + low_min) * 0.5;
  }
  return sol;
}

double decision_on(const Matrix& train, const std::vector<int>& y_pm,
                   const std::vector<double>& alphas, double bias, double gamma,
                   std::span<const double> x) {
  double f = bias;
  for (std::size_t i = 0; i < train.rows; ++i) {
    if (alphas[i] == 0.0) continue;
    f += alphas[i] * y_pm[i] * rbf_kernel(train.row(i), x, gamma);
  }
  return f;
}

Matrix gather_rows(const Matrix& X, const std::vector<std::size_t>& rows) {
  Matrix out(rows.size(), X.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = X.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix kernel_matrix(const Matrix& X, double gamma) {
  Matrix kernel(X.rows, X.rows);
  for (std::size_t i = 0; i < X.rows; ++i) {
    kernel.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < X.rows; ++j) {
      double k = rbf_kernel(X.row(i), X.row(j), gamma);
      kernel.at(i, j) = k;
      kernel.at(j, i) = k;
    }
  }
  return kernel;
}

}  // namespace

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma) {
  double dist2 = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    double d = u[c] - v[c];
    dist2 += d * d;
  }
  return std::exp(-gamma * dist2);
}

std::pair<double, double> fit_platt_sigmoid(std::span<const double> decision_values,
                                            std::span<const int> labels) {
  const std::size_t n = decision_values.size();
  double prior1 = 0.0;
  for (int label : labels) prior1 += label == 1 ? 1.0 : 0.0;
  const double prior0 = static_cast<double>(n) - prior1;

  const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo_target = 1.0 / (prior0 + 2.0);
  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = labels[i] == 1 ? hi_target : lo_target;

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));

  auto objective = [&](double pa, double pb) {
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double fapb = decision_values[i] * pa + pb;
      if (fapb >= 0.0) {
        value += target[i] * fapb + std::log1p(std::exp(-fapb));
      } else {
        value += (target[i] - 1.0) * fapb + std::log1p(std::exp(fapb));
      }
    }
    return value;
  };

  double fval = objective(a, b);
  constexpr double kSigma = 1e-12;  // Hessian ridge
  for (int iteration = 0; iteration < 100; ++iteration) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double fapb = decision_values[i] * a + b;
      double p, q;
      if (fapb >= 0.0) {
        p = std::exp(-fapb) / (1.0 + std::exp(-fapb));
        q = 1.0 / (1.0 + std::exp(-fapb));
      } else {
        p = 1.0 / (1.0 + std::exp(fapb));
        q = std::exp(fapb) / (1.0 + std::exp(fapb));
      }
      double d2 = p * q;
      h11 += decision_values[i] * decision_values[i] * d2;
      h22 += d2;
      h21 += decision_values[i] * d2;
      double d1 = target[i] - p;
      g1 += decision_values[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

    double det = h11 * h22 - h21 * h21;
    double da = -(h22 * g1 - h21 * g2) / det;
    double db = -(-h21 * g1 + h11 * g2) / det;
    double gd = g1 * da + g2 * db;

    double step = 1.0;
    while (step >= 1e-10) {
      double na = a + step * da;
      double nb = b + step * db;
      double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step *= 0.5;
    }
    if (step < 1e-10) break;
  }
  return {a, b};
}

SvmRbf SvmRbf::fit(const Matrix& X, const std::vector<int>& y, const SvmHyperparams& hp) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows < 2) throw TooFewRowsError("svm needs at least 2 training rows");

  std::vector<int> y_pm(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_pm[i] = y[i] == 1 ? 1 : -1;

  SvmRbf model;
  model.hp_ = hp;
  model.n_features_ = X.cols;
  model.schema_tag_ = schema_tag_for_width(X.cols);

  Matrix kernel = kernel_matrix(X, hp.gamma);
  SmoSolution full = solve_smo(X, y_pm, kernel, hp);

  // Out-of-fold decision values for the probability sigmoid: stratified
  // 5-fold split in row order (position within class modulo 5), each fold
  // scored by an SMO model trained on the remaining folds. Falls back to
  // in-sample decision values when a class is too small to fold.
  std::size_t class1 = 0;
  for (int label : y) class1 += static_cast<std::size_t>(label);
  const std::size_t class0 = y.size() - class1;
  constexpr std::size_t kFolds = 5;

  std::vector<double> platt_scores(X.rows);
  if (class0 >= kFolds && class1 >= kFolds) {
    std::vector<std::size_t> fold_of(X.rows);
    std::size_t seen0 = 0, seen1 = 0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      fold_of[i] = (y[i] == 1 ? seen1++ : seen0++) % kFolds;
    }
    for (std::size_t fold = 0; fold < kFolds; ++fold) {
      std::vector<std::size_t> train_rows, val_rows;
      for (std::size_t i = 0; i < X.rows; ++i) {
        (fold_of[i] == fold ? val_rows : train_rows).push_back(i);
      }
      Matrix fold_x = gather_rows(X, train_rows);
      std::vector<int> fold_y(train_rows.size());
      for (std::size_t i = 0; i < train_rows.size(); ++i) fold_y[i] = y_pm[train_rows[i]];
      SmoSolution fold_sol = solve_smo(fold_x, fold_y, kernel_matrix(fold_x, hp.gamma), hp);
      for (std::size_t i : val_rows) {
        platt_scores[i] =
            decision_on(fold_x, fold_y, fold_sol.alphas, fold_sol.bias, hp.gamma, X.row(i));
      }
    }
  } else {
    for (std::size_t i = 0; i < X.rows; ++i) {
      platt_scores[i] = decision_on(X, y_pm, full.alphas, full.bias, hp.gamma, X.row(i));
    }
  }
  std::tie(model.sigmoid_a_, model.sigmoid_b_) = fit_platt_sigmoid(platt_scores, y);

  // Keep only the support vectors.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < X.rows; ++i) {
    if (full.alphas[i] > 1e-12) support.push_back(i);
  }
  model.support_vectors_ = gather_rows(X, support);
  model.dual_coefficients_.resize(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    model.dual_coefficients_[i] = full.alphas[support[i]] * y_pm[support[i]];
  }
  model.bias_ = full.bias;
  return model;
}

const std::string& SvmRbf::family() const { return kFamily; }

double SvmRbf::decision_value(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw SchemaMismatchError("expected " + std::to_string(n_features_) + " features, got " +
                              std::to_string(x.size()));
  }
  double f = bias_;
  for (std::size_t i = 0; i < support_vectors_.rows; ++i) {
    f += dual_coefficients_[i] * rbf_kernel(support_vectors_.row(i), x, hp_.gamma);
  }
  return f;
}

double SvmRbf::predict_proba(std::span<const double> x) const {
  return detail::sigmoid(-(sigmoid_a_ * decision_value(x) + sigmoid_b_));
}

void SvmRbf::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"c", hp_.c},
                      {"gamma", hp_.gamma},
                      {"kkt_tolerance", hp_.kkt_tolerance},
                      {"max_pair_updates", hp_.max_pair_updates}};
  nlohmann::ordered_json vectors = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < support_vectors_.rows; ++i) {
    auto row = support_vectors_.row(i);
    vectors.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["params"] = {{"n_features", n_features_},
                 {"support_vectors", std::move(vectors)},
                 {"dual_coefficients", dual_coefficients_},
                 {"bias", bias_},
                 {"sigmoid_a", sigmoid_a_},
                 {"sigmoid_b", sigmoid_b_}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
