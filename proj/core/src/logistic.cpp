#include "stylo/models/logistic.hpp"

#include <cmath>

#include "math_util.hpp"
#include "model_io.hpp"

namespace stylo {

namespace {
const std::string kFamily = "logistic_regression";
}

LogisticRegression LogisticRegression::fit(const Matrix& X, const std::vector<int>& y,
                                           const LogisticHyperparams& hp) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows == 0) throw TooFewRowsError("logistic regression needs training rows");

  LogisticRegression model;
  model.hp_ = hp;
  model.schema_tag_ = schema_tag_for_width(X.cols);
  model.weights_.assign(X.cols, 0.0);
  model.bias_ = 0.0;

  const auto n = static_cast<double>(X.rows);
  std::vector<double> grad(X.cols);
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    double loss = 0.0;
    for (std::size_t r = 0; r < X.rows; ++r) {
      auto row = X.row(r);
      double z = model.bias_;
      for (std::size_t c = 0; c < row.size(); ++c) z += model.weights_[c] * row[c];
      loss += detail::logistic_loss(z, y[r]);
      double residual = detail::sigmoid(z) - static_cast<double>(y[r]);
      for (std::size_t c = 0; c < row.size(); ++c) grad[c] += residual * row[c];
      grad_bias += residual;
    }
    loss /= n;
    for (std::size_t c = 0; c < X.cols; ++c) {
      loss += 0.5 * hp.l2_lambda * model.weights_[c] * model.weights_[c];
    }
    if (!std::isfinite(loss)) {
      throw NonFiniteLossError("logistic regression diverged at epoch " + std::to_string(epoch));
    }
    for (std::size_t c = 0; c < X.cols; ++c) {
      model.weights_[c] -= hp.learning_rate * (grad[c] / n + hp.l2_lambda * model.weights_[c]);
    }
    model.bias_ -= hp.learning_rate * grad_bias / n;
  }
  for (double w : model.weights_) {
    if (!std::isfinite(w)) throw NonFiniteLossError("logistic regression weights diverged");
  }
  return model;
}

void LogisticRegression::set_params(std::vector<double> weights, double bias) {
  if (!weights_.empty() && weights.size() != weights_.size()) {
    throw SchemaMismatchError("weight width cannot change");
  }
  weights_ = std::move(weights);
  bias_ = bias;
}

const std::string& LogisticRegression::family() const { return kFamily; }

double LogisticRegression::predict_proba(std::span<const double> x) const {
  if (x.size() != weights_.size()) {
    throw SchemaMismatchError("expected " + std::to_string(weights_.size()) + " features, got " +
                              std::to_string(x.size()));
  }
  double z = bias_;
  for (std::size_t c = 0; c < x.size(); ++c) z += weights_[c] * x[c];
  return detail::sigmoid(z);
}

LogisticRegression::LossGrad LogisticRegression::loss_and_gradients(const Matrix& X,
                                                                    const std::vector<int>& y,
                                                                    double l2_lambda) const {
  LossGrad out;
  out.d_weights.assign(weights_.size(), 0.0);
  const auto n = static_cast<double>(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) {
    auto row = X.row(r);
    double z = bias_;
    for (std::size_t c = 0; c < row.size(); ++c) z += weights_[c] * row[c];
    out.loss += detail::logistic_loss(z, y[r]);
    double residual = detail::sigmoid(z) - static_cast<double>(y[r]);
    for (std::size_t c = 0; c < row.size(); ++c) out.d_weights[c] += residual * row[c];
    out.d_bias += residual;
  }
  out.loss /= n;
  out.d_bias /= n;
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    out.loss += 0.5 * l2_lambda * weights_[c] * weights_[c];
    out.d_weights[c] = out.d_weights[c] / n + l2_lambda * weights_[c];
  }
  return out;
}

void LogisticRegression::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"l2_lambda", hp_.l2_lambda},
                      {"learning_rate", hp_.learning_rate},
                      {"epochs", hp_.epochs}};
  j["params"] = {{"weights", weights_}, {"bias", bias_}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
