#pragma once

// Internal numeric helpers shared by the learners. Not installed.

#include <cmath>

namespace stylo::detail {

inline double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(t)) without overflow.
inline double log1pexp(double t) {
  if (t > 35.0) return t;
  return std::log1p(std::exp(t));
}

/// Mean logistic loss term for one sample given the raw score z.
inline double logistic_loss(double z, int label) {
  return label == 1 ? log1pexp(-z) : log1pexp(z);
}

}  // namespace stylo::detail
