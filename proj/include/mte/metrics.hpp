#pragma once

#include "mte/types.hpp"

namespace mte {

// (1/n) (beta_hat - beta0)' X'X (beta_hat - beta0), computed as |X d|^2 / n.
double model_error(const Vector& beta_hat, const Vector& beta0, const Matrix& X);

// Counts use exact-zero semantics: a coefficient is "selected" iff nonzero.
// fnr/fpr are empty when the truth has no nonzeros / no zeros.
struct SelectionScore {
  int tp = 0;
  int fp = 0;
  std::optional<double> fnr;
  std::optional<double> fpr;
};

SelectionScore selection_score(const Vector& beta_hat, const Vector& beta0);

// mean squared prediction error (1/n) |y - X beta - intercept|^2
double mspe(const Vector& beta_hat, double intercept, const Dataset& data);

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double mad = 0.0;  // median absolute deviation about the median, unscaled
};

Summary summarize(const std::vector<double>& values);

}  // namespace mte
