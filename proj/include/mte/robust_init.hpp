#pragma once

#include "mte/types.hpp"

namespace mte {

struct LadResult {
  Vector beta;
  bool converged = false;
  int iterations = 0;
  bool rank_deficient = false;  // solution not unique; one minimizer returned
};

// Least absolute deviations via IRLS on the smoothed objective
// sum_i sqrt(r_i^2 + eps^2), eps = 1e-6 * sd(y) (1.0 when sd(y) = 0).
// Requires n >= X.cols(). X is used as given; append a ones column for an
// intercept before calling.
LadResult fit_lad(const Matrix& X, const Vector& y, double tol = 1e-9,
                  int max_iter = 200);

// 1.4826 * median(|r - median(r)|). When the MAD is exactly zero falls back
// to 1.4826 * mean(|r - median(r)|); if that is also zero the scale is
// degenerate and DegenerateScaleError is thrown.
double mad_scale(const Vector& residuals);

struct InitEstimate {
  Vector beta;        // length X.cols(); excludes the intercept
  double intercept = 0.0;
  double sigma_r = 0.0;
  bool rank_deficient = false;
};

// Initial estimate feeding the two-step fits. When n exceeds the number of
// fitted coefficients this is the LAD fit; otherwise (high-dimensional case)
// the zero vector with a median-of-y intercept. sigma_r is the MAD scale of
// the resulting residuals.
InitEstimate initial_estimate(const Dataset& data, bool intercept);

}  // namespace mte
