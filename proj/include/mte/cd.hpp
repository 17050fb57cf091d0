#pragma once

#include "mte/types.hpp"

namespace mte {

// S(z, g) = sign(z) max(|z| - g, 0)
double soft_threshold(double z, double gamma);

struct CdOptions {
  double tol = 1e-7;      // max |delta beta_j| per sweep
  int max_sweeps = 10000;
  // When set, the penalized objective is appended after every single
  // coordinate update (test instrumentation; slow).
  std::vector<double>* objective_trace = nullptr;
};

struct CdResult {
  Vector beta;
  bool converged = false;
  int sweeps = 0;
};

// Cyclic coordinate descent for
//   (1/2n) sum_i w_i (y_i - x_i' beta)^2 + sum_j lambda_j |beta_j|
// with per-observation weights w_i in [0, 1] (at least one positive) and
// per-coordinate penalties lambda_j >= 0. An unpenalized intercept is
// expressed as a ones column with lambda_j = 0. Zero-weight observations
// contribute nothing to any inner product. After the first full sweep the
// iteration cycles over the active set until stable, then re-runs a full
// sweep to verify (and picks up activations); both kinds count toward
// max_sweeps. Coordinates whose weighted column norm vanishes stay at zero.
CdResult solve_weighted_lasso(const Matrix& X, const Vector& y, const Vector& w,
                              const Vector& lambda, const Vector& beta_start,
                              const CdOptions& opts = {});

// value of the CD objective above (test/diagnostic helper)
double weighted_lasso_objective(const Matrix& X, const Vector& y, const Vector& w,
                                const Vector& lambda, const Vector& beta);

struct Standardization {
  Vector mean;   // column means
  Vector scale;  // column sample standard deviations (n-1 denominator)
};

// Center and scale columns to mean 0 / sd 1. A constant column (zero sd) is
// an error. Returns the transformed copy and fills *out.
Matrix standardize(const Matrix& X, Standardization* out);

// Map coefficients of the standardized fit back to the raw scale:
//   beta_raw_j = beta_std_j / scale_j
//   intercept_raw = intercept_std - sum_j beta_std_j mean_j / scale_j
// so predictions computed either way agree.
void destandardize(Vector* beta, double* intercept, const Standardization& s);

}  // namespace mte
