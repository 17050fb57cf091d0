#pragma once

#include <cstdint>
#include <functional>

#include "mte/loss.hpp"
#include "mte/types.hpp"

namespace mte {

struct CovEstimate {
  Matrix cov;      // estimated covariance of the active coefficients
  Matrix j_hat;    // (1/n) sum m''(r_i) x_iS x_iS'
  Matrix sigma2;   // sample covariance of the scores (mean-centered)
  double log_det = 0.0;  // log det of cov
};

// Plug-in sandwich covariance of the active coefficients at beta_hat:
//   (1/n) (J + S1)^-1 Sigma2 (J + S1)^-1
// where S1 = diag(penalty_second_deriv) (zero for the l1 family, the
// default). active_set indexes columns of X; it must be nonempty and smaller
// than n. Throws SingularCovarianceError when J + S1 is not invertible or
// the resulting covariance has no positive determinant.
CovEstimate estimate_asymptotic_cov(const Dataset& data, const Vector& beta_hat,
                                    const std::vector<Eigen::Index>& active_set,
                                    const LossParams& params,
                                    const Vector& penalty_second_deriv = Vector());

// Minimize log det of the sandwich covariance over the t grid. Grid points
// where the covariance is singular are skipped; ties within 1e-10 (relative,
// i.e. absolute in log) break toward the smaller t. Throws TuningError when
// every point is singular.
double select_t(const Dataset& data, const Vector& beta_hat,
                const std::vector<Eigen::Index>& active_set,
                const LossParams& params, const std::vector<double>& grid);

// default grid: 20 equispaced points on (0, 0.2], i.e. 0.01, 0.02, ..., 0.20
std::vector<double> default_t_grid();

// Per-coefficient adaptive penalties lambda_j = ln(n) / (n max(|b_j|, floor)),
// floor = floor_frac * max_j |b_j| (1e-8 if that is zero).
Vector select_lambda_bic(const Vector& beta_tilde, Eigen::Index n,
                         double floor_frac = 1e-4);

// Largest penalty with a nonzero solution under the given weights:
// max over penalized j of |(1/n) sum w_i x_ij (y_i - wmean)| / max(mean w, eps),
// centered only when an intercept is present. Grid is log-spaced from
// lambda_max down to min_ratio * lambda_max.
std::vector<double> lambda_grid(const Matrix& X, const Vector& y, const Vector& w,
                                bool intercept, int size, double min_ratio);

// Fits one model on training data at a given penalty; returns coefficients
// and intercept for prediction on the held-out fold.
struct CvPrediction {
  Vector beta;
  double intercept = 0.0;
};
using CvFitFunction =
    std::function<CvPrediction(const Dataset& train, double lambda)>;

// K-fold cross-validation scored by the mean over folds of median |y - yhat|.
// Folds are contiguous blocks of a seeded shuffle. Candidates are evaluated
// in descending order after deduplication; exact ties keep the larger
// lambda. A candidate where any fold fit throws is skipped; if all are
// skipped, TuningError.
double select_lambda_cv(const Dataset& data, const CvFitFunction& fit,
                        std::vector<double> grid, int k_folds, std::uint64_t seed);

// fold assignment used by select_lambda_cv (exposed for tests)
std::vector<int> cv_fold_ids(Eigen::Index n, int k_folds, std::uint64_t seed);

}  // namespace mte
