#pragma once

#include <cstdint>

#include "mte/loss.hpp"
#include "mte/types.hpp"

namespace mte {

enum class LossKind { Mte, Huber, Lad, Ols };
enum class PenaltyKind { None, Lasso, AdaptiveLasso };

struct TSelection {
  bool grid = true;          // tune t on the grid; otherwise use fixed_t
  double fixed_t = 0.0;
  std::vector<double> grid_values;  // empty = default (0, 0.2] x 20
  bool freeze_after_first = false;  // keep the first successful selection
};

struct LambdaSelection {
  enum class Mode { Fixed, BicRule, Cv } mode = Mode::BicRule;
  double fixed_value = 0.0;
  Vector fixed_values;  // optional per-coefficient penalties (Fixed mode)
  int cv_folds = 5;
  int cv_grid_size = 50;
  double cv_min_ratio = 1e-3;
};

struct FitConfig {
  LossKind loss = LossKind::Mte;
  PenaltyKind penalty = PenaltyKind::AdaptiveLasso;
  TSelection t_sel;
  LambdaSelection lambda_sel;
  int p_order = 1;           // Taylor order of the tangent extension
  double huber_k = 1.345;
  bool intercept = false;
  bool refresh_sigma = true;  // re-estimate sigma_R from residuals each pass
  double outer_tol = 1e-6;
  int outer_max_iter = 100;
  double cd_tol = 1e-7;
  int cd_max_sweeps = 10000;
  int multistart = 1;         // extra seeded restarts, best objective wins
  std::uint64_t seed = 0;     // drives CV folds and multistart jitter
};

// Throws std::invalid_argument for contradictory settings. Adaptive-lasso
// pairs with the BIC rule; plain lasso pairs with a fixed or CV lambda;
// penalty none ignores lambda entirely.
void validate(const FitConfig& config);

struct FitResult {
  Vector beta;                // covariate coefficients (intercept excluded)
  double intercept = 0.0;
  bool has_intercept = false;
  std::vector<Eigen::Index> active_set;  // indices of nonzero beta entries
  Vector weights;             // final observation weights
  double t_used = 0.0;        // 0 whenever the loss has no truncation
  Vector lambda_used;         // per-coefficient penalties actually applied
  double sigma_r = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  // objective at each outer iterate, all under the final tuning state
  std::vector<double> objective_trace;
  double objective = 0.0;               // final penalized objective
};

// Unpenalized fit at fixed loss parameters: iterate weighted least squares
// with weights from the previous residuals until both the step and the
// weighted score vanish. No intercept handling; augment X beforehand.
FitResult fit_mte(const Dataset& data, const LossParams& params,
                  const Vector& beta_init, double tol = 1e-9, int max_iter = 500);

// Penalized fit with the two-step scheme: a robust initial estimate fixes
// the starting point and scale, then each outer pass re-selects the tuning
// parameters (as configured), recomputes the weights at the current
// coefficients, and solves the weighted lasso. With a CV lambda the penalty
// level is chosen once, up front. On non-convergence the iterate with the
// best objective (evaluated at the final tuning state) is returned, flagged.
FitResult fit_penalized_mte(const Dataset& data, const FitConfig& config);

// Baselines through the same machinery: "ols" (unpenalized least squares),
// "lasso" (penalized least squares), "huber" and "lad" (penalized robust
// weights). lambda < 0 requests the config default (BIC rule).
FitResult fit_baseline(const std::string& method, const Dataset& data,
                       double lambda = -1.0);

// Unified entry: dispatches on config.loss.
FitResult fit(const Dataset& data, const FitConfig& config);

}  // namespace mte
