#pragma once

#include <cstdint>

#include "mte/cd.hpp"
#include "mte/csv.hpp"
#include "mte/fit.hpp"
#include "mte/metrics.hpp"
#include "mte/simgen.hpp"
#include "mte/types.hpp"

// Monte Carlo and real-data harness shared by the command line tool and the
// acceptance suite.

namespace mte::bench {

struct MethodSpec {
  std::string name;   // mte | huber | lad | lasso | ols
  LossKind loss = LossKind::Mte;
  bool penalized = true;
};

// comma separated list; unknown names raise std::invalid_argument
std::vector<MethodSpec> parse_methods(const std::string& list);

// Tuning protocol applied to every penalized method in a run.
struct Protocol {
  PenaltyKind penalty = PenaltyKind::AdaptiveLasso;
  LambdaSelection lambda_sel;  // BIC rule by default
  TSelection t_sel;            // grid by default; only the tangent loss uses it
  int p_order = 1;
  bool intercept = false;
  bool refresh_sigma = true;
  int multistart = 1;

  Protocol() {
    // Benchmarks pick t once, at the robust seed state. Re-selecting every
    // pass ratchets t upward on weak-signal data: shrinkage bias inflates the
    // residuals, the noisy covariance determinant then favors a larger t,
    // heavier trimming shrinks the fit further. The seed residuals are the
    // cleanest view of contamination the loop ever has.
    t_sel.freeze_after_first = true;
  }
};

FitConfig make_config(const MethodSpec& method, const Protocol& proto,
                      std::uint64_t seed);

struct MethodSummary {
  std::string method;
  int reps = 0;
  int failures = 0;
  // means over successful replications; empty when undefined for the design
  std::optional<double> fnr, fpr, tp, fp;
  std::optional<Summary> me;
  double wall_seconds = 0.0;
};

struct ExperimentReport {
  sim::SimDesign design;
  std::vector<MethodSummary> rows;

  StringTable to_table() const;  // method,fnr,fpr,tp,fp,me_mean,me_median,me_mad,wall_time
  KvPairs metadata() const;
};

ExperimentReport run_experiment(const sim::SimDesign& design,
                                const std::vector<MethodSpec>& methods,
                                const Protocol& proto, int threads);

// --- real data ---------------------------------------------------------

// Numeric frame after transforms, plus the standardized view used for
// fitting. Standardization covers the response and every predictor.
struct Frame {
  std::vector<std::string> predictors;
  std::string response;
  Matrix x_raw;   // after log transforms
  Vector y_raw;
  long dropped_rows = 0;

  Dataset std_data;
  Standardization x_std;
  double y_mean = 0.0, y_scale = 1.0;
};

// log_cols entries must name existing columns with strictly positive values.
// Rows with missing cells are dropped when drop_missing, otherwise DataError.
Frame prepare_frame(const Table& raw, const std::string& response,
                    const std::vector<std::string>& log_cols, bool drop_missing);

struct RealFit {
  FitResult std_fit;   // standardized scale
  Vector beta_raw;
  double intercept_raw = 0.0;
};

// Fits on the standardized data (intercept always on) and maps back.
RealFit fit_frame(const Frame& frame, FitConfig config);

struct BootstrapRow {
  std::string variable;
  double estimate = 0.0;            // standardized scale, full-data fit
  std::optional<double> se;         // empty when B < 2
  std::optional<double> frequency;  // empty for the intercept row
};

struct BootstrapReport {
  std::vector<BootstrapRow> rows;
  int b_requested = 0;
  int failures = 0;
  bool reliable = true;  // false when failures exceed 20%
  RealFit full;

  StringTable to_table() const;  // variable,estimate,se,selection_frequency
  KvPairs metadata() const;
};

// Case-resampling bootstrap. Tuning parameters are re-selected on every
// resample unless freeze_tuning, which reuses the full-data t and
// per-coefficient penalties.
BootstrapReport run_bootstrap(const Frame& frame, const FitConfig& config, int B,
                              std::uint64_t seed, bool freeze_tuning, int threads);

struct SplitRow {
  std::string method;
  double mspe_mean = 0.0, mspe_sd = 0.0;
  double size_mean = 0.0, size_sd = 0.0;
  int failures = 0;
};

struct SplitReport {
  std::vector<SplitRow> rows;
  int splits = 0;

  StringTable to_table() const;  // method,mspe_mean,mspe_sd,size_mean,size_sd
  KvPairs metadata() const;
};

// Random train/test splits; standardization is computed on each training
// part only. MSPE is on the raw response scale; size counts selected
// predictors.
SplitReport run_split_eval(const Frame& frame, const std::vector<MethodSpec>& methods,
                           const Protocol& proto, int splits, double train_fraction,
                           std::uint64_t seed, int threads);

void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace mte::bench
