#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mte {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Regression data. X has one row per observation, no intercept column;
// beta0 is the generating coefficient vector when known (simulations).
struct Dataset {
  Vector y;
  Matrix X;
  std::optional<Vector> beta0;
  std::vector<std::string> names;  // X column names, may be empty

  Eigen::Index n() const { return y.size(); }
  Eigen::Index d() const { return X.cols(); }
};

// Residual scale collapsed (MAD and its fallback both zero).
struct DegenerateScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every observation ended up with zero weight; no estimating information left.
struct NoInformationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sandwich covariance not invertible on the requested active set.
struct SingularCovarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tuning-parameter selection had no usable candidate.
struct TuningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library version, reported in benchmark metadata.
inline constexpr const char* kVersion = "1.0.0";

// Malformed input data; line is 1-based when known.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg, long line_ = -1)
      : std::runtime_error(msg), line(line_) {}
  long line;
};

}  // namespace mte
