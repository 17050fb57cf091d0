#include "mte/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mte {

double model_error(const Vector& beta_hat, const Vector& beta0, const Matrix& X) {
  if (beta_hat.size() != beta0.size() || beta_hat.size() != X.cols())
    throw std::invalid_argument("model_error: dimension mismatch");
  if (X.rows() == 0) throw std::invalid_argument("model_error: empty design");
  return (X * (beta_hat - beta0)).squaredNorm() / static_cast<double>(X.rows());
}

SelectionScore selection_score(const Vector& beta_hat, const Vector& beta0) {
  if (beta_hat.size() != beta0.size())
    throw std::invalid_argument("selection_score: dimension mismatch");
  int true_nonzero = 0, true_zero = 0, missed = 0;
  SelectionScore s;
  for (Eigen::Index j = 0; j < beta0.size(); ++j) {
    bool sel = beta_hat[j] != 0.0;
    if (beta0[j] != 0.0) {
      ++true_nonzero;
      if (sel) ++s.tp; else ++missed;
    } else {
      ++true_zero;
      if (sel) ++s.fp;
    }
  }
  if (true_nonzero > 0) s.fnr = static_cast<double>(missed) / true_nonzero;
  if (true_zero > 0) s.fpr = static_cast<double>(s.fp) / true_zero;
  return s;
}

double mspe(const Vector& beta_hat, double intercept, const Dataset& data) {
  if (beta_hat.size() != data.d())
    throw std::invalid_argument("mspe: dimension mismatch");
  if (data.n() == 0) throw std::invalid_argument("mspe: empty data");
  return (data.y.array() - (data.X * beta_hat).array() - intercept)
             .square()
             .mean();
}

namespace {
double median_inplace(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  Summary s;
  s.mean = 0.0;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  std::vector<double> tmp = values;
  s.median = median_inplace(tmp);
  for (double& v : tmp) v = std::abs(v - s.median);
  s.mad = median_inplace(tmp);
  return s;
}

}  // namespace mte
