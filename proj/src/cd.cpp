#include "mte/cd.hpp"

#include <cmath>

namespace mte {

double soft_threshold(double z, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("soft_threshold: gamma must be >= 0");
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

double weighted_lasso_objective(const Matrix& X, const Vector& y, const Vector& w,
                                const Vector& lambda, const Vector& beta) {
  Vector r = y - X * beta;
  double quad = 0.5 * (w.array() * r.array().square()).sum() / static_cast<double>(y.size());
  return quad + (lambda.array() * beta.array().abs()).sum();
}

namespace {

struct Workspace {
  const Matrix& X;
  const Vector& y;
  const Vector& w;
  const Vector& lambda;
  Vector beta;
  Vector r;      // y - X beta
  Vector a;      // (1/n) sum_i w_i x_ij^2
  double n;
  const CdOptions& opts;

  // One pass over `cols`; returns max |delta beta_j|.
  template <typename Cols>
  double sweep(const Cols& cols) {
    double max_delta = 0.0;
    for (Eigen::Index j : cols) {
      if (a[j] <= 0.0) {
        if (beta[j] != 0.0) {
          r += X.col(j) * beta[j];
          max_delta = std::max(max_delta, std::abs(beta[j]));
          beta[j] = 0.0;
        }
        continue;
      }
      double z = (w.array() * r.array() * X.col(j).array()).sum() / n + a[j] * beta[j];
      double next = soft_threshold(z, lambda[j]) / a[j];
      double delta = next - beta[j];
      if (delta != 0.0) {
        r -= X.col(j) * delta;
        beta[j] = next;
        max_delta = std::max(max_delta, std::abs(delta));
      }
      if (opts.objective_trace)
        opts.objective_trace->push_back(
            weighted_lasso_objective(X, y, w, lambda, beta));
    }
    return max_delta;
  }
};

}  // namespace

CdResult solve_weighted_lasso(const Matrix& X, const Vector& y, const Vector& w,
                              const Vector& lambda, const Vector& beta_start,
                              const CdOptions& opts) {
  const Eigen::Index n = X.rows(), d = X.cols();
  if (y.size() != n || w.size() != n)
    throw std::invalid_argument("solve_weighted_lasso: row count mismatch");
  if (lambda.size() != d || beta_start.size() != d)
    throw std::invalid_argument("solve_weighted_lasso: column count mismatch");
  if (n == 0 || d == 0) throw std::invalid_argument("solve_weighted_lasso: empty problem");
  if ((w.array() < 0.0).any() || (w.array() > 1.0).any())
    throw std::invalid_argument("solve_weighted_lasso: weights must lie in [0, 1]");
  if (!(w.array() > 0.0).any())
    throw NoInformationError("solve_weighted_lasso: all observation weights are zero");
  if ((lambda.array() < 0.0).any())
    throw std::invalid_argument("solve_weighted_lasso: penalties must be >= 0");
  if (!(opts.tol > 0.0) || opts.max_sweeps < 1)
    throw std::invalid_argument("solve_weighted_lasso: bad options");

  Workspace ws{X, y, w, lambda, beta_start, Vector(), Vector(d),
               static_cast<double>(n), opts};
  ws.r = y - X * beta_start;
  for (Eigen::Index j = 0; j < d; ++j)
    ws.a[j] = (w.array() * X.col(j).array().square()).sum() / ws.n;

  std::vector<Eigen::Index> all(d);
  for (Eigen::Index j = 0; j < d; ++j) all[j] = j;

  CdResult out;
  bool converged = false;
  int sweeps = 0;
  while (sweeps < opts.max_sweeps) {
    double delta = ws.sweep(all);
    ++sweeps;
    if (delta <= opts.tol) {
      converged = true;
      break;
    }
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < d; ++j)
      if (ws.beta[j] != 0.0) active.push_back(j);
    while (sweeps < opts.max_sweeps) {
      double da = ws.sweep(active);
      ++sweeps;
      if (da <= opts.tol) break;
    }
  }
  out.beta = std::move(ws.beta);
  out.converged = converged;
  out.sweeps = sweeps;
  return out;
}

Matrix standardize(const Matrix& X, Standardization* out) {
  const Eigen::Index n = X.rows(), d = X.cols();
  if (n < 2) throw std::invalid_argument("standardize: need at least two rows");
  if (!out) throw std::invalid_argument("standardize: null output");
  out->mean = X.colwise().mean().transpose();
  Matrix C = X.rowwise() - out->mean.transpose();
  out->scale = (C.array().square().colwise().sum() / static_cast<double>(n - 1))
                   .sqrt()
                   .matrix()
                   .transpose();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(out->scale[j] > 0.0))
      throw std::invalid_argument("standardize: column " + std::to_string(j) +
                                  " is constant");
    C.col(j) /= out->scale[j];
  }
  return C;
}

void destandardize(Vector* beta, double* intercept, const Standardization& s) {
  if (!beta || !intercept) throw std::invalid_argument("destandardize: null arguments");
  if (beta->size() != s.scale.size() || beta->size() != s.mean.size())
    throw std::invalid_argument("destandardize: dimension mismatch");
  double shift = 0.0;
  for (Eigen::Index j = 0; j < beta->size(); ++j) {
    shift += (*beta)[j] * s.mean[j] / s.scale[j];
    (*beta)[j] /= s.scale[j];
  }
  *intercept -= shift;
}

}  // namespace mte
