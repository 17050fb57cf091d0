#include "mte/robust_init.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace mte {

namespace {

double median_of(Vector v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw std::invalid_argument("median of empty vector");
  std::sort(v.data(), v.data() + n);
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sd_of(const Vector& v) {
  const Eigen::Index n = v.size();
  if (n < 2) return 0.0;
  double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(n - 1));
}

// Weighted least squares through column-pivoted QR of diag(sqrt(w)) X.
// Reports rank deficiency through *rank_deficient (sticky).
Vector wls_solve(const Matrix& X, const Vector& y, const Vector& w,
                 bool* rank_deficient) {
  Vector sw = w.array().sqrt();
  Matrix Xw = sw.asDiagonal() * X;
  Vector yw = sw.asDiagonal() * y;
  Eigen::ColPivHouseholderQR<Matrix> qr(Xw);
  if (qr.rank() < X.cols()) *rank_deficient = true;
  return qr.solve(yw);
}

}  // namespace

LadResult fit_lad(const Matrix& X, const Vector& y, double tol, int max_iter) {
  if (X.rows() != y.size()) throw std::invalid_argument("fit_lad: X rows != y length");
  if (X.rows() < X.cols())
    throw std::invalid_argument("fit_lad: requires n >= number of columns");
  if (y.size() == 0) throw std::invalid_argument("fit_lad: empty data");

  double sy = sd_of(y);
  double eps = 1e-6 * (sy > 0.0 ? sy : 1.0);

  LadResult out;
  // start from the least-squares fit (unit weights)
  Vector w = Vector::Ones(y.size());
  out.beta = wls_solve(X, y, w, &out.rank_deficient);
  for (int it = 1; it <= max_iter; ++it) {
    Vector r = y - X * out.beta;
    w = (r.array().square() + eps * eps).rsqrt().matrix();
    Vector next = wls_solve(X, y, w, &out.rank_deficient);
    double step = (next - out.beta).cwiseAbs().maxCoeff();
    out.beta = next;
    out.iterations = it;
    if (step <= tol * std::max(1.0, out.beta.cwiseAbs().maxCoeff())) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double mad_scale(const Vector& residuals) {
  if (residuals.size() == 0) throw std::invalid_argument("mad_scale: empty residuals");
  double med = median_of(residuals);
  Vector dev = (residuals.array() - med).abs().matrix();
  double mad = median_of(dev);
  if (mad > 0.0) return 1.4826 * mad;
  double fallback = dev.mean();
  if (fallback > 0.0) return 1.4826 * fallback;
  throw DegenerateScaleError("residual scale degenerate: MAD and mean absolute deviation are both zero");
}

InitEstimate initial_estimate(const Dataset& data, bool intercept) {
  if (data.X.rows() != data.y.size())
    throw std::invalid_argument("initial_estimate: X rows != y length");
  const Eigen::Index n = data.n();
  const Eigen::Index d = data.d() + (intercept ? 1 : 0);

  InitEstimate out;
  if (n > d) {
    Matrix A;
    if (intercept) {
      A.resize(n, d);
      A.col(0).setOnes();
      A.rightCols(data.d()) = data.X;
    } else {
      A = data.X;
    }
    LadResult lad = fit_lad(A, data.y);
    out.rank_deficient = lad.rank_deficient;
    if (intercept) {
      out.intercept = lad.beta[0];
      out.beta = lad.beta.tail(data.d());
    } else {
      out.beta = lad.beta;
    }
    out.sigma_r = mad_scale(data.y - A * lad.beta);
  } else {
    // high-dimensional case: zero slope vector, median intercept
    out.beta = Vector::Zero(data.d());
    out.intercept = intercept ? median_of(data.y) : 0.0;
    out.sigma_r = mad_scale((data.y.array() - out.intercept).matrix());
  }
  return out;
}

}  // namespace mte
