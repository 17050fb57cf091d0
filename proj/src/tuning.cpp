#include "mte/tuning.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mte/rng.hpp"

namespace mte {

namespace {

void check_active_set(const std::vector<Eigen::Index>& active, Eigen::Index n,
                      Eigen::Index d) {
  if (active.empty())
    throw std::invalid_argument("active set is empty");
  if (static_cast<Eigen::Index>(active.size()) >= n)
    throw std::invalid_argument("active set at least as large as n");
  std::vector<Eigen::Index> sorted = active;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("active set has duplicates");
  if (sorted.front() < 0 || sorted.back() >= d)
    throw std::invalid_argument("active set index out of range");
}

}  // namespace

CovEstimate estimate_asymptotic_cov(const Dataset& data, const Vector& beta_hat,
                                    const std::vector<Eigen::Index>& active_set,
                                    const LossParams& params,
                                    const Vector& penalty_second_deriv) {
  validate(params);
  const Eigen::Index n = data.n();
  if (beta_hat.size() != data.d())
    throw std::invalid_argument("estimate_asymptotic_cov: beta length mismatch");
  check_active_set(active_set, n, data.d());
  const Eigen::Index s = static_cast<Eigen::Index>(active_set.size());
  if (penalty_second_deriv.size() != 0 && penalty_second_deriv.size() != s)
    throw std::invalid_argument("estimate_asymptotic_cov: penalty curvature length");

  Vector r = data.y - data.X * beta_hat;
  Matrix Xs(n, s);
  for (Eigen::Index k = 0; k < s; ++k) Xs.col(k) = data.X.col(active_set[k]);

  double s2 = params.sigma_r * params.sigma_r;
  Vector curv(n), score_scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    curv[i] = loss_curvature(r[i], params);
    double w = weight(residual_density(r[i], params.sigma_r), params);
    score_scale[i] = w * r[i] / s2;
  }

  CovEstimate out;
  out.j_hat = Xs.transpose() * curv.asDiagonal() * Xs / static_cast<double>(n);
  Matrix scores = score_scale.asDiagonal() * Xs;  // row i = s_i'
  Vector mean_score = scores.colwise().mean().transpose();
  Matrix centered = scores.rowwise() - mean_score.transpose();
  out.sigma2 = centered.transpose() * centered / static_cast<double>(n);

  Matrix m = out.j_hat;
  if (penalty_second_deriv.size() == s)
    m += Matrix(penalty_second_deriv.asDiagonal());
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible())
    throw SingularCovarianceError("curvature matrix not invertible on active set");
  Matrix minv = lu.inverse();
  out.cov = minv * out.sigma2 * minv.transpose() / static_cast<double>(n);
  out.cov = 0.5 * (out.cov + out.cov.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(out.cov);
  if (eig.info() != Eigen::Success)
    throw SingularCovarianceError("eigendecomposition of covariance failed");
  const Vector& ev = eig.eigenvalues();
  double max_ev = ev.maxCoeff();
  if (!(max_ev > 0.0) || !std::isfinite(max_ev) ||
      ev.minCoeff() <= 1e-13 * max_ev)
    throw SingularCovarianceError("covariance estimate is singular");
  out.log_det = ev.array().log().sum();
  return out;
}

std::vector<double> default_t_grid() {
  std::vector<double> g(20);
  for (int i = 0; i < 20; ++i) g[i] = 0.01 * (i + 1);
  return g;
}

double select_t(const Dataset& data, const Vector& beta_hat,
                const std::vector<Eigen::Index>& active_set,
                const LossParams& params, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("select_t: empty grid");
  std::vector<double> g = grid;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  for (double t : g)
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("select_t: grid values must be finite and > 0");

  bool found = false;
  double best_t = 0.0, best_ld = 0.0;
  for (double t : g) {
    LossParams p = params;
    p.t = t;
    double ld;
    try {
      ld = estimate_asymptotic_cov(data, beta_hat, active_set, p).log_det;
    } catch (const SingularCovarianceError&) {
      continue;
    }
    if (!std::isfinite(ld)) continue;
    // ties within 1e-10 relative determinant go to the smaller (earlier) t
    if (!found || ld < best_ld - 1e-10) {
      found = true;
      best_t = t;
      best_ld = ld;
    }
  }
  if (!found)
    throw TuningError("select_t: covariance singular at every grid point");
  return best_t;
}

Vector select_lambda_bic(const Vector& beta_tilde, Eigen::Index n, double floor_frac) {
  if (n < 2) throw std::invalid_argument("select_lambda_bic: n must be >= 2");
  if (beta_tilde.size() == 0)
    throw std::invalid_argument("select_lambda_bic: empty coefficient vector");
  if (!(floor_frac > 0.0))
    throw std::invalid_argument("select_lambda_bic: floor_frac must be > 0");
  double max_abs = beta_tilde.cwiseAbs().maxCoeff();
  double floor = max_abs > 0.0 ? floor_frac * max_abs : 1e-8;
  double c = std::log(static_cast<double>(n)) / static_cast<double>(n);
  Vector lam(beta_tilde.size());
  for (Eigen::Index j = 0; j < beta_tilde.size(); ++j)
    lam[j] = c / std::max(std::abs(beta_tilde[j]), floor);
  return lam;
}

std::vector<double> lambda_grid(const Matrix& X, const Vector& y, const Vector& w,
                                bool intercept, int size, double min_ratio) {
  if (size < 1) throw std::invalid_argument("lambda_grid: size must be >= 1");
  if (!(min_ratio > 0.0) || min_ratio > 1.0)
    throw std::invalid_argument("lambda_grid: min_ratio in (0, 1]");
  if (X.rows() != y.size() || X.rows() != w.size())
    throw std::invalid_argument("lambda_grid: dimension mismatch");
  double wsum = w.sum();
  if (!(wsum > 0.0)) throw NoInformationError("lambda_grid: zero total weight");
  double center = intercept ? w.dot(y) / wsum : 0.0;
  Vector yc = (y.array() - center).matrix();
  double lam_max = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double v = std::abs((w.array() * X.col(j).array() * yc.array()).sum()) /
               static_cast<double>(X.rows());
    lam_max = std::max(lam_max, v);
  }
  if (!(lam_max > 0.0)) lam_max = 1.0;  // flat problem; any grid works
  std::vector<double> g(size);
  if (size == 1) {
    g[0] = lam_max;
    return g;
  }
  double step = std::log(min_ratio) / static_cast<double>(size - 1);
  for (int i = 0; i < size; ++i) g[i] = lam_max * std::exp(step * i);
  return g;
}

std::vector<int> cv_fold_ids(Eigen::Index n, int k_folds, std::uint64_t seed) {
  if (k_folds < 2) throw std::invalid_argument("cv_fold_ids: need at least 2 folds");
  if (n < k_folds) throw std::invalid_argument("cv_fold_ids: more folds than rows");
  std::vector<Eigen::Index> perm(n);
  for (Eigen::Index i = 0; i < n; ++i) perm[i] = i;
  Rng rng(seed);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    Eigen::Index j = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> fold(n);
  for (int k = 0; k < k_folds; ++k) {
    Eigen::Index lo = n * k / k_folds, hi = n * (k + 1) / k_folds;
    for (Eigen::Index i = lo; i < hi; ++i) fold[perm[i]] = k;
  }
  return fold;
}

double select_lambda_cv(const Dataset& data, const CvFitFunction& fit,
                        std::vector<double> grid, int k_folds, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("select_lambda_cv: empty grid");
  for (double l : grid)
    if (!(l >= 0.0) || !std::isfinite(l))
      throw std::invalid_argument("select_lambda_cv: bad grid value");
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const Eigen::Index n = data.n();
  std::vector<int> fold = cv_fold_ids(n, k_folds, seed);

  // pre-split once
  std::vector<Dataset> train(k_folds), test(k_folds);
  for (int k = 0; k < k_folds; ++k) {
    Eigen::Index ntr = 0;
    for (Eigen::Index i = 0; i < n; ++i) ntr += fold[i] != k;
    Eigen::Index nte = n - ntr;
    train[k].X.resize(ntr, data.d());
    train[k].y.resize(ntr);
    test[k].X.resize(nte, data.d());
    test[k].y.resize(nte);
    Eigen::Index a = 0, b = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (fold[i] != k) {
        train[k].X.row(a) = data.X.row(i);
        train[k].y[a++] = data.y[i];
      } else {
        test[k].X.row(b) = data.X.row(i);
        test[k].y[b++] = data.y[i];
      }
    }
  }

  bool found = false;
  double best_lambda = 0.0, best_score = 0.0;
  for (double lam : grid) {
    double score = 0.0;
    bool ok = true;
    for (int k = 0; k < k_folds && ok; ++k) {
      try {
        CvPrediction pred = fit(train[k], lam);
        if (pred.beta.size() != data.d())
          throw std::invalid_argument("cv fit returned wrong beta length");
        Vector err =
            ((test[k].y - test[k].X * pred.beta).array() - pred.intercept).matrix();
        Vector aerr = err.cwiseAbs();
        std::sort(aerr.data(), aerr.data() + aerr.size());
        Eigen::Index m = aerr.size();
        score += m % 2 ? aerr[m / 2] : 0.5 * (aerr[m / 2 - 1] + aerr[m / 2]);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) continue;
    score /= k_folds;
    // strict improvement; exact ties keep the earlier, larger lambda
    if (!found || score < best_score) {
      found = true;
      best_score = score;
      best_lambda = lam;
    }
  }
  if (!found) throw TuningError("select_lambda_cv: every candidate failed");
  return best_lambda;
}

}  // namespace mte
