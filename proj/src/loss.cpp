#include "mte/loss.hpp"

#include <cmath>
#include <limits>

namespace mte {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)

double log_density(double r, double sigma_r) {
  double z = r / sigma_r;
  return -0.5 * z * z - std::log(sigma_r) - kLogSqrt2Pi;
}

void check_u(double u) {
  if (!(u >= 0.0) || !std::isfinite(u))
    throw std::invalid_argument("ln_t: density value must be finite and >= 0");
}
}  // namespace

void validate(const LossParams& params) {
  if (!(params.t >= 0.0) || !std::isfinite(params.t))
    throw std::invalid_argument("LossParams: t must be finite and >= 0");
  if (params.p < 0) throw std::invalid_argument("LossParams: p must be >= 0");
  if (!(params.sigma_r > 0.0) || !std::isfinite(params.sigma_r))
    throw std::invalid_argument("LossParams: sigma_r must be finite and > 0");
}

double residual_density(double r, double sigma_r) {
  if (!std::isfinite(r)) throw std::invalid_argument("residual_density: r not finite");
  if (!(sigma_r > 0.0) || !std::isfinite(sigma_r))
    throw std::invalid_argument("residual_density: sigma_r must be > 0");
  return std::exp(log_density(r, sigma_r));
}

double ln_t(double u, const LossParams& params) {
  validate(params);
  check_u(u);
  if (u > params.t) return std::log(u);
  if (params.t == 0.0) throw std::domain_error("ln_t: u = 0 with t = 0");
  // ln(t) + sum_{k=1..p} (-1)^{k-1} s^k / k, s in [-1, 0]
  double s = (u - params.t) / params.t;
  double acc = 0.0;
  double sk = 1.0;
  for (int k = 1; k <= params.p; ++k) {
    sk *= s;
    acc += (k % 2 ? sk : -sk) / k;
  }
  return std::log(params.t) + acc;
}

double ln_t_d1(double u, const LossParams& params) {
  validate(params);
  check_u(u);
  if (u >= params.t) {
    if (u == 0.0) throw std::domain_error("ln_t_d1: u = 0 with t = 0");
    return 1.0 / u;
  }
  // (1/t) sum_{k=1..p} (-s)^(k-1)
  double s = (u - params.t) / params.t;
  double acc = 0.0;
  double term = 1.0;
  for (int k = 1; k <= params.p; ++k) {
    acc += term;
    term *= -s;
  }
  return acc / params.t;
}

double ln_t_d2(double u, const LossParams& params) {
  validate(params);
  check_u(u);
  if (u >= params.t) {
    if (u == 0.0) throw std::domain_error("ln_t_d2: u = 0 with t = 0");
    return -1.0 / (u * u);
  }
  // (1/t^2) sum_{k=2..p} (-1)^(k-1) (k-1) s^(k-2)
  double s = (u - params.t) / params.t;
  double acc = 0.0;
  double sk = 1.0;  // s^(k-2)
  for (int k = 2; k <= params.p; ++k) {
    acc += (k % 2 ? sk : -sk) * (k - 1);
    sk *= s;
  }
  return acc / (params.t * params.t);
}

double weight(double u, const LossParams& params) {
  validate(params);
  check_u(u);
  if (params.t == 0.0 || u >= params.t) return 1.0;
  return 1.0 - std::pow(1.0 - u / params.t, params.p);
}

namespace {
void check_dims(const Vector& beta, const Dataset& data) {
  if (data.X.rows() != data.y.size())
    throw std::invalid_argument("dataset: X rows != y length");
  if (beta.size() != data.X.cols())
    throw std::invalid_argument("beta length != number of columns");
  if (data.y.size() == 0) throw std::invalid_argument("empty dataset");
}
}  // namespace

double mte_loss(const Vector& beta, const Dataset& data, const LossParams& params) {
  validate(params);
  check_dims(beta, data);
  Vector r = data.y - data.X * beta;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double ld = log_density(r[i], params.sigma_r);
    double u = std::exp(ld);
    acc += u > params.t ? ld : ln_t(u, params);
  }
  return -acc / static_cast<double>(r.size());
}

Vector mte_gradient(const Vector& beta, const Dataset& data, const LossParams& params) {
  validate(params);
  check_dims(beta, data);
  Vector r = data.y - data.X * beta;
  double s2 = params.sigma_r * params.sigma_r;
  Vector g = Vector::Zero(beta.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double w = weight(residual_density(r[i], params.sigma_r), params);
    if (w != 0.0) g -= (w * r[i] / s2) * data.X.row(i).transpose();
  }
  return g / static_cast<double>(r.size());
}

double loss_curvature(double r, const LossParams& params) {
  validate(params);
  double s2 = params.sigma_r * params.sigma_r;
  double u = residual_density(r, params.sigma_r);
  if (u >= params.t || params.t == 0.0) return -1.0 / s2;
  double d1 = u * (-r / s2);                    // phi'(r)
  double d2 = u * (r * r / (s2 * s2) - 1.0 / s2);  // phi''(r)
  return ln_t_d2(u, params) * d1 * d1 + ln_t_d1(u, params) * d2;
}

}  // namespace mte
