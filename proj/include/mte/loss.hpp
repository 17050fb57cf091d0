#pragma once

#include "mte/types.hpp"

namespace mte {

// Parameters of the tangent-likelihood loss: truncation point t >= 0 on the
// density scale, Taylor order p >= 0, and the residual scale sigma_r used by
// the Gaussian density kernel.
struct LossParams {
  double t = 0.1;
  int p = 1;
  double sigma_r = 1.0;
};

// Throws std::invalid_argument unless t >= 0, p >= 0 and sigma_r > 0.
void validate(const LossParams& params);

// Gaussian density of a residual at scale sigma_r.
// phi(r; sigma) = exp(-r^2 / (2 sigma^2)) / (sigma sqrt(2 pi))
double residual_density(double r, double sigma_r);

// Tangent-extended logarithm.
//   u >  t : ln(u), same code path as plain log
//   u <= t : p-th order Taylor expansion of ln at t,
//            ln(t) + sum_{k=1..p} (-1)^{k-1} s^k / k   with s = (u - t)/t
// Defined for u >= 0; u = 0 with t = 0 is a domain error like ln(0).
double ln_t(double u, const LossParams& params);

// First and second derivatives of ln_t in u. One-sided (from above) at u = t.
double ln_t_d1(double u, const LossParams& params);
double ln_t_d2(double u, const LossParams& params);

// Observation weight w(u) = u * d/du ln_t(u):
//   1 for u >= t (and identically 1 when t = 0), else 1 - (1 - u/t)^p.
// p = 1 gives min(1, u/t); p = 0 gives hard trimming (0 below t).
double weight(double u, const LossParams& params);

// Negative average tangent log-likelihood of the residuals,
//   L(beta) = -(1/n) sum_i ln_t(phi(y_i - x_i' beta; sigma_r)).
// The above-knot branch evaluates the log-density analytically, which is the
// same value as ln(phi) without the density underflow for large residuals.
double mte_loss(const Vector& beta, const Dataset& data, const LossParams& params);

// Gradient of mte_loss: -(1/n) sum_i w_i (r_i / sigma^2) x_i with
// w_i = weight(phi(r_i)).
Vector mte_gradient(const Vector& beta, const Dataset& data, const LossParams& params);

// Curvature m''(r) of r -> ln_t(phi(r)); used by the sandwich covariance.
//   above the knot: -1/sigma^2
//   below:          ln_t''(phi) phi'(r)^2 + ln_t'(phi) phi''(r)
double loss_curvature(double r, const LossParams& params);

}  // namespace mte
