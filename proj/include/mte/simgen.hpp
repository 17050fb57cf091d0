#pragma once

#include <cstdint>
#include <map>

#include "mte/types.hpp"

namespace mte::sim {

enum class CovariateModel { IidNormalIdentity, NormalAr1, MixtureShift };

// fixed-d-1:  0.7 N(0,1) + 0.3 Unif(-10, 50)
// fixed-d-2:  0.7 N(0,1) + 0.3 N(10, 10^2)
// eps1..eps6: N(0,1); 0.8 N(0,1)+0.2 N(0,20^2); 0.8 N(0,1)+0.2 N(50,10^2);
//             0.6 N(0,1)+0.2 N(20,10^2)+0.2 N(-50,10^2); Cauchy; t(2)
// none:       identically zero (clean fixtures)
enum class ErrorModel { None, FixedD1, FixedD2, Eps1, Eps2, Eps3, Eps4, Eps5, Eps6 };

enum class Beta0Kind { FixedD, HighD };

struct SimDesign {
  CovariateModel cov_model = CovariateModel::IidNormalIdentity;
  ErrorModel err_model = ErrorModel::Eps1;
  std::optional<Beta0Kind> beta0_kind;  // defaults by error-model family
  Eigen::Index n = 100;
  Eigen::Index d = 12;
  int reps = 1;
  std::uint64_t seed = 1;
};

// (1, 1.5, 2, 1, 0, 0, 0, 0, -2.5, -1, 0, 0); 12 components
Vector beta0_fixed_d();

// first ten entries (3, 1.5, 2, -2.5, -2, 3, 1.5, 2, -2.5, -2), zero padded;
// requires d >= 10
Vector beta0_high_d(Eigen::Index d);

Vector beta0_for(const SimDesign& design);

// Lower-triangular factor of the AR(1) correlation matrix rho^|i-j|:
// L(i,0) = rho^i, L(i,j) = sqrt(1-rho^2) rho^(i-j) for 0 < j <= i.
Matrix ar1_factor(Eigen::Index d, double rho);

// Row draw order is fixed (observation by observation) so output is a pure
// function of (model, n, d, seed).
Matrix gen_covariates(CovariateModel model, Eigen::Index n, Eigen::Index d,
                      std::uint64_t seed);

Vector gen_errors(ErrorModel model, Eigen::Index n, std::uint64_t seed);

// Dataset for one replication: X and eps use seeds derived from
// (design.seed, rep, stream), streams 0 and 1. y = X beta0 + eps.
Dataset gen_dataset(const SimDesign& design, int rep);

// key = value design file ('#' comments). Keys: covariate_model, error_model,
// n, d, reps, seed, beta0 (optional). Throws DataError on unknown keys or
// malformed values.
SimDesign parse_design(const std::string& path);
SimDesign parse_design_text(const std::string& text, const std::string& origin);

std::string to_string(CovariateModel m);
std::string to_string(ErrorModel m);

}  // namespace mte::sim
