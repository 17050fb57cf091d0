#include "mte/simgen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mte/rng.hpp"

namespace mte::sim {

Vector beta0_fixed_d() {
  Vector b(12);
  b << 1, 1.5, 2, 1, 0, 0, 0, 0, -2.5, -1, 0, 0;
  return b;
}

Vector beta0_high_d(Eigen::Index d) {
  if (d < 10) throw std::invalid_argument("beta0_high_d: d must be >= 10");
  Vector b = Vector::Zero(d);
  b.head(10) << 3, 1.5, 2, -2.5, -2, 3, 1.5, 2, -2.5, -2;
  return b;
}

Vector beta0_for(const SimDesign& design) {
  Beta0Kind kind;
  if (design.beta0_kind) {
    kind = *design.beta0_kind;
  } else {
    switch (design.err_model) {
      case ErrorModel::FixedD1:
      case ErrorModel::FixedD2:
        kind = Beta0Kind::FixedD;
        break;
      default:
        kind = Beta0Kind::HighD;
    }
  }
  if (kind == Beta0Kind::FixedD) {
    if (design.d != 12)
      throw std::invalid_argument("fixed-d designs use d = 12");
    return beta0_fixed_d();
  }
  return beta0_high_d(design.d);
}

Matrix ar1_factor(Eigen::Index d, double rho) {
  if (d < 1) throw std::invalid_argument("ar1_factor: d must be >= 1");
  if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("ar1_factor: |rho| < 1");
  Matrix L = Matrix::Zero(d, d);
  double c = std::sqrt(1.0 - rho * rho);
  for (Eigen::Index i = 0; i < d; ++i) {
    L(i, 0) = std::pow(rho, static_cast<double>(i));
    for (Eigen::Index j = 1; j <= i; ++j)
      L(i, j) = c * std::pow(rho, static_cast<double>(i - j));
  }
  return L;
}

Matrix gen_covariates(CovariateModel model, Eigen::Index n, Eigen::Index d,
                      std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_covariates: n, d must be >= 1");
  Rng rng(seed);
  Matrix X(n, d);
  constexpr double kRho = 0.5;
  switch (model) {
    case CovariateModel::IidNormalIdentity:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rng.normal();
      break;
    case CovariateModel::NormalAr1: {
      Matrix L = ar1_factor(d, kRho);
      Vector z(d);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
        X.row(i) = (L * z).transpose();
      }
      break;
    }
    case CovariateModel::MixtureShift: {
      // 0.8 N(0, I) + 0.2 N(3, AR1(0.5)); membership uniform drawn first
      Matrix L = ar1_factor(d, kRho);
      Vector z(d);
      for (Eigen::Index i = 0; i < n; ++i) {
        bool shifted = rng.uniform01() < 0.2;
        for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
        if (shifted)
          X.row(i) = (L * z).transpose().array() + 3.0;
        else
          X.row(i) = z.transpose();
      }
      break;
    }
  }
  return X;
}

Vector gen_errors(ErrorModel model, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_errors: n must be >= 1");
  Rng rng(seed);
  Vector e(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (model) {
      case ErrorModel::None:
        e[i] = 0.0;
        break;
      case ErrorModel::FixedD1:
        e[i] = rng.uniform01() < 0.3 ? rng.uniform(-10.0, 50.0) : rng.normal();
        break;
      case ErrorModel::FixedD2:
        e[i] = rng.uniform01() < 0.3 ? rng.normal(10.0, 10.0) : rng.normal();
        break;
      case ErrorModel::Eps1:
        e[i] = rng.normal();
        break;
      case ErrorModel::Eps2:
        e[i] = rng.uniform01() < 0.2 ? rng.normal(0.0, 20.0) : rng.normal();
        break;
      case ErrorModel::Eps3:
        e[i] = rng.uniform01() < 0.2 ? rng.normal(50.0, 10.0) : rng.normal();
        break;
      case ErrorModel::Eps4: {
        double u = rng.uniform01();
        if (u < 0.6)
          e[i] = rng.normal();
        else if (u < 0.8)
          e[i] = rng.normal(20.0, 10.0);
        else
          e[i] = rng.normal(-50.0, 10.0);
        break;
      }
      case ErrorModel::Eps5:
        e[i] = rng.cauchy();
        break;
      case ErrorModel::Eps6:
        e[i] = rng.t2();
        break;
    }
  }
  return e;
}

Dataset gen_dataset(const SimDesign& design, int rep) {
  if (rep < 0) throw std::invalid_argument("gen_dataset: rep must be >= 0");
  Vector b0 = beta0_for(design);
  std::uint64_t sx = derive_seed(design.seed, static_cast<std::uint64_t>(rep), 0);
  std::uint64_t se = derive_seed(design.seed, static_cast<std::uint64_t>(rep), 1);
  Dataset data;
  data.X = gen_covariates(design.cov_model, design.n, design.d, sx);
  data.y = data.X * b0 + gen_errors(design.err_model, design.n, se);
  data.beta0 = std::move(b0);
  return data;
}

std::string to_string(CovariateModel m) {
  switch (m) {
    case CovariateModel::IidNormalIdentity: return "iid-normal-identity";
    case CovariateModel::NormalAr1: return "normal-ar1";
    case CovariateModel::MixtureShift: return "mixture";
  }
  return "?";
}

std::string to_string(ErrorModel m) {
  switch (m) {
    case ErrorModel::None: return "none";
    case ErrorModel::FixedD1: return "fixed-d-1";
    case ErrorModel::FixedD2: return "fixed-d-2";
    case ErrorModel::Eps1: return "eps1";
    case ErrorModel::Eps2: return "eps2";
    case ErrorModel::Eps3: return "eps3";
    case ErrorModel::Eps4: return "eps4";
    case ErrorModel::Eps5: return "eps5";
    case ErrorModel::Eps6: return "eps6";
  }
  return "?";
}

namespace {

CovariateModel parse_cov_model(const std::string& v, long line) {
  if (v == "iid-normal-identity") return CovariateModel::IidNormalIdentity;
  if (v == "normal-ar1") return CovariateModel::NormalAr1;
  if (v == "mixture") return CovariateModel::MixtureShift;
  throw DataError("unknown covariate_model '" + v + "'", line);
}

ErrorModel parse_err_model(const std::string& v, long line) {
  if (v == "none") return ErrorModel::None;
  if (v == "fixed-d-1") return ErrorModel::FixedD1;
  if (v == "fixed-d-2") return ErrorModel::FixedD2;
  if (v.size() == 4 && v.compare(0, 3, "eps") == 0 && v[3] >= '1' && v[3] <= '6')
    return static_cast<ErrorModel>(static_cast<int>(ErrorModel::Eps1) + (v[3] - '1'));
  throw DataError("unknown error_model '" + v + "'", line);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long parse_long(const std::string& v, const std::string& key, long line) {
  size_t pos = 0;
  long out;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw DataError("bad integer for " + key + ": '" + v + "'", line);
  }
  if (pos != v.size()) throw DataError("bad integer for " + key + ": '" + v + "'", line);
  return out;
}

}  // namespace

SimDesign parse_design_text(const std::string& text, const std::string& origin) {
  SimDesign d;
  bool saw_cov = false, saw_err = false;
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw DataError(origin + ": expected 'key = value'", line);
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key == "covariate_model") {
      d.cov_model = parse_cov_model(val, line);
      saw_cov = true;
    } else if (key == "error_model") {
      d.err_model = parse_err_model(val, line);
      saw_err = true;
    } else if (key == "beta0") {
      if (val == "fixed-d") d.beta0_kind = Beta0Kind::FixedD;
      else if (val == "high-d") d.beta0_kind = Beta0Kind::HighD;
      else throw DataError("unknown beta0 '" + val + "'", line);
    } else if (key == "n") {
      d.n = parse_long(val, key, line);
    } else if (key == "d") {
      d.d = parse_long(val, key, line);
    } else if (key == "reps") {
      d.reps = static_cast<int>(parse_long(val, key, line));
    } else if (key == "seed") {
      try {
        d.seed = std::stoull(val);
      } catch (const std::exception&) {
        throw DataError("bad seed '" + val + "'", line);
      }
    } else {
      throw DataError(origin + ": unknown key '" + key + "'", line);
    }
  }
  if (!saw_cov || !saw_err)
    throw DataError(origin + ": covariate_model and error_model are required", -1);
  if (d.n < 1 || d.d < 1 || d.reps < 1)
    throw DataError(origin + ": n, d, reps must be positive", -1);
  return d;
}

SimDesign parse_design(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open design file " + path, -1);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_design_text(buf.str(), path);
}

}  // namespace mte::sim
