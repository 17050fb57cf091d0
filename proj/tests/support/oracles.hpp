#pragma once

// Independent reference implementations used only by tests: finite
// differences, dense least squares, simple quadrature, and a Nelder-Mead
// search. Deliberately written with different algorithms than the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mte/types.hpp"

namespace oracle {

// central difference gradient
inline mte::Vector fd_gradient(const std::function<double(const mte::Vector&)>& f,
                               const mte::Vector& x, double h = 1e-6) {
  mte::Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    mte::Vector hi = x, lo = x;
    hi[j] += h;
    lo[j] -= h;
    g[j] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

// least squares through the normal equations (LDLT), nothing shared with the
// library's QR path
inline mte::Vector ols(const mte::Matrix& X, const mte::Vector& y) {
  return (X.transpose() * X).ldlt().solve(X.transpose() * y);
}

inline mte::Vector wls(const mte::Matrix& X, const mte::Vector& y,
                       const mte::Vector& w) {
  mte::Matrix xtwx = X.transpose() * w.asDiagonal() * X;
  return xtwx.ldlt().solve(X.transpose() * (w.asDiagonal() * y));
}

// composite Simpson rule
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
  if (intervals % 2) ++intervals;
  double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Nelder-Mead minimizer, standard coefficients, restarted once from its own
// answer for polish.
inline mte::Vector nelder_mead(const std::function<double(const mte::Vector&)>& f,
                               mte::Vector start, double scale = 0.5,
                               int max_iter = 20000, double tol = 1e-12) {
  const Eigen::Index n = start.size();
  auto run = [&](mte::Vector x0, double sc) {
    std::vector<mte::Vector> pts(n + 1, x0);
    for (Eigen::Index j = 0; j < n; ++j) pts[j + 1][j] += sc;
    std::vector<double> val(n + 1);
    for (size_t i = 0; i < pts.size(); ++i) val[i] = f(pts[i]);
    for (int it = 0; it < max_iter; ++it) {
      std::vector<size_t> ord(pts.size());
      for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
      std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return val[a] < val[b]; });
      size_t best = ord[0], worst = ord[n], second = ord[n - 1];
      if (std::abs(val[worst] - val[best]) <=
          tol * (std::abs(val[best]) + std::abs(val[worst]) + 1e-300))
        break;
      mte::Vector centroid = mte::Vector::Zero(n);
      for (size_t i = 0; i < pts.size(); ++i)
        if (i != worst) centroid += pts[i];
      centroid /= static_cast<double>(n);
      mte::Vector refl = centroid + (centroid - pts[worst]);
      double fr = f(refl);
      if (fr < val[best]) {
        mte::Vector expv = centroid + 2.0 * (centroid - pts[worst]);
        double fe = f(expv);
        if (fe < fr) { pts[worst] = expv; val[worst] = fe; }
        else { pts[worst] = refl; val[worst] = fr; }
      } else if (fr < val[second]) {
        pts[worst] = refl;
        val[worst] = fr;
      } else {
        mte::Vector con = centroid + 0.5 * (pts[worst] - centroid);
        double fc = f(con);
        if (fc < val[worst]) { pts[worst] = con; val[worst] = fc; }
        else {
          for (size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            val[i] = f(pts[i]);
          }
        }
      }
    }
    size_t arg = 0;
    for (size_t i = 1; i < val.size(); ++i)
      if (val[i] < val[arg]) arg = i;
    return pts[arg];
  };
  mte::Vector first = run(start, scale);
  return run(first, scale * 0.01);
}

}  // namespace oracle
