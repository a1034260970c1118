#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fracheat/errors.hpp"

namespace fracheat {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("fit_line: need >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

/// Drops `trim` fraction of points from each end before fitting logs.
/// Default keeps the middle 80%, discarding boundary-contaminated ends.
inline LineFit fit_loglog(std::span<const double> x, std::span<const double> y, double trim = 0.1) {
  const std::size_t n = x.size();
  const std::size_t lo = static_cast<std::size_t>(trim * n);
  const std::size_t hi = n - lo;
  if (hi - lo < 2) throw Error("fit_loglog: too few points after trimming");
  std::vector<double> lx, ly;
  lx.reserve(hi - lo);
  ly.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("fit_loglog: data must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

struct TwoRegressorFit {
  double intercept = 0.0;
  double coef1 = 0.0;
  double coef2 = 0.0;
  double r2 = 0.0;
};

/// Least squares for y ~ intercept + coef1*f1 + coef2*f2 (3x3 normal equations).
inline TwoRegressorFit fit_two_regressors(std::span<const double> y, std::span<const double> f1,
                                          std::span<const double> f2) {
  const std::size_t n = y.size();
  if (n < 3 || f1.size() != n || f2.size() != n) throw Error("fit_two_regressors: need >= 3 matching points");
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0, sy = 0, s1y = 0, s2y = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s1 += f1[i];
    s2 += f2[i];
    s11 += f1[i] * f1[i];
    s22 += f2[i] * f2[i];
    s12 += f1[i] * f2[i];
    sy += y[i];
    s1y += f1[i] * y[i];
    s2y += f2[i] * y[i];
    syy += y[i] * y[i];
  }
  const double nn = static_cast<double>(n);
  // normal equations [[n,s1,s2],[s1,s11,s12],[s2,s12,s22]] * [c,b1,b2] = [sy,s1y,s2y]
  const double det = nn * (s11 * s22 - s12 * s12) - s1 * (s1 * s22 - s12 * s2) + s2 * (s1 * s12 - s11 * s2);
  if (std::fabs(det) < 1e-300) throw Error("fit_two_regressors: singular design");
  const double c = (sy * (s11 * s22 - s12 * s12) - s1 * (s1y * s22 - s12 * s2y) + s2 * (s1y * s12 - s11 * s2y)) / det;
  const double b1 = (nn * (s1y * s22 - s12 * s2y) - sy * (s1 * s22 - s12 * s2) + s2 * (s1 * s2y - s1y * s2)) / det;
  const double b2 = (nn * (s11 * s2y - s1y * s12) - s1 * (s1 * s2y - s1y * s2) + sy * (s1 * s12 - s11 * s2)) / det;
  TwoRegressorFit fit{c, b1, b2, 0.0};
  const double ss_tot = syy - sy * sy / nn;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (c + b1 * f1[i] + b2 * f2[i]);
    ss_res += e * e;
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace fracheat
