#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracheat/errors.hpp"

namespace fracheat {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
/// Shape-preserving: does not overshoot the data, so interpolating a
/// positive decreasing table stays positive and decreasing.
class Pchip {
 public:
  Pchip() = default;

  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw Error("Pchip: need >= 2 nodes and matching sizes");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1])) throw Error("Pchip: abscissae must be strictly increasing");
    d_.assign(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
          d_[i] = 0.0;
        } else {
          const double w1 = 2.0 * h[i] + h[i - 1];
          const double w2 = h[i] + 2.0 * h[i - 1];
          d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
      }
      d_[0] = endpoint_slope(h[0], h[1], delta[0], delta[1]);
      d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

  /// Evaluate; arguments outside the table clamp to the end values.
  double operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= xq ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double t = (xq - x_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * d_[lo] + h01 * y_[lo + 1] + h11 * h * d_[lo + 1];
  }

  /// One-sided slope at the last interval, used for tail extrapolation laws.
  double end_slope() const { return d_.back(); }

 private:
  static double endpoint_slope(double h0, double h1, double d0, double d1) {
    // Three-point estimate, limited to preserve shape near the boundary.
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(d0)) return 3.0 * d0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

/// Pchip in log-log coordinates for positive power-law-like tables.
class LogLogPchip {
 public:
  LogLogPchip() = default;

  LogLogPchip(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("LogLogPchip: data must be positive");
      lx[i] = std::log(x[i]);
      ly[i] = std::log(y[i]);
    }
    p_ = Pchip(std::move(lx), std::move(ly));
  }

  double operator()(double xq) const { return std::exp(p_(std::log(xq))); }
  double x_front() const { return std::exp(p_.x_front()); }
  double x_back() const { return std::exp(p_.x_back()); }

 private:
  Pchip p_;
};

}  // namespace fracheat
