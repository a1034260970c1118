#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <mutex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracheat/errors.hpp"
#include "fracheat/util.hpp"

namespace fracheat {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on the Legendre polynomial.
inline const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[order - 1 - i] = rule.weights[i];
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

template <class F>
double integrate_gl(const F& f, double a, double b, int order = 16) {
  const GaussRule& g = gauss_rule(order);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) sum += g.weights[i] * f(mid + hw * g.nodes[i]);
  return hw * sum;
}

/// Fixed-order Gauss over consecutive panels.
template <class F>
double integrate_panels(const F& f, const std::vector<double>& pts, int order = 16) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += integrate_gl(f, pts[i], pts[i + 1], order);
  return sum;
}

/// Panel points on [a,b] geometrically refined toward `a`, starting from the
/// panel adjacent to `b`. Handles integrable endpoint singularities of unknown
/// power: each panel [c, 2c] sees a smooth integrand.
inline std::vector<double> panels_refined_lower(double a, double b, int per_decade = 2, double floor_ratio = 1e-12) {
  std::vector<double> pts{b};
  const double span = b - a;
  double frac = 1.0;
  const double shrink = std::pow(10.0, -1.0 / per_decade);
  while (frac > floor_ratio) {
    frac *= shrink;
    pts.push_back(a + span * frac);
  }
  pts.push_back(a);
  std::reverse(pts.begin(), pts.end());
  return pts;
}

inline std::vector<double> panels_refined_upper(double a, double b, int per_decade = 2, double floor_ratio = 1e-12) {
  std::vector<double> pts = panels_refined_lower(0.0, b - a, per_decade, floor_ratio);
  for (double& p : pts) p = b - p;
  std::reverse(pts.begin(), pts.end());
  return pts;
}

/// Log-spaced panel points between positive a and b.
inline std::vector<double> panels_log(double a, double b, int per_decade = 2) {
  if (!(a > 0.0) || !(b > a)) throw Error("panels_log: need 0 < a < b");
  const int n = std::max(2, 1 + static_cast<int>(std::ceil(per_decade * std::log10(b / a))));
  return logspace(a, b, n);
}

/// Adaptive Gauss-Kronrod on a finite interval.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol = 1e-10, int max_depth = 12) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol, &err);
  if (!(std::isfinite(v))) throw QuadratureFailure("adaptive quadrature produced a non-finite value");
  return v;
}

/// ∫_a^b f with f ~ (x-a)^{-p} * smooth near a, p < 1, via the substitution
/// x = a + (b-a) v^{1/(1-p)} which removes the singularity exactly.
template <class F>
double integrate_power_singular_lower(const F& f, double a, double b, double p, int order = 32) {
  if (!(p < 1.0)) throw Error("integrate_power_singular_lower: exponent must be < 1");
  const double c = b - a;
  const double q = 1.0 / (1.0 - p);
  auto g = [&](double v) { return f(a + c * std::pow(v, q)) * c * q * std::pow(v, q - 1.0); };
  return integrate_gl(g, 0.0, 0.1, order) + integrate_gl(g, 0.1, 1.0, order);
}

/// Accelerated summation of a (typically alternating) series by the Euler
/// transform with a running forward-difference table.
class EulerSum {
 public:
  /// Feed the next signed term; returns the current accelerated sum.
  double add(double term) {
    if (n_ == 0) {
      wksp_.assign(1, term);
      n_ = 1;
      sum_ = 0.5 * term;
      last_inc_ = sum_;
      return sum_;
    }
    double tmp = wksp_[0];
    wksp_[0] = term;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      const double dum = wksp_[j + 1];
      wksp_[j + 1] = 0.5 * (wksp_[j] + tmp);
      tmp = dum;
    }
    const double next = 0.5 * (wksp_[n_ - 1] + tmp);
    if (wksp_.size() <= n_) {
      wksp_.push_back(next);
    } else {
      wksp_[n_] = next;
    }
    if (std::fabs(next) <= std::fabs(wksp_[n_ - 1])) {
      ++n_;
      last_inc_ = 0.5 * next;
    } else {
      last_inc_ = next;
    }
    sum_ += last_inc_;
    return sum_;
  }

  double sum() const { return sum_; }
  double last_increment() const { return last_inc_; }

 private:
  std::vector<double> wksp_;
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double last_inc_ = kInf;
};

namespace detail {

/// Head integral ∫_0^{s0} e^{-s^theta} w(s) ds via the substitution u = s^theta,
/// which reduces the envelope to e^{-u} on a bounded range. For theta > 1 the
/// Jacobian u^{1/theta-1} has an integrable power singularity at u = 0.
template <class W>
double decay_head(double theta, double s0, const W& w, int order) {
  const double inv = 1.0 / theta;
  auto g = [&](double u) {
    const double s = std::pow(u, inv);
    return inv * std::pow(u, inv - 1.0) * std::exp(-u) * w(s);
  };
  const double u_max = std::pow(s0, theta);
  double total = 0.0;
  double head_end = std::min(1.0, u_max);
  if (theta > 1.0) {
    total += integrate_power_singular_lower(g, 0.0, head_end, 1.0 - inv, order);
  } else {
    total += integrate_gl(g, 0.0, head_end, order);
  }
  double a = head_end;
  while (a < u_max) {
    const double b = std::min(a + 1.0, u_max);
    total += integrate_gl(g, a, b, order);
    a = b;
  }
  return total;
}

/// Sums the zero-to-zero pieces of an oscillatory integral starting at z0 with
/// period `step`. Two stopping rules: plain truncation once the envelope has
/// collapsed, Euler acceleration of the alternating series otherwise.
template <class F>
double oscillatory_tail(const F& f, double z0, double step, double s_max, double tol, const char* who) {
  EulerSum accel;
  double direct = 0.0;
  double prev_mag = kInf;
  const std::size_t max_terms = 4000;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double a = z0 + k * step;
    const double term = integrate_gl(f, a, a + step, 16);
    direct += term;
    const double est = accel.add(term);
    const double mag = std::fabs(term);
    if (mag < 0.25 * tol && mag < 0.2 * prev_mag) return direct;  // envelope collapsed
    if (k >= 8 && std::fabs(accel.last_increment()) < 0.25 * tol) return est;
    if (a > s_max) return direct;
    prev_mag = mag;
  }
  throw QuadratureFailure(std::string(who) + ": oscillatory series did not converge");
}

}  // namespace detail

/// ∫_0^∞ e^{-s^theta} cos(r s) ds to absolute tolerance `tol`.
/// Oscillatory part handled by integrating between consecutive zeros of the
/// cosine and Euler-accelerating the resulting alternating series.
inline double stable_cos_integral(double theta, double r, double tol = 1e-12) {
  if (!(theta > 0.0)) throw InvalidOrder("stable_cos_integral: theta must be positive");
  r = std::fabs(r);
  const double s_max = std::pow(46.0, 1.0 / theta);  // e^{-46} ~ 1e-20
  auto f = [&](double s) { return std::exp(-std::pow(s, theta)) * std::cos(r * s); };
  const double z0 = (r > 0.0) ? 0.5 * kPi / r : kInf;
  if (z0 >= s_max) {
    auto w = [&](double s) { return std::cos(r * s); };
    return detail::decay_head(theta, s_max, w, 24);
  }
  auto w = [&](double s) { return std::cos(r * s); };
  const double head = detail::decay_head(theta, z0, w, 16);
  return head + detail::oscillatory_tail(f, z0, kPi / r, s_max, tol, "stable_cos_integral");
}

/// ∫_0^∞ e^{-s^theta} s sin(r s) ds to absolute tolerance `tol`.
inline double stable_sin_moment_integral(double theta, double r, double tol = 1e-12) {
  if (!(theta > 0.0)) throw InvalidOrder("stable_sin_moment_integral: theta must be positive");
  r = std::fabs(r);
  if (r == 0.0) return 0.0;
  const double s_max = std::pow(46.0, 1.0 / theta);
  auto f = [&](double s) { return std::exp(-std::pow(s, theta)) * s * std::sin(r * s); };
  const double z0 = kPi / r;  // first positive zero of sin(rs)
  if (z0 >= s_max) {
    auto w = [&](double s) { return s * std::sin(r * s); };
    return detail::decay_head(theta, s_max, w, 24);
  }
  auto w = [&](double s) { return s * std::sin(r * s); };
  const double head = detail::decay_head(theta, z0, w, 16);
  return head + detail::oscillatory_tail(f, z0, kPi / r, s_max, tol, "stable_sin_moment_integral");
}

}  // namespace fracheat
