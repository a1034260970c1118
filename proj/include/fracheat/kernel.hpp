#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracheat/errors.hpp"
#include "fracheat/interp.hpp"
#include "fracheat/quadrature.hpp"
#include "fracheat/util.hpp"

namespace fracheat {

/// Floor applied to time differences before kernel evaluation in quotients.
inline constexpr double kTimeEps = 1e-12;

struct ProfileGrid {
  double r_min = 1e-4;
  double r_max = 1e4;
  int count = 2048;
};

/// Tabulated unit-time radial profile g(r) = G(r e_1, 1) for theta not in {1,2}.
struct RadialProfile {
  std::vector<double> radii;   // strictly increasing, positive
  std::vector<double> values;  // strictly positive, decreasing
  double tail_exponent = 0.0;  // asserted decay power = -(N+theta)
};

/// Fundamental solution of d_t v + (-Delta)^{theta/2} v = 0.
///
/// theta=2 and theta=1 use the Gaussian and Poisson closed forms in any
/// dimension. Other orders are tabulated by Fourier inversion (dim 1 via the
/// cosine transform, dim 3 via the sine transform) on a log radius grid, with
/// the exact power tail r^{-N-theta} spliced beyond the resolvable range.
class KernelParams {
 public:
  int dim() const { return dim_; }
  double theta() const { return theta_; }
  bool closed_form() const { return !profile_.has_value(); }
  const RadialProfile* profile() const { return profile_ ? &*profile_ : nullptr; }

  /// Unit-time profile value g(rho).
  double unit_value(double rho) const {
    rho = std::fabs(rho);
    if (theta_ == 2.0) return std::pow(4.0 * kPi, -0.5 * dim_) * std::exp(-0.25 * rho * rho);
    if (theta_ == 1.0) return poisson_c_ * std::pow(1.0 + rho * rho, -0.5 * (dim_ + 1));
    if (rho >= interp_.x_back()) return tail_coeff_ * std::pow(rho, -(dim_ + theta_));
    if (rho <= interp_.x_front()) return value_at_zero_;
    return interp_(rho);
  }

  /// Unit-time cumulative C1(z) = int_0^z g(w) dw (dim must be 1).
  double line_cumulative(double z) const {
    if (dim_ != 1) throw UnsupportedDim("line_cumulative: dim 1 only");
    z = std::fabs(z);
    if (theta_ == 2.0) return 0.5 * std::erf(0.5 * z);
    if (theta_ == 1.0) return std::atan(z) / kPi;
    if (z <= cum_line_.x_front()) return value_at_zero_ * z;
    if (z >= cum_line_.x_back())
      return cum_line_tail_base_ + (tail_coeff_ / theta_) * (std::pow(cum_line_.x_back(), -theta_) - std::pow(z, -theta_));
    return cum_line_(z);
  }

  /// Unit-time cumulative C2(z) = int_0^z w g(w) dw (dim must be 3).
  double radial2_cumulative(double z) const {
    if (dim_ != 3) throw UnsupportedDim("radial2_cumulative: dim 3 only");
    z = std::fabs(z);
    if (theta_ == 2.0) return 2.0 * std::pow(4.0 * kPi, -1.5) * (1.0 - std::exp(-0.25 * z * z));
    if (theta_ == 1.0) return (1.0 - 1.0 / (1.0 + z * z)) / (2.0 * kPi * kPi);
    if (z <= cum_rad2_.x_front()) return 0.5 * value_at_zero_ * z * z;
    if (z >= cum_rad2_.x_back())
      return cum_rad2_tail_base_ +
             (tail_coeff_ / (1.0 + theta_)) * (std::pow(cum_rad2_.x_back(), -1.0 - theta_) - std::pow(z, -1.0 - theta_));
    return cum_rad2_(z);
  }

  double tail_coefficient() const { return tail_coeff_; }
  double value_at_zero() const { return value_at_zero_; }

  friend KernelParams build_kernel(int dim, double theta, const std::string& cache_dir, int threads);

 private:
  int dim_ = 1;
  double theta_ = 2.0;
  double poisson_c_ = 0.0;  // Gamma((N+1)/2) / pi^{(N+1)/2}
  std::optional<RadialProfile> profile_;
  LogLogPchip interp_;
  double value_at_zero_ = 0.0;
  double tail_coeff_ = 0.0;
  Pchip cum_line_;
  Pchip cum_rad2_;
  double cum_line_tail_base_ = 0.0;
  double cum_rad2_tail_base_ = 0.0;
};

namespace detail {

inline std::string profile_cache_name(int dim, double theta, const ProfileGrid& grid) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "v1|%d|%.12g|%.12g|%.12g|%d", dim, theta, grid.r_min, grid.r_max, grid.count);
  char name[80];
  std::snprintf(name, sizeof(name), "fracheat-profile-%016llx.bin",
                static_cast<unsigned long long>(fnv1a(buf)));
  return name;
}

inline bool load_profile_cache(const std::string& path, RadialProfile& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[4];
  std::uint32_t version = 0, count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&count), 4);
  if (!in || std::string_view(magic, 4) != "FHPR" || version != 1 || count == 0 || count > (1u << 24)) return false;
  out.radii.resize(count);
  out.values.resize(count);
  in.read(reinterpret_cast<char*>(&out.tail_exponent), 8);
  in.read(reinterpret_cast<char*>(out.radii.data()), 8 * count);
  in.read(reinterpret_cast<char*>(out.values.data()), 8 * count);
  return static_cast<bool>(in);
}

inline void save_profile_cache(const std::string& path, const RadialProfile& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write profile cache: " + path);
  const std::uint32_t version = 1;
  const std::uint32_t count = static_cast<std::uint32_t>(p.radii.size());
  out.write("FHPR", 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&count), 4);
  out.write(reinterpret_cast<const char*>(&p.tail_exponent), 8);
  out.write(reinterpret_cast<const char*>(p.radii.data()), 8 * count);
  out.write(reinterpret_cast<const char*>(p.values.data()), 8 * count);
  if (!out) throw IoError("short write on profile cache: " + path);
}

/// Leading coefficient of the stable tail g(r) ~ K r^{-N-theta}.
inline double stable_tail_coefficient(int dim, double theta) {
  if (dim == 1) return std::tgamma(theta + 1.0) * std::sin(0.5 * kPi * theta) / kPi;
  // dim == 3
  return std::tgamma(theta + 2.0) * std::sin(0.5 * kPi * theta) / (2.0 * kPi * kPi);
}

}  // namespace detail

/// Tabulates (or loads from cache) the kernel for the given order.
inline KernelParams build_kernel(int dim, double theta, const std::string& cache_dir = "", int threads = 1) {
  if (!(theta > 0.0) || theta > 2.0) throw InvalidOrder("build_kernel: theta must lie in (0, 2]");
  if (dim < 1) throw UnsupportedDim("build_kernel: dim must be >= 1");

  KernelParams k;
  k.dim_ = dim;
  k.theta_ = theta;
  if (theta == 2.0) {
    k.value_at_zero_ = std::pow(4.0 * kPi, -0.5 * dim);
    return k;
  }
  k.poisson_c_ = std::tgamma(0.5 * (dim + 1)) / std::pow(kPi, 0.5 * (dim + 1));
  if (theta == 1.0) {
    k.value_at_zero_ = k.poisson_c_;
    return k;
  }
  if (dim != 1 && dim != 3)
    throw UnsupportedDim("build_kernel: Fourier inversion implemented for dim 1 and 3 only");

  const ProfileGrid grid;
  RadialProfile prof;
  prof.tail_exponent = -(dim + theta);

  bool loaded = false;
  std::string cache_path;
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    cache_path = (std::filesystem::path(cache_dir) / detail::profile_cache_name(dim, theta, grid)).string();
    loaded = detail::load_profile_cache(cache_path, prof);
  }

  const double k_tail = detail::stable_tail_coefficient(dim, theta);
  if (!loaded) {
    prof.radii = logspace(grid.r_min, grid.r_max, grid.count);
    prof.values.assign(prof.radii.size(), 0.0);
    // switch to the analytic tail once the true value drops below the
    // oscillatory quadrature noise floor
    const double r_switch = std::pow(k_tail / 1e-6, 1.0 / (dim + theta));
    std::size_t n_quad = prof.radii.size();
    for (std::size_t i = 0; i < prof.radii.size(); ++i) {
      if (prof.radii[i] > r_switch) {
        n_quad = i;
        break;
      }
    }
    parallel_for(n_quad, threads, [&](std::size_t i) {
      const double r = prof.radii[i];
      if (dim == 1) {
        prof.values[i] = stable_cos_integral(theta, r, 1e-11) / kPi;
      } else {
        prof.values[i] = stable_sin_moment_integral(theta, r, 1e-11) / (2.0 * kPi * kPi * r);
      }
    });
    double k_matched = k_tail;
    if (n_quad > 0 && n_quad < prof.radii.size())
      k_matched = prof.values[n_quad - 1] * std::pow(prof.radii[n_quad - 1], dim + theta);
    for (std::size_t i = n_quad; i < prof.radii.size(); ++i)
      prof.values[i] = k_matched * std::pow(prof.radii[i], prof.tail_exponent);
    if (!cache_path.empty()) detail::save_profile_cache(cache_path, prof);
  }

  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    if (!(prof.values[i] > 0.0)) throw QuadratureFailure("build_kernel: nonpositive profile value");
    if (i > 0) {
      if (prof.values[i] > prof.values[i - 1] + 1e-9 * (1.0 + prof.values[i - 1]))
        throw QuadratureFailure("build_kernel: profile is not decreasing");
      // flatten quadrature noise so the stored table is monotone
      prof.values[i] = std::min(prof.values[i], prof.values[i - 1]);
    }
  }

  k.value_at_zero_ = (dim == 1) ? stable_cos_integral(theta, 0.0, 1e-11) / kPi
                                : std::tgamma(3.0 / theta) / theta / (2.0 * kPi * kPi);
  k.tail_coeff_ = prof.values.back() * std::pow(prof.radii.back(), dim + theta);
  k.interp_ = LogLogPchip(prof.radii, prof.values);

  // cumulative tables over the same knots; the head [0, r_min] uses g ~ g(0)
  {
    LogLogPchip& gi = k.interp_;
    auto g = [&](double r) {
      if (r <= prof.radii.front()) return k.value_at_zero_;
      return gi(r);
    };
    std::vector<double> knots = prof.radii;
    std::vector<double> cl(knots.size()), c2(knots.size());
    double accl = k.value_at_zero_ * knots.front();
    double acc2 = 0.5 * k.value_at_zero_ * knots.front() * knots.front();
    cl[0] = accl;
    c2[0] = acc2;
    for (std::size_t i = 1; i < knots.size(); ++i) {
      accl += integrate_gl([&](double r) { return g(r); }, knots[i - 1], knots[i], 8);
      acc2 += integrate_gl([&](double r) { return r * g(r); }, knots[i - 1], knots[i], 8);
      cl[i] = accl;
      c2[i] = acc2;
    }
    k.cum_line_ = Pchip(knots, cl);
    k.cum_rad2_ = Pchip(knots, c2);
    k.cum_line_tail_base_ = cl.back();
    k.cum_rad2_tail_base_ = c2.back();
  }

  k.profile_ = std::move(prof);
  return k;
}

/// G at radius |x| = r and time t, via the self-similar scaling
/// G(x,t) = t^{-N/theta} g(t^{-1/theta} |x|).
inline double kernel_at_radius(const KernelParams& k, double r, double t) {
  if (!(t > 0.0)) throw NonpositiveTime("kernel_at: t must be positive");
  const double ti = std::pow(t, -1.0 / k.theta());
  return std::pow(t, -static_cast<double>(k.dim()) / k.theta()) * k.unit_value(ti * std::fabs(r));
}

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double kernel_at(const KernelParams& k, std::span<const double> x, double t) {
  if (static_cast<int>(x.size()) != k.dim()) throw UnsupportedDim("kernel_at: point dimension mismatch");
  return kernel_at_radius(k, norm2(x), t);
}

/// Quadrature of G(.,t) over the ball of radius R plus the analytic power
/// tail correction; result should be ~1 for a valid kernel.
inline double kernel_mass(const KernelParams& k, double t, double truncation_radius) {
  if (!(t > 0.0)) throw NonpositiveTime("kernel_mass: t must be positive");
  const double scale = std::pow(t, 1.0 / k.theta());
  if (!(truncation_radius >= 10.0 * scale))
    throw PreconditionViolated("kernel_mass: truncation radius must be >= 10 t^{1/theta}");
  const double rhat = truncation_radius / scale;  // scaled radius
  const int n = k.dim();
  auto integrand = [&](double rho) { return k.unit_value(rho) * std::pow(rho, n - 1); };
  std::vector<double> pts{0.0, 1.0};
  for (double p : panels_log(1.0, rhat, 4)) pts.push_back(p);
  double mass = sphere_area(n) * integrate_panels(integrand, pts, 24);
  if (k.theta() < 2.0) {
    const double k_loc = k.unit_value(rhat) * std::pow(rhat, n + k.theta());
    mass += sphere_area(n) * k_loc * std::pow(rhat, -k.theta()) / k.theta();
  }
  return mass;
}

/// Empirical min/max over samples of G(x,t) / [t^{-N/theta}(1+|x|/t^{1/theta})^{-N-theta}].
inline std::pair<double, double> check_two_sided_bound(const KernelParams& k,
                                                       std::span<const std::pair<double, double>> samples) {
  if (k.theta() >= 2.0) throw WrongOrder("check_two_sided_bound: stated only for theta < 2");
  if (samples.empty()) throw PreconditionViolated("check_two_sided_bound: empty sample set");
  double lo = kInf, hi = -kInf;
  for (const auto& [r, t] : samples) {
    if (!(t > 0.0)) throw NonpositiveTime("check_two_sided_bound: t must be positive");
    const double rho = std::fabs(r) * std::pow(t, -1.0 / k.theta());
    const double ratio = k.unit_value(rho) * std::pow(1.0 + rho, k.dim() + k.theta());
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

struct TripleProductCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Quotient G(x-y,t-s) G(y-z,s-tau) / G(x-z,t-tau) against the Gaussian
/// identity (theta=2) or the sum bound (theta<2). Time differences are
/// floored at kTimeEps.
inline TripleProductCheck check_triple_product(const KernelParams& k, std::span<const double> x,
                                               std::span<const double> y, std::span<const double> z,
                                               double t, double s, double tau) {
  if (!(tau < s && s < t)) throw BadTimeOrder("check_triple_product: need tau < s < t");
  const int n = k.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n || static_cast<int>(z.size()) != n)
    throw UnsupportedDim("check_triple_product: point dimension mismatch");
  const double d1 = std::max(t - s, kTimeEps);
  const double d2 = std::max(s - tau, kTimeEps);
  const double d3 = std::max(t - tau, kTimeEps);
  std::array<double, 8> buf{};
  auto diff_norm = [&](std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum);
  };
  const double g1 = kernel_at_radius(k, diff_norm(x, y), d1);
  const double g2 = kernel_at_radius(k, diff_norm(y, z), d2);
  const double g3 = kernel_at_radius(k, diff_norm(x, z), d3);
  TripleProductCheck out;
  out.lhs = g1 * g2 / g3;
  if (k.theta() == 2.0) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = y[i] - (d2 / d3) * x[i] - (d1 / d3) * z[i];
      sum += w * w;
      buf[i] = w;
    }
    out.rhs = kernel_at_radius(k, std::sqrt(sum), d1 * d2 / d3);
  } else {
    out.rhs = g1 + g2;
  }
  return out;
}

}  // namespace fracheat
