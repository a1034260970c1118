#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace fracheat {

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Surface area of the unit sphere S^{N-1} in R^N.
inline double sphere_area(int dim) {
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

/// Volume of the unit ball in R^N.
inline double ball_volume(int dim) {
  return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

inline std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> out = linspace(std::log(a), std::log(b), n);
  for (double& v : out) v = std::exp(v);
  return out;
}

/// C^inf step: 0 for z<=0, 1 for z>=1, strictly increasing between.
inline double smooth_step(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / z);
  const double b = std::exp(-1.0 / (1.0 - z));
  return a / (a + b);
}

/// Unnormalized C^inf bump on (-1,1): exp(-1/(1-z^2)), 0 outside.
inline double smooth_bump(double z) {
  const double z2 = z * z;
  if (z2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - z2));
}

/// FNV-1a 64-bit hash, used for cache keys and artifact manifests.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Index-based parallel for. Results must be written into per-index slots so
/// the output is independent of scheduling.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const int k = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int w = 0; w < k; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += k) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace fracheat
