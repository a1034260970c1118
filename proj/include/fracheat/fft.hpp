#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fracheat/errors.hpp"
#include "fracheat/util.hpp"

namespace fracheat {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Iterative radix-2 FFT with precomputed twiddles. Power-of-two sizes only.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0) throw Error("Fft: size must be a power of two");
    rev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      rev_[i] = r;
    }
    tw_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      tw_[k] = {std::cos(ang), std::sin(ang)};
    }
  }

  std::size_t size() const { return n_; }

  void forward(std::complex<double>* a) const { transform(a, false); }

  void inverse(std::complex<double>* a) const {
    transform(a, true);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= s;
  }

 private:
  void transform(std::complex<double>* a, bool inv) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len >> 1;
      const std::size_t stride = n_ / len;
      for (std::size_t blk = 0; blk < n_; blk += len) {
        for (std::size_t j = 0; j < half; ++j) {
          std::complex<double> w = tw_[j * stride];
          if (inv) w = std::conj(w);
          const std::complex<double> u = a[blk + j];
          const std::complex<double> v = a[blk + j + half] * w;
          a[blk + j] = u + v;
          a[blk + j + half] = u - v;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> tw_;
};

/// Linear convolution of two real sequences, output size |a|+|b|-1.
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t out_n = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_n);
  Fft fft(n);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft.forward(fa.data());
  fft.forward(fb.data());
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft.inverse(fa.data());
  std::vector<double> out(out_n);
  for (std::size_t i = 0; i < out_n; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace fracheat
