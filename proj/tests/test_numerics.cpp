#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fracheat/fft.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/interp.hpp"
#include "fracheat/quadrature.hpp"
#include "fracheat/util.hpp"

using namespace fracheat;

TEST_CASE("gauss rule integrates polynomials exactly") {
  auto f = [](double x) { return 5 * x * x * x * x - 2 * x * x + 3; };
  const double exact = 2.0 * (5.0 / 5 - 2.0 / 3 + 3.0);
  CHECK(integrate_gl(f, -1.0, 1.0, 8) == Catch::Approx(exact).epsilon(1e-14));
  CHECK(integrate_gl(f, -1.0, 1.0, 16) == Catch::Approx(exact).epsilon(1e-14));
}

TEST_CASE("panel refinement handles endpoint power singularities") {
  // int_0^1 x^{-1/2} dx = 2; refined panels carry a sqrt(floor)-level error
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  const auto pts = panels_refined_lower(0.0, 1.0, 2, 1e-14);
  CHECK(integrate_panels(f, pts, 16) == Catch::Approx(2.0).epsilon(1e-8));
  // substitution with the known exponent is exact to roundoff
  CHECK(integrate_power_singular_lower(f, 0.0, 1.0, 0.5) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("euler acceleration sums the alternating harmonic series") {
  EulerSum acc;
  double est = 0.0;
  for (int k = 1; k <= 40; ++k) est = acc.add((k % 2 ? 1.0 : -1.0) / k);
  CHECK(est == Catch::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("stable cosine integral matches closed forms") {
  // theta=1: int e^{-s} cos(rs) ds = 1/(1+r^2)
  for (double r : {0.0, 0.3, 1.0, 7.0, 120.0, 4000.0}) {
    const double got = stable_cos_integral(1.0, r, 1e-12);
    CHECK(got == Catch::Approx(1.0 / (1.0 + r * r)).margin(1e-10));
  }
  // theta=2: int e^{-s^2} cos(rs) ds = (sqrt(pi)/2) e^{-r^2/4}
  for (double r : {0.0, 0.5, 2.0, 6.0}) {
    const double got = stable_cos_integral(2.0, r, 1e-12);
    CHECK(got == Catch::Approx(0.5 * std::sqrt(kPi) * std::exp(-0.25 * r * r)).margin(1e-10));
  }
  // theta=0.5 at r=0: int e^{-sqrt(s)} ds = 2
  CHECK(stable_cos_integral(0.5, 0.0, 1e-12) == Catch::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("stable sine moment integral matches closed forms") {
  // theta=1: int e^{-s} s sin(rs) ds = 2r/(1+r^2)^2
  for (double r : {0.1, 1.0, 30.0, 900.0}) {
    const double got = stable_sin_moment_integral(1.0, r, 1e-12);
    CHECK(got == Catch::Approx(2.0 * r / std::pow(1.0 + r * r, 2)).margin(1e-9));
  }
  // theta=2: int e^{-s^2} s sin(rs) ds = (sqrt(pi)/4) r e^{-r^2/4}
  for (double r : {0.2, 1.5, 5.0}) {
    const double got = stable_sin_moment_integral(2.0, r, 1e-12);
    CHECK(got == Catch::Approx(0.25 * std::sqrt(kPi) * r * std::exp(-0.25 * r * r)).margin(1e-10));
  }
}

TEST_CASE("pchip preserves monotone data and interpolates smoothly") {
  std::vector<double> x = logspace(0.01, 100.0, 40);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 / (1.0 + x[i] * x[i]);
  Pchip p(x, y);
  double prev = p(0.01);
  for (double q = 0.011; q < 99.0; q *= 1.07) {
    const double v = p(q);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  LogLogPchip ll(x, y);
  CHECK(ll(3.7) == Catch::Approx(1.0 / (1.0 + 3.7 * 3.7)).epsilon(2e-4));
}

TEST_CASE("fft round trip and linear convolution") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> a(256);
  for (auto& v : a) v = {u(rng), u(rng)};
  auto b = a;
  Fft fft(256);
  fft.forward(b.data());
  fft.inverse(b.data());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);

  std::vector<double> f(37), g(21);
  for (auto& v : f) v = u(rng);
  for (auto& v : g) v = u(rng);
  const auto got = convolve(f, g);
  REQUIRE(got.size() == f.size() + g.size() - 1);
  for (std::size_t k = 0; k < got.size(); ++k) {
    double direct = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (k >= i && k - i < g.size()) direct += f[i] * g[k - i];
    CHECK(got[k] == Catch::Approx(direct).margin(1e-11));
  }
}

TEST_CASE("log-log fit recovers the exponent") {
  auto xs = logspace(0.1, 10.0, 30);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 3.4 * std::pow(xs[i], -1.7);
  const auto fit = fit_loglog(xs, ys);
  CHECK(fit.slope == Catch::Approx(-1.7).epsilon(1e-10));
  CHECK(fit.r2 == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("two-regressor fit separates power and log-power") {
  auto xs = logspace(1e-4, 1e-2, 25);
  std::vector<double> y(xs.size()), f1(xs.size()), f2(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    f1[i] = std::log(xs[i]);
    f2[i] = std::log(std::log(std::exp(2.0) + 1.0 / xs[i]));
    y[i] = 0.7 - 2.0 * f1[i] - 1.5 * f2[i];
  }
  const auto fit = fit_two_regressors(y, f1, f2);
  CHECK(fit.coef1 == Catch::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.coef2 == Catch::Approx(-1.5).epsilon(1e-9));
}

TEST_CASE("smooth step and bump basics") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(0.5) == Catch::Approx(0.5));
  CHECK(smooth_bump(0.0) == Catch::Approx(std::exp(-1.0)));
  CHECK(smooth_bump(1.0) == 0.0);
  CHECK(sphere_area(1) == Catch::Approx(2.0));
  CHECK(sphere_area(3) == Catch::Approx(4.0 * kPi));
  CHECK(ball_volume(3) == Catch::Approx(4.0 * kPi / 3.0));
}
