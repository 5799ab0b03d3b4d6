#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arw/bessel.hpp"
#include "arw/covariance.hpp"
#include "arw/errors.hpp"
#include "arw/lattice.hpp"
#include "arw/rng.hpp"
#include "oracles.hpp"

using namespace arw;

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

TEST_CASE("arw kernel: normalization, periodicity, hand-checked value") {
  const auto k25 = arw_kernel(enumerate_lattice(25));
  const double origin[2] = {0, 0};
  CHECK(eval(k25, origin) == doctest::Approx(1.0).epsilon(1e-15));
  const double e1[2] = {1, 0};
  CHECK(eval(k25, e1) == doctest::Approx(1.0).epsilon(1e-12));

  // every lambda in Lambda_5 has odd coordinate sum, so each cosine is -1
  const auto k5 = arw_kernel(enumerate_lattice(5));
  const double half[2] = {0.5, 0.5};
  CHECK(eval(k5, half) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("rescaled kernel sits on the unit circle and matches r_n(t/sqrt n)") {
  const auto fs = enumerate_lattice(25);
  const auto k = arw_kernel(fs);
  const auto rk = rescaled_kernel(fs);
  for (std::size_t i = 0; i < rk.size(); ++i) {
    double norm2 = 0;
    for (double v : rk.vec(i)) norm2 += v * v;
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
  }
  const CounterRng rng(7);
  for (int i = 0; i < 20; ++i) {
    const double t[2] = {10 * rng.uniform(2 * i) - 5, 10 * rng.uniform(2 * i + 1) - 5};
    const double scaled[2] = {t[0] / 5.0, t[1] / 5.0};
    CHECK(eval(rk, t) == doctest::Approx(eval(k, scaled)).epsilon(1e-15));
  }
}

TEST_CASE("eval agrees with an extended-precision oracle") {
  const auto k = arw_kernel(enumerate_lattice(5));
  const double t[2] = {0.1, 0.2};
  const double ld = static_cast<double>(oracles::kernel_eval_ld(k.vectors, 2, t));
  CHECK(eval(k, t) == doctest::Approx(ld).epsilon(1e-14));

  const auto single = kernel_from_vectors(2, {1.0, 0.0});
  const double quarter[2] = {0.25, 0};
  CHECK(std::abs(eval(single, quarter)) < 1e-15);
}

TEST_CASE("evenness, boundedness, torus periodicity, gradient bound") {
  const auto k = arw_kernel(enumerate_lattice(10));
  const CounterRng rng(11);
  double worst_even = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t[2] = {6 * rng.uniform(2 * i) - 3, 6 * rng.uniform(2 * i + 1) - 3};
    const double neg[2] = {-t[0], -t[1]};
    worst_even = std::max(worst_even, std::abs(eval(k, t) - eval(k, neg)));
    CHECK(std::abs(eval(k, t)) <= 1.0 + 1e-12);
    const double shifted[2] = {t[0] + 2.0, t[1] - 1.0};
    CHECK(eval(k, shifted) == doctest::Approx(eval(k, t)).epsilon(1e-12));
  }
  CHECK(worst_even < 1e-15);

  CHECK(gradient_bound(k) == doctest::Approx(kTwoPi * std::sqrt(10.0)).epsilon(1e-12));
  // sampled gradient norms stay below the certificate
  const int alphas[2][2] = {{1, 0}, {0, 1}};
  for (int i = 0; i < 100; ++i) {
    const double t[2] = {rng.uniform(3000 + 2 * i), rng.uniform(3001 + 2 * i)};
    const double gx = eval_partial(k, alphas[0], t);
    const double gy = eval_partial(k, alphas[1], t);
    CHECK(std::hypot(gx, gy) <= gradient_bound(k) + 1e-9);
  }
}

TEST_CASE("partial derivatives: exact value, FD oracle, order cap") {
  const auto rk5 = rescaled_kernel(enumerate_lattice(5));
  const int zero[2] = {0, 0};
  const double t0[2] = {0, 0};
  CHECK(eval_partial(rk5, zero, t0) == eval(rk5, t0));

  // sum lambda_1^2 = n N / 2 makes the pure second derivative at 0 exact
  const int dxx[2] = {2, 0};
  CHECK(eval_partial(rk5, dxx, t0) == doctest::Approx(-kTwoPi * kTwoPi / 2).epsilon(1e-12));

  // eigenfunction relation at the origin: -(d_xx + d_yy) = (2 pi)^2
  const int dyy[2] = {0, 2};
  CHECK(-eval_partial(rk5, dxx, t0) - eval_partial(rk5, dyy, t0) ==
        doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-9));

  const CounterRng rng(23);
  for (const auto& kernel : {rk5, rescaled_kernel(enumerate_lattice(25)), arw_kernel(enumerate_lattice(2))}) {
    for (int i = 0; i < 20; ++i) {
      const std::vector<double> t = {4 * rng.uniform(2 * i) - 2, 4 * rng.uniform(2 * i + 1) - 2};
      for (const auto& alpha : {std::array<int, 2>{1, 0}, std::array<int, 2>{0, 1},
                                std::array<int, 2>{1, 1}, std::array<int, 2>{2, 0}}) {
        const double exact = eval_partial(kernel, alpha, t);
        // differentiate the (|alpha|-1)-order derivative once by FD
        std::array<int, 2> lower = alpha;
        int axis = lower[0] > 0 ? 0 : 1;
        lower[axis] -= 1;
        const double fd = oracles::central_diff(
            [&](const std::vector<double>& u) { return eval_partial(kernel, lower, u); }, t, axis,
            1e-4);
        CHECK(exact == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }

  const int overflow[2] = {3, 2};
  CHECK_THROWS_AS(eval_partial(rk5, overflow, t0), UnsupportedOrderError);
}

TEST_CASE("bessel_j: frozen references, series oracle, zero location") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  struct Ref { double nu, x, value; };
  // high-precision references
  const Ref refs[] = {
      {0, std::numbers::pi, -0.304242177644093864},
      {0, 1.0, 0.765197686557966551},
      {0, 5.0, -0.177596771314338304},
      {0, 12.0, 0.047689310796833537},
      {0, 13.0, 0.206926102377067811},
      {0, 30.0, -0.086367983581040211},
      {0, 100.0, 0.019985850304223122},
      {0, 10 * std::numbers::pi, 0.100250994573006337},
      {1, 1.0, 0.440050585744933516},
      {1, 15.0, 0.205104038613522761},
      {0.5, 2.0, 0.513016136561827752},
      {1.5, 3.0, 0.477718215087091772},
      {2, 7.0, -0.301417220085940120},
  };
  for (const auto& r : refs) CHECK(std::abs(bessel_j(r.nu, r.x) - r.value) < 1e-10);

  // 40-term alternating series oracle at moderate argument
  const double x = kTwoPi * 0.5;
  CHECK(bessel_j0(x) ==
        doctest::Approx(static_cast<double>(oracles::bessel_j0_series_ld(x))).epsilon(1e-13));

  // independent library route across the switch point
  for (double xx = 0.0; xx <= 40.0; xx += 0.37)
    CHECK(std::abs(bessel_j0(xx) - std::cyl_bessel_j(0.0, xx)) < 1e-10);

  const double zero =
      oracles::bisect([](double v) { return static_cast<double>(oracles::bessel_j0_series_ld(v)); },
                      2.0, 3.0);
  CHECK(zero == doctest::Approx(2.404825557695773).epsilon(1e-9));
  CHECK(std::abs(bessel_j0(zero)) < 1e-9);
}

TEST_CASE("mean covariance: normalization, d=2 identity, Monte Carlo oracle") {
  CHECK(mean_covariance_radial(2, 0.0) == 1.0);
  CHECK(mean_covariance_radial(5, 0.0) == 1.0);
  for (double r : {0.1, 0.5, 1.3, 4.0})
    CHECK(mean_covariance_radial(2, r) == doctest::Approx(bessel_j0(kTwoPi * r)).epsilon(1e-12));

  // frozen high-precision references
  CHECK(mean_covariance_radial(2, 0.3) == doctest::Approx(0.290564214089124200).epsilon(1e-10));
  CHECK(mean_covariance_radial(4, 0.7) == doctest::Approx(-0.091969187861266894).epsilon(1e-10));

  // MC oracle: mean of cos(2 pi <gamma, t>) over uniform directions
  const CounterRng rng(31);
  const double t[2] = {0.23, 0.11};
  const double tn = std::hypot(t[0], t[1]);
  double sum = 0, sum2 = 0;
  const int trials = 1'000'000;
  for (int i = 0; i < trials; ++i) {
    const double angle = kTwoPi * rng.uniform(i);
    const double c = std::cos(kTwoPi * (std::cos(angle) * t[0] + std::sin(angle) * t[1]));
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - mean_covariance_radial(2, tn)) < 3 * se);
}

TEST_CASE("linearised kernel: structure and values") {
  CHECK_THROWS_AS(linearised_kernel(enumerate_lattice(25)), OmegaInvalidError);

  const auto lk5 = linearised_kernel(enumerate_lattice(5));
  REQUIRE(lk5.eta_frequencies.size() == 2);
  CHECK(eval_linearised(lk5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double theta = std::atan(0.5);
  for (double t : {0.3, 1.0, 2.7}) {
    const double plus = std::fmod(theta, 1.0);
    const double minus = 1.0 - plus;  // -theta mod 1
    const double hand = 0.5 * (std::cos(kTwoPi * plus * t) + std::cos(kTwoPi * minus * t));
    CHECK(eval_linearised(lk5, t) == doctest::Approx(hand).epsilon(1e-13));
  }

  const auto lk65 = linearised_kernel(enumerate_lattice(65));
  REQUIRE(lk65.eta_frequencies.size() == 4);
  // frequencies come in +-pairs mod 1
  for (double f : lk65.eta_frequencies) {
    const double partner = f == 0.0 ? 0.0 : 1.0 - f;
    CHECK(std::count_if(lk65.eta_frequencies.begin(), lk65.eta_frequencies.end(),
                        [&](double g) { return std::abs(g - partner) < 1e-12; }) >= 1);
  }
  // extended-precision cross-check at t = 1
  const auto as_kernel = linearised_as_kernel(lk65);
  const double one[1] = {1.0};
  CHECK(eval_linearised(lk65, 1.0) ==
        doctest::Approx(static_cast<double>(
                            oracles::kernel_eval_ld(as_kernel.vectors, 1, one)))
            .epsilon(1e-13));

  // weight is 4/N = 2^-omega
  CHECK(lk65.weight == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("berry deviation of the rescaled kernel is small for rich n") {
  // coarse-grid unit check; the acceptance suite runs the 1e-3 grid
  const auto rk = rescaled_kernel(enumerate_lattice(1105));
  const double sup = berry_sup_deviation(rk, 1.0, 0.01);
  CHECK(sup < 0.1);
  CHECK(sup > 0.0);
}
