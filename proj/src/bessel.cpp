#include "arw/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace arw {

namespace {

constexpr double kSeriesAsymptoticSwitch = 12.0;

double bessel_series(double nu, double x) {
  // J_nu(x) = sum_m (-1)^m / (m! Gamma(m+nu+1)) (x/2)^(2m+nu)
  const double half = 0.5 * x;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  const double q = half * half;
  for (int m = 0; m < 200; ++m) {
    term *= -q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double bessel_asymptotic(double nu, double x) {
  // Hankel expansion: J_nu(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi),
  // chi = x - (nu/2 + 1/4) pi. Terms are summed while they decrease; for
  // half-integer nu the series terminates and is exact.
  const double mu = 4.0 * nu * nu;
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::abs(term);
  for (int k = 1; k < 60; ++k) {
    const double f = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= f * inv8x / k;
    if (term == 0.0) break;
    if (std::abs(term) > prev) break;  // past the optimal truncation point
    prev = std::abs(term);
    const int phase = (k / 2) % 2;  // + + - - + + ...
    const double signed_term = phase ? -term : term;
    if (k % 2 == 1)
      q += signed_term;
    else
      p += signed_term;
    if (std::abs(term) < 1e-19) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw std::invalid_argument("bessel_j: nu and x must be nonnegative");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= kSeriesAsymptoticSwitch) return bessel_series(nu, x);
  return bessel_asymptotic(nu, x);
}

double mean_covariance_radial(int d, double r) {
  if (d < 2) throw std::invalid_argument("mean_covariance_radial: d must be >= 2");
  if (r < 0.0) throw std::invalid_argument("mean_covariance_radial: r must be nonnegative");
  const double nu = 0.5 * d - 1.0;
  const double z = 2.0 * std::numbers::pi * r;
  if (z <= kSeriesAsymptoticSwitch) {
    // Normalised series Gamma(nu+1) (2/z)^nu J_nu(z): no z^nu prefactor, so
    // the r -> 0 limit is exact.
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int m = 0; m < 200; ++m) {
      term *= -q / ((m + 1.0) * (m + 1.0 + nu));
      sum += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  return std::tgamma(nu + 1.0) * bessel_j(nu, z) / std::pow(0.5 * z, nu);
}

double mean_covariance(int d, std::span<const double> t) {
  double s = 0.0;
  for (double v : t) s += v * v;
  return mean_covariance_radial(d, std::sqrt(s));
}

}  // namespace arw
