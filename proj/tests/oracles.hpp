#pragma once

// Test-side oracles, independent of the library implementations they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

namespace oracles {

/// counts[k] = #{(a,b) in Z^2 : a^2 + b^2 = k} for k <= limit, by direct scan.
inline std::vector<std::int64_t> two_square_counts(std::int64_t limit) {
  std::vector<std::int64_t> counts(limit + 1, 0);
  const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(limit))));
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b) {
      const std::int64_t k = a * a + b * b;
      if (k <= limit) ++counts[k];
    }
  return counts;
}

/// Divisor-formula representation count from an independent factor scan.
inline std::int64_t two_square_count_formula(std::int64_t n) {
  std::int64_t card = 4;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (p % 4 == 1) card *= (1 + e);
    if (p % 4 == 3 && e % 2) return 0;
  }
  if (rest > 1) {
    if (rest % 4 == 1) card *= 2;
    if (rest % 4 == 3) return 0;
  }
  return card;
}

/// Dense arc scan for the Kolmogorov distance of an atomic circle measure:
/// candidate endpoints are the atoms shifted by +-delta plus the atoms.
inline double kolmogorov_scan(const std::vector<double>& atoms, double delta = 1e-7) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> endpoints;
  for (double a : atoms) {
    endpoints.push_back(a - delta);
    endpoints.push_back(a);
    endpoints.push_back(a + delta);
  }
  const double n = static_cast<double>(atoms.size());
  double best = 0.0;
  for (double s : endpoints) {
    for (double e : endpoints) {
      double len = e - s;
      len -= two_pi * std::floor(len / two_pi);
      int count = 0;
      for (double a : atoms) {
        double rel = a - s;
        rel -= two_pi * std::floor(rel / two_pi);
        if (rel <= len) ++count;
      }
      best = std::max(best, std::abs(count / n - len / two_pi));
    }
  }
  return best;
}

/// Kernel evaluation in extended precision (long double, pairwise order).
inline long double kernel_eval_ld(std::span<const double> vectors, int dim,
                                  std::span<const double> t) {
  long double sum = 0.0L;
  const std::size_t count = vectors.size() / dim;
  for (std::size_t k = 0; k < count; ++k) {
    long double dot = 0.0L;
    for (int j = 0; j < dim; ++j)
      dot += static_cast<long double>(vectors[k * dim + j]) * static_cast<long double>(t[j]);
    sum += std::cos(2.0L * 3.14159265358979323846264338327950288L * dot);
  }
  return sum / static_cast<long double>(count);
}

/// Alternating power series for J0 in long double (usable for |x| <~ 14).
inline long double bessel_j0_series_ld(long double x, int terms = 40) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int m = 1; m <= terms; ++m) {
    term *= -q / (static_cast<long double>(m) * m);
    sum += term;
  }
  return sum;
}

/// Bisection root of a callable on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Central finite difference of a scalar function along coordinate `axis`.
template <class F>
double central_diff(F&& f, std::vector<double> t, int axis, double step) {
  t[axis] += step;
  const double up = f(t);
  t[axis] -= 2 * step;
  const double dn = f(t);
  return (up - dn) / (2 * step);
}

}  // namespace oracles
