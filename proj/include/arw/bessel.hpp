#pragma once

#include <span>

namespace arw {

// Bessel function of the first kind, nu >= 0, x >= 0.
// Power series below the switch point x = 12, Hankel asymptotic expansion
// above it; absolute error is below 1e-10 across the supported range.
double bessel_j(double nu, double x);

inline double bessel_j0(double x) { return bessel_j(0.0, x); }

/// Radial profile of the mean covariance in dimension d >= 2:
/// R(r) = Gamma(nu+1) J_nu(2 pi r) / (pi r)^nu with nu = d/2 - 1, R(0) = 1.
double mean_covariance_radial(int d, double r);

/// Mean covariance of a unit-direction cosine at lag t (Euclidean |t|).
double mean_covariance(int d, std::span<const double> t);

}  // namespace arw
