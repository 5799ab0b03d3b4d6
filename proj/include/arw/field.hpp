#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "arw/covariance.hpp"
#include "arw/lattice.hpp"

namespace arw {

// One sampled Gaussian wave, stored as independent cosine/sine amplitudes per
// mode: f(t) = sum_k [c_k cos(2 pi <g_k, t>) + s_k sin(2 pi <g_k, t>)].
// For the ARW each +-lambda pair contributes one mode (the Hermitian
// constraint a_{-lambda} = conj(a_lambda) leaves two real degrees of freedom
// per pair), scaled so the pointwise variance is exactly 1.
struct FieldRealization {
  int dim = 2;
  std::vector<double> vectors;  // modes x dim
  std::vector<double> coeff_cos;
  std::vector<double> coeff_sin;
  std::uint64_t seed = 0;
  bool rescaled = false;
  std::int64_t n = 0;  // energy index for ARW samples, 0 for generic fields

  std::size_t modes() const { return dim == 0 ? 0 : vectors.size() / dim; }

  double eval(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;
  /// Hessian entries (dxx, dxy, dyy).
  std::array<double, 3> hessian(double x, double y) const;
  double laplacian(double x, double y) const;

  /// sup bounds from coefficient amplitudes (used as certificates).
  double amplitude_bound() const;
  double gradient_bound() const;
  double hessian_bound() const;
};

/// Draws the ARW realization for the given seed. Identical seeds give
/// bit-identical coefficients.
FieldRealization sample_arw(const FrequencySet& fs, std::uint64_t seed, bool rescaled = false);

/// Field with evaluation f'(t) = f(t + tau), implemented by rotating each
/// mode's (cos, sin) amplitude pair.
FieldRealization translated_field(const FieldRealization& f, std::array<double, 2> tau);

struct DirectionSample {
  int dim = 0;
  std::vector<double> directions;  // count x dim, unit norm rows
  std::uint64_t seed = 0;
  std::size_t count() const { return dim == 0 ? 0 : directions.size() / dim; }
};

/// i.i.d. uniform directions on the unit sphere (normalised Gaussians).
DirectionSample sample_directions(int d, int count, std::uint64_t seed);

CovarianceKernel empirical_kernel(const DirectionSample& ds);

struct OptimalityRow {
  int n_modes = 0;
  int trials = 0;
  int no_period_count = 0;
  double probability = 0.0;  // empirical P(sup_{1<=|t|<=e^{aN}} R_N <= 1-eps)
};

// Monte Carlo for the generic-direction model: per trial, sample N unit
// directions and grid-scan the empirical covariance over the annulus
// 1 <= |t| <= e^{aN}. Spacing is spacing_factor/N (the covering scale);
// pass a smaller factor to resolve near-periods of very small N.
std::vector<OptimalityRow> optimality_experiment(int d, std::span<const int> n_range, double a,
                                                 double epsilon, int trials, std::uint64_t seed,
                                                 double spacing_factor = 1.0, int threads = 0);

}  // namespace arw
