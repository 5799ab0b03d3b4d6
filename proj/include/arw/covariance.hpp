#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arw/lattice.hpp"

namespace arw {

// Finite trigonometric polynomial K(t) = (1/N) sum_k cos(2 pi <gamma_k, t>).
// Wave vectors are stored flat (row-major, N x dim); the full symmetric set
// is kept as-is, no half-set folding.
struct CovarianceKernel {
  int dim = 2;
  std::vector<double> vectors;
  double weight = 0.0;            // 1/N
  std::optional<double> period;   // per-axis period, when the kernel has one

  std::size_t size() const { return dim == 0 ? 0 : vectors.size() / dim; }
  std::span<const double> vec(std::size_t k) const {
    return {vectors.data() + k * dim, static_cast<std::size_t>(dim)};
  }
  double max_vector_norm() const;
  double mean_vector_norm() const;
};

CovarianceKernel kernel_from_vectors(int dim, std::vector<double> vectors);

/// ARW covariance r_n: wave vectors Lambda_n, 1-periodic in each coordinate.
CovarianceKernel arw_kernel(const FrequencySet& fs);

/// Planck-rescaled covariance r~_n(t) = r_n(t/sqrt(n)): unit wave vectors,
/// periodic with cell sqrt(n).
CovarianceKernel rescaled_kernel(const FrequencySet& fs);

double eval(const CovarianceKernel& k, std::span<const double> t);

/// Analytic partial derivative; alpha is a per-coordinate order multi-index,
/// total order capped at 4 (UnsupportedOrderError above the cap).
double eval_partial(const CovarianceKernel& k, std::span<const int> alpha, std::span<const double> t);

/// Certified bound on |grad K|: 2 pi * mean |gamma_k|.
double gradient_bound(const CovarianceKernel& k);

// 1-D surrogate with the arithmetic degrees of freedom of the ARW: for each
// sign vector eta in {-1,1}^omega the frequency theta_eta = sum eta_j theta_j
// (mod 1), evaluated as s(t) = (4/N) sum_eta cos(2 pi theta_eta t).
struct LinearisedKernel {
  std::vector<double> base_angles;      // omega split-prime angles
  std::vector<double> eta_frequencies;  // 2^omega entries, reduced mod 1
  double weight = 0.0;                  // 4/N = 2^-omega
};

/// Throws OmegaInvalidError when some split exponent exceeds 1.
LinearisedKernel linearised_kernel(const FrequencySet& fs);

double eval_linearised(const LinearisedKernel& k, double t);

/// The linearised kernel as a 1-D cosine kernel (same evaluation).
CovarianceKernel linearised_as_kernel(const LinearisedKernel& k);

/// Grid maximum of |K(t) - J0(2 pi |t|)| over the disk |t| <= radius; K is
/// expected to be a rescaled (unit wave vector) kernel.
double berry_sup_deviation(const CovarianceKernel& k, double radius, double h, int threads = 0);

}  // namespace arw
