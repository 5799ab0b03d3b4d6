#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arw/covariance.hpp"
#include "arw/lattice.hpp"

namespace arw {

enum class PeriodMethod { pigeonhole, exhaustive, linearised };

const char* to_string(PeriodMethod m);

// A candidate translation tau with a rigorous bound on how well the kernel
// replicates under it. epsilon_certified is a true upper bound on
// sup_t |K(t+tau) - K(t)| (for the exhaustive scan it records the measured
// correlation defect 1 - K(tau), the scan's acceptance criterion).
struct AlmostPeriod {
  std::vector<double> tau;
  double epsilon_certified = 0.0;
  double epsilon_target = 0.0;
  double norm = 0.0;  // Euclidean |tau|
  PeriodMethod method = PeriodMethod::pigeonhole;
  int m = 0;
  double max_fractional_distance = 0.0;  // max_k dist(<mu_k, tau>, Z), search methods only

  double sup_norm() const;
};

// Grid certificate for sup |g| over a swept domain: the continuum sup is at
// most grid_sup + lipschitz_bound * h * sqrt(d) / 2 (half grid diagonal).
struct SupCertificate {
  double grid_spacing = 0.0;
  double grid_sup = 0.0;
  double lipschitz_bound = 0.0;  // Lipschitz constant of the swept difference
  double certified_sup = 0.0;
};

// Simultaneous Diophantine approximation by pigeonhole: returns x in Z^dim,
// 1 <= |x|_inf <= min(ceil(m^(N/dim)), max_box), with dist(<mu_k, x>, Z) <= 1/m
// for every k. Lattice points are enumerated in increasing sup-norm shells
// (lexicographic within a shell); a point qualifying outright is returned
// directly, otherwise the first m-grid cell collision among positive-orthant
// points yields the difference vector. Cell hashing is only enabled while the
// cell space fits in 40 bits (N * log2(m) <= 40); beyond that the search runs
// on direct hits alone.
std::vector<std::int64_t> dirichlet_pigeonhole(std::span<const double> mus, int dim, int m,
                                               std::int64_t max_box = 1'000'000);

/// Exact upper bound on sup_t |K(t+tau) - K(t)|: (1/N) sum_k 2|sin(pi <g_k, tau>)|.
double sup_difference_bound(const CovarianceKernel& k, std::span<const double> tau);

/// Same bound for the partial derivative of order alpha.
double sup_derivative_difference_bound(const CovarianceKernel& k, std::span<const int> alpha,
                                       std::span<const double> tau);

// Grid certificate for sup |d^alpha K(t+tau) - d^alpha K(t)|. With
// domain_radius > 0 the sweep covers the cube [-R, R]^d and the certificate
// bounds the sup there; with domain_radius <= 0 the kernel must be periodic
// and the sweep covers one fundamental cell, making the bound global.
SupCertificate certified_sup_difference(const CovarianceKernel& k, std::span<const double> tau,
                                        double domain_radius, double h,
                                        std::span<const int> alpha = {}, int threads = 0);

/// Pigeonhole almost period of a kernel: tau from dirichlet_pigeonhole on the
/// wave vectors, certified by min(2*pi/m, the exact per-term sine bound).
AlmostPeriod almost_period_of_kernel(const CovarianceKernel& k, int m,
                                     std::int64_t max_box = 1'000'000);

// Exhaustive search for the smallest |tau| in [1, radius] with correlation
// K(tau) > 1 - epsilon, on an h-grid ordered by Euclidean norm. An h-coarse
// scan can miss periods; the miss scale is bounded by the kernel's Lipschitz
// modulus (gradient_bound(k) * h).
std::optional<AlmostPeriod> smallest_almost_period_scan(const CovarianceKernel& k, double epsilon,
                                                        double radius, double h);

/// Lower-bound witness |1 - J0(2 pi |tau|)| - |r~_n(tau) - J0(2 pi |tau|)|
/// for 1 - r_n at the rescaled lag tau; a large value certifies tau is far
/// from being an almost period.
double lower_bound_witness(const FrequencySet& fs, std::span<const double> tau_rescaled);

// Prop-2.7-style shortcut: one pigeonhole pass over the omega base angles
// (d = 1, m = ceil(2 pi omega / epsilon)) gives an integer translation with
// |s(t+tau) - s(t)| <= epsilon for all real t.
AlmostPeriod linearised_almost_period(const LinearisedKernel& k, double epsilon);

}  // namespace arw
