#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace arw {

struct PrimePower {
  std::int64_t prime;
  int exponent;
};

/// Trial-division factorization, ascending primes. Valid for n >= 1.
std::vector<PrimePower> factorize(std::int64_t n);

/// True iff every prime divisor congruent to 3 mod 4 has even valuation.
bool is_sum_of_two_squares(std::int64_t n);

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// All integer points on the circle of radius sqrt(n), together with the
// multiplicative data that controls their angular structure:
//   - cardinality: the representation count N_n = 4 * prod(1 + a_i) over
//     primes p_i = 1 mod 4 with exponents a_i,
//   - omega: number of distinct split primes, defined only when every split
//     exponent equals 1 (then N_n = 2^(omega+2)),
//   - split_angles: argument of one canonical Gaussian prime above each
//     split prime, reduced to [0, pi/2),
//   - base_angle: argument of the ramified/inert part (1+i)^a * prod q^b.
struct FrequencySet {
  std::int64_t n = 0;
  std::vector<LatticePoint> points;  // sorted lexicographically
  std::int64_t cardinality = 0;
  std::optional<int> omega;
  std::vector<double> split_angles;
  double base_angle = 0.0;
};

/// Representation count straight from the prime decomposition.
/// Throws NotRepresentableError when n has no representation.
std::int64_t cardinality_from_factorization(std::int64_t n);

/// Enumerates the full point set by scanning x in [0, floor(sqrt(n))] and
/// closing under the 8 lattice symmetries. Throws NotRepresentableError.
FrequencySet enumerate_lattice(std::int64_t n);

struct GaussianAngles {
  std::vector<double> split_angles;
  double base_angle = 0.0;
};

// Canonical Gaussian prime above p = a^2 + b^2: the representative with
// 0 < b < a, found by exhaustive scan a <= sqrt(p). Fixing the choice keeps
// angle output deterministic across runs.
GaussianAngles gaussian_prime_angles(std::int64_t n);

/// Uniform atomic measure on the unit circle: the projected points lambda/sqrt(n).
struct AngularMeasure {
  std::vector<double> atoms;  // angles, sorted, in [0, 2*pi)
  double weight = 0.0;        // 1/N per atom
};

AngularMeasure angular_measure(const FrequencySet& fs);

// sup over circular arcs of |mu(arc) - length(arc)/2pi|. The measure is
// purely atomic, so the sup is attained (as a one-sided limit) on arcs whose
// endpoints are atoms; those finitely many candidates are scanned exactly.
double kolmogorov_distance(const AngularMeasure& m);

/// All n <= limit representable as two squares with N_n >= log(n)^kappa.
/// Requires 0 < kappa < log(2)/2.
std::vector<std::int64_t> admissible_sequence(std::int64_t limit, double kappa);

}  // namespace arw
