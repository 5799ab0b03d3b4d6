#include "arw/experiments.hpp"

#include <cmath>
#include <numbers>

#include "arw/almost_period.hpp"
#include "arw/covariance.hpp"
#include "arw/lattice.hpp"

namespace arw {

ModelComparison compare_models(std::int64_t n, double epsilon, double scan_radius, double scan_h) {
  const auto fs = enumerate_lattice(n);
  ModelComparison cmp;
  cmp.n = n;
  cmp.epsilon = epsilon;
  cmp.scan_radius = scan_radius;
  cmp.scan_h = scan_h;
  const double two_pi = 2.0 * std::numbers::pi;

  ModelComparisonRow full;
  full.model = "full";
  full.degrees_of_freedom = static_cast<int>(fs.cardinality);
  full.bound = std::pow(two_pi / epsilon, static_cast<double>(fs.cardinality) / 2.0);
  const auto kernel = rescaled_kernel(fs);
  if (auto ap = smallest_almost_period_scan(kernel, epsilon, scan_radius, scan_h))
    full.measured_smallest = ap->norm;
  cmp.rows.push_back(full);

  ModelComparisonRow lin;
  lin.model = "linearised";
  if (fs.omega.has_value()) {
    const int omega = *fs.omega;
    lin.degrees_of_freedom = omega;
    lin.bound = omega == 0 ? 1.0 : std::pow(two_pi * omega / epsilon, static_cast<double>(omega));
    const auto lk = linearised_as_kernel(linearised_kernel(fs));
    if (auto ap = smallest_almost_period_scan(lk, epsilon, scan_radius, scan_h))
      lin.measured_smallest = ap->norm;
  } else {
    lin.omega_valid = false;
  }
  cmp.rows.push_back(lin);
  return cmp;
}

}  // namespace arw
