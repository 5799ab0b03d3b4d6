#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arw {

// Side-by-side almost-period budget of the two models sharing omega(n)
// degrees of freedom: the full kernel with its Dirichlet box (2 pi/eps)^(N/2)
// against the linearised kernel with (2 pi omega/eps)^omega, plus the
// smallest period an exhaustive scan actually finds for each.
struct ModelComparisonRow {
  std::string model;  // "full" or "linearised"
  int degrees_of_freedom = 0;
  double bound = 0.0;
  std::optional<double> measured_smallest;  // |tau| from the scan, when found
  bool omega_valid = true;
};

struct ModelComparison {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double scan_radius = 0.0;
  double scan_h = 0.0;
  std::vector<ModelComparisonRow> rows;
};

ModelComparison compare_models(std::int64_t n, double epsilon, double scan_radius = 50.0,
                               double scan_h = 0.01);

}  // namespace arw
