#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arw/field.hpp"

namespace arw {

/// Axis-aligned rectangle or disk, the two window shapes supported by the
/// nodal-geometry plumbing.
struct Window {
  enum class Shape { rect, disk };
  Shape shape = Shape::rect;
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;  // rect bounds
  double cx = 0, cy = 0, r = 1;           // disk

  static Window rect(double x0, double y0, double x1, double y1);
  static Window disk(double cx, double cy, double r);
  /// "x0,y0,x1,y1" or "disk:cx,cy,r".
  static Window parse(const std::string& spec);

  std::array<double, 4> bbox() const;
  bool contains(double x, double y) const;
  Window shifted(double dx, double dy) const;
  std::string to_string() const;
};

struct NodalSegment {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  std::int32_t cell_i = 0, cell_j = 0;  // grid cell that produced the segment
  double length() const;
};

struct NodalCurveSet {
  std::vector<NodalSegment> segments;
  Window window;
  double hx = 0, hy = 0;
  std::int32_t cells_x = 0, cells_y = 0;
  double total_length() const;
};

using ScalarField = std::function<double(double, double)>;
using GradientField = std::function<std::array<double, 2>(double, double)>;

// Marching squares over an h-grid of the window's bounding box with linear
// interpolation on sign-change edges. Saddle cells are disambiguated by the
// sign of a cell-center sample. Grid vertices that evaluate to exactly zero
// are nudged by +1e-12 * (grid amplitude) before classification; an
// identically-zero grid raises DegenerateGridError. Segments are clipped to
// the window.
NodalCurveSet extract_nodal(const ScalarField& f, const Window& window, double h);
NodalCurveSet extract_nodal(const FieldRealization& f, const Window& window, double h);

double nodal_length(const ScalarField& f, const Window& window, double h);
double nodal_length(const FieldRealization& f, const Window& window, double h);

/// Weighted line integral over the extracted zero set, phi sampled at
/// segment midpoints. With phi == 1 this reproduces nodal_length exactly.
double weighted_gamma(const ScalarField& f, const ScalarField& phi, const Window& window, double h);
double weighted_gamma(const FieldRealization& f, const ScalarField& phi, const Window& window, double h);

double weighted_gamma_of_curves(const NodalCurveSet& curves, const ScalarField& phi);

struct NodalObservable {
  double length = 0.0;
  double weighted_integral = 0.0;
  double regular_margin = 0.0;     // min |grad f| at segment midpoints
  double boundary_fraction = 0.0;  // length share of boundary-adjacent segments
  double low_margin_fraction = 0.0;  // length share with |grad| < 10 h |Hess| locally
};

NodalObservable observe_curves(const NodalCurveSet& curves, const ScalarField& phi,
                               const GradientField& grad,
                               const std::function<double(double, double)>& hessian_norm = {});

/// Band estimator (1/2eps) Integral 1(|f|<=eps) phi |grad f| via cell-center
/// Riemann sums, eps = 5 h max|grad f|; cross-validates the segment sums.
double coarea_estimate(const ScalarField& f, const GradientField& grad, const ScalarField& phi,
                       const Window& window, double h);

/// Symmetric Hausdorff distance between the segment-midpoint clouds.
double hausdorff_midpoint_distance(const NodalCurveSet& a, const NodalCurveSet& b);

struct ReplicationRow {
  std::string phi;
  double gamma_base = 0.0;
  double gamma_translated = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

struct ReplicationReport {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int m = 0;
  std::vector<double> tau;
  double eps_certified = 0.0;
  std::vector<ReplicationRow> rows;
  double hausdorff_midpoints = 0.0;
  double regular_margin_base = 0.0;
  double regular_margin_translated = 0.0;
  double boundary_fraction_base = 0.0;
};

/// Compares the nodal functionals of f and its tau-translate over the window
/// for the standard weight bank (constant, coordinate, bump). Throws
/// SkippedLowMarginError when near-singular zeros carry a non-negligible
/// share of the extracted length at this grid scale.
ReplicationReport replication_compare(const FieldRealization& f, const std::vector<double>& tau,
                                      double eps_certified, const Window& window, double h);

/// Full pipeline: sample the rescaled wave, find tau by pigeonhole at grid
/// parameter m, and compare the two nodal sets.
ReplicationReport replication_experiment(std::int64_t n, std::uint64_t seed, int m,
                                         const Window& window, double h);

struct ExpectedLengthReport {
  std::int64_t n = 0;
  int trials = 0;
  double grid_h = 0.0;
  double target = 0.0;  // |Omega| sqrt(E_n) / (2 sqrt(2)) on the unit torus
  double mean = 0.0;
  double stddev = 0.0;
  double rel_error = 0.0;
  std::vector<double> lengths;
};

/// Monte Carlo mean of the full-torus nodal length against the closed form.
ExpectedLengthReport expected_length_check(std::int64_t n, int trials, std::uint64_t seed,
                                           int threads = 0);

struct CorrelationReport {
  std::int64_t n = 0;
  double eps = 0.0;
  int trials = 0;
  double ball_radius = 0.0;
  double correlation = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // bootstrap 95% interval
  double var_full = 0.0;
  double var_reference = 0.0;  // (1/512) E_n / N_n^2, trend reference only
  std::vector<double> full_lengths;
  std::vector<double> ball_lengths;
};

/// Correlation between full-torus nodal length and the length inside the
/// centered ball of radius n^(-1/2+eps) (clipped to the fundamental domain).
CorrelationReport correlation_experiment(std::int64_t n, double eps, int trials,
                                         std::uint64_t seed, int threads = 0);

}  // namespace arw
