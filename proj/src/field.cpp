#include "arw/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "arw/parallel.hpp"
#include "arw/rng.hpp"

namespace arw {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double FieldRealization::eval(double x, double y) const {
  double sum = 0.0;
  const std::size_t n = modes();
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = kTwoPi * (vectors[2 * k] * x + vectors[2 * k + 1] * y);
    sum += coeff_cos[k] * std::cos(phase) + coeff_sin[k] * std::sin(phase);
  }
  return sum;
}

std::array<double, 2> FieldRealization::gradient(double x, double y) const {
  double gx = 0.0, gy = 0.0;
  const std::size_t n = modes();
  for (std::size_t k = 0; k < n; ++k) {
    const double vx = vectors[2 * k], vy = vectors[2 * k + 1];
    const double phase = kTwoPi * (vx * x + vy * y);
    const double d = kTwoPi * (-coeff_cos[k] * std::sin(phase) + coeff_sin[k] * std::cos(phase));
    gx += vx * d;
    gy += vy * d;
  }
  return {gx, gy};
}

std::array<double, 3> FieldRealization::hessian(double x, double y) const {
  double dxx = 0.0, dxy = 0.0, dyy = 0.0;
  const std::size_t n = modes();
  for (std::size_t k = 0; k < n; ++k) {
    const double vx = vectors[2 * k], vy = vectors[2 * k + 1];
    const double phase = kTwoPi * (vx * x + vy * y);
    const double dd = -kTwoPi * kTwoPi * (coeff_cos[k] * std::cos(phase) + coeff_sin[k] * std::sin(phase));
    dxx += vx * vx * dd;
    dxy += vx * vy * dd;
    dyy += vy * vy * dd;
  }
  return {dxx, dxy, dyy};
}

double FieldRealization::laplacian(double x, double y) const {
  const auto h = hessian(x, y);
  return h[0] + h[2];
}

double FieldRealization::amplitude_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < modes(); ++k) s += std::hypot(coeff_cos[k], coeff_sin[k]);
  return s;
}

double FieldRealization::gradient_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < modes(); ++k) {
    const double vn = std::hypot(vectors[2 * k], vectors[2 * k + 1]);
    s += kTwoPi * vn * std::hypot(coeff_cos[k], coeff_sin[k]);
  }
  return s;
}

double FieldRealization::hessian_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < modes(); ++k) {
    const double vn2 = vectors[2 * k] * vectors[2 * k] + vectors[2 * k + 1] * vectors[2 * k + 1];
    s += kTwoPi * kTwoPi * vn2 * std::hypot(coeff_cos[k], coeff_sin[k]);
  }
  return s;
}

FieldRealization sample_arw(const FrequencySet& fs, std::uint64_t seed, bool rescaled) {
  if (fs.points.empty()) throw std::invalid_argument("sample_arw: empty frequency set");
  FieldRealization f;
  f.seed = seed;
  f.rescaled = rescaled;
  f.n = fs.n;
  const double root = std::sqrt(static_cast<double>(fs.n));
  const double card = static_cast<double>(fs.cardinality);
  const double amp = std::sqrt(2.0 / card);
  const CounterRng rng(seed);
  std::uint64_t idx = 0;
  for (const auto& p : fs.points) {
    // One representative per {lambda, -lambda} pair.
    if (p.x < 0 || (p.x == 0 && p.y < 0)) continue;
    f.vectors.push_back(rescaled ? p.x / root : static_cast<double>(p.x));
    f.vectors.push_back(rescaled ? p.y / root : static_cast<double>(p.y));
    f.coeff_cos.push_back(amp * rng.normal(idx++));
    f.coeff_sin.push_back(amp * rng.normal(idx++));
  }
  return f;
}

FieldRealization translated_field(const FieldRealization& f, std::array<double, 2> tau) {
  FieldRealization g = f;
  for (std::size_t k = 0; k < f.modes(); ++k) {
    const double phi = kTwoPi * (f.vectors[2 * k] * tau[0] + f.vectors[2 * k + 1] * tau[1]);
    const double c = std::cos(phi), s = std::sin(phi);
    g.coeff_cos[k] = f.coeff_cos[k] * c + f.coeff_sin[k] * s;
    g.coeff_sin[k] = -f.coeff_cos[k] * s + f.coeff_sin[k] * c;
  }
  return g;
}

DirectionSample sample_directions(int d, int count, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("sample_directions: d must be >= 2");
  if (count < 1) throw std::invalid_argument("sample_directions: count must be >= 1");
  DirectionSample ds;
  ds.dim = d;
  ds.seed = seed;
  ds.directions.resize(static_cast<std::size_t>(count) * d);
  const CounterRng rng(seed);
  for (int k = 0; k < count; ++k) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int j = 0; j < d; ++j) {
        const double g = rng.normal(static_cast<std::uint64_t>(k) * d + j);
        ds.directions[static_cast<std::size_t>(k) * d + j] = g;
        norm2 += g * g;
      }
    } while (norm2 == 0.0);  // probability-zero guard
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < d; ++j) ds.directions[static_cast<std::size_t>(k) * d + j] *= inv;
  }
  return ds;
}

CovarianceKernel empirical_kernel(const DirectionSample& ds) {
  return kernel_from_vectors(ds.dim, ds.directions);
}

std::vector<OptimalityRow> optimality_experiment(int d, std::span<const int> n_range, double a,
                                                 double epsilon, int trials, std::uint64_t seed,
                                                 double spacing_factor, int threads) {
  if (d != 2) throw std::invalid_argument("optimality_experiment: only d = 2 is implemented");
  if (trials < 1) throw std::invalid_argument("optimality_experiment: trials must be >= 1");
  std::vector<OptimalityRow> rows;
  const CounterRng master(seed);
  for (int n_modes : n_range) {
    const double window = std::exp(a * n_modes);
    const double h = spacing_factor / n_modes;
    if (window * n_modes / spacing_factor > 1.0e4)
      throw std::invalid_argument("optimality_experiment: grid exceeds the desk-scale guard");
    const double threshold = 1.0 - epsilon;
    std::vector<char> no_period(trials, 0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t trial) {
      const auto sub = master.derive((static_cast<std::uint64_t>(n_modes) << 32) | trial);
      const auto dirs = sample_directions(d, n_modes, sub.seed());
      const auto kernel = empirical_kernel(dirs);
      const auto steps = static_cast<std::int64_t>(std::floor(window / h));
      bool found = false;
      for (std::int64_t i = -steps; i <= steps && !found; ++i) {
        for (std::int64_t j = -steps; j <= steps; ++j) {
          const double t[2] = {i * h, j * h};
          const double norm2 = t[0] * t[0] + t[1] * t[1];
          if (norm2 < 1.0 || norm2 > window * window) continue;
          if (eval(kernel, t) > threshold) {
            found = true;
            break;
          }
        }
      }
      no_period[trial] = found ? 0 : 1;
    });
    OptimalityRow row;
    row.n_modes = n_modes;
    row.trials = trials;
    for (char c : no_period) row.no_period_count += c;
    row.probability = static_cast<double>(row.no_period_count) / trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace arw
