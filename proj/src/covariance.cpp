#include "arw/covariance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "arw/bessel.hpp"
#include "arw/errors.hpp"
#include "arw/parallel.hpp"

namespace arw {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double CovarianceKernel::max_vector_norm() const {
  double best = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    double s = 0.0;
    for (double v : vec(k)) s += v * v;
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double CovarianceKernel::mean_vector_norm() const {
  if (size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    double q = 0.0;
    for (double v : vec(k)) q += v * v;
    s += std::sqrt(q);
  }
  return s / static_cast<double>(size());
}

CovarianceKernel kernel_from_vectors(int dim, std::vector<double> vectors) {
  if (dim < 1) throw std::invalid_argument("kernel_from_vectors: dim must be >= 1");
  if (vectors.empty() || vectors.size() % dim != 0)
    throw std::invalid_argument("kernel_from_vectors: vector data does not tile dim");
  CovarianceKernel k;
  k.dim = dim;
  k.vectors = std::move(vectors);
  k.weight = 1.0 / static_cast<double>(k.size());
  return k;
}

CovarianceKernel arw_kernel(const FrequencySet& fs) {
  if (fs.points.empty()) throw std::invalid_argument("arw_kernel: empty frequency set");
  std::vector<double> v;
  v.reserve(2 * fs.points.size());
  for (const auto& p : fs.points) {
    v.push_back(static_cast<double>(p.x));
    v.push_back(static_cast<double>(p.y));
  }
  auto k = kernel_from_vectors(2, std::move(v));
  k.period = 1.0;
  return k;
}

CovarianceKernel rescaled_kernel(const FrequencySet& fs) {
  if (fs.points.empty()) throw std::invalid_argument("rescaled_kernel: empty frequency set");
  const double root = std::sqrt(static_cast<double>(fs.n));
  std::vector<double> v;
  v.reserve(2 * fs.points.size());
  for (const auto& p : fs.points) {
    v.push_back(static_cast<double>(p.x) / root);
    v.push_back(static_cast<double>(p.y) / root);
  }
  auto k = kernel_from_vectors(2, std::move(v));
  k.period = root;
  return k;
}

double eval(const CovarianceKernel& k, std::span<const double> t) {
  double sum = 0.0;
  const std::size_t n = k.size();
  const int d = k.dim;
  for (std::size_t i = 0; i < n; ++i) {
    const double* g = k.vectors.data() + i * d;
    double dot = 0.0;
    for (int j = 0; j < d; ++j) dot += g[j] * t[j];
    sum += std::cos(kTwoPi * dot);
  }
  return k.weight * sum;
}

double eval_partial(const CovarianceKernel& k, std::span<const int> alpha, std::span<const double> t) {
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("eval_partial: negative order");
    total += a;
  }
  if (total > 4)
    throw UnsupportedOrderError("eval_partial: |alpha|=" + std::to_string(total) + " exceeds cap 4");
  if (total == 0) return eval(k, t);

  // d^m/dx^m cos(x) = cos(x + m pi/2); each term picks up prod (2 pi g_j)^a_j.
  const double phase_shift = total * 0.5 * std::numbers::pi;
  double sum = 0.0;
  const std::size_t n = k.size();
  const int d = k.dim;
  for (std::size_t i = 0; i < n; ++i) {
    const double* g = k.vectors.data() + i * d;
    double dot = 0.0, amp = 1.0;
    for (int j = 0; j < d; ++j) {
      dot += g[j] * t[j];
      for (int rep = 0; rep < alpha[j]; ++rep) amp *= kTwoPi * g[j];
    }
    sum += amp * std::cos(kTwoPi * dot + phase_shift);
  }
  return k.weight * sum;
}

double gradient_bound(const CovarianceKernel& k) { return kTwoPi * k.mean_vector_norm(); }

LinearisedKernel linearised_kernel(const FrequencySet& fs) {
  if (!fs.omega.has_value())
    throw OmegaInvalidError("linearised_kernel: omega(n) undefined for n=" + std::to_string(fs.n) +
                            " (some split exponent exceeds 1)");
  const int omega = *fs.omega;
  LinearisedKernel k;
  k.base_angles = fs.split_angles;
  k.eta_frequencies.reserve(std::size_t{1} << omega);
  for (std::size_t mask = 0; mask < (std::size_t{1} << omega); ++mask) {
    double theta = 0.0;
    for (int j = 0; j < omega; ++j)
      theta += (mask >> j) & 1 ? fs.split_angles[j] : -fs.split_angles[j];
    theta -= std::floor(theta);  // mod 1
    k.eta_frequencies.push_back(theta);
  }
  k.weight = 1.0 / static_cast<double>(std::size_t{1} << omega);
  return k;
}

double eval_linearised(const LinearisedKernel& k, double t) {
  double sum = 0.0;
  for (double theta : k.eta_frequencies) sum += std::cos(kTwoPi * theta * t);
  return k.weight * sum;
}

CovarianceKernel linearised_as_kernel(const LinearisedKernel& k) {
  return kernel_from_vectors(1, k.eta_frequencies);
}

double berry_sup_deviation(const CovarianceKernel& k, double radius, double h, int threads) {
  if (h <= 0 || radius <= 0)
    throw std::invalid_argument("berry_sup_deviation: radius and h must be positive");
  const auto steps = static_cast<std::int64_t>(std::floor(radius / h));
  std::vector<double> row_sup(2 * steps + 1, 0.0);
  parallel_for(row_sup.size(), threads, [&](std::size_t idx) {
    const std::int64_t i = static_cast<std::int64_t>(idx) - steps;
    double best = 0.0;
    for (std::int64_t j = -steps; j <= steps; ++j) {
      const double t[2] = {i * h, j * h};
      const double r = std::hypot(t[0], t[1]);
      if (r > radius) continue;
      best = std::max(best, std::abs(eval(k, t) - bessel_j0(kTwoPi * r)));
    }
    row_sup[idx] = best;
  });
  double sup = 0.0;
  for (double v : row_sup) sup = std::max(sup, v);
  return sup;
}

}  // namespace arw
