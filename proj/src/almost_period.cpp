#include "arw/almost_period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "arw/bessel.hpp"
#include "arw/errors.hpp"
#include "arw/parallel.hpp"

namespace arw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dist_to_integer(double v) {
  const double f = v - std::floor(v);
  return std::min(f, 1.0 - f);
}

struct ConstraintSet {
  const double* mus;  // N x dim
  std::size_t count;
  int dim;

  double dot(std::size_t k, std::span<const std::int64_t> x) const {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += mus[k * dim + j] * static_cast<double>(x[j]);
    return s;
  }

  double max_distance(std::span<const std::int64_t> x) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) worst = std::max(worst, dist_to_integer(dot(k, x)));
    return worst;
  }

  bool qualifies(std::span<const std::int64_t> x, double tol) const {
    for (std::size_t k = 0; k < count; ++k)
      if (dist_to_integer(dot(k, x)) > tol) return false;
    return true;
  }

  std::uint64_t cell_index(std::span<const std::int64_t> x, int m) const {
    std::uint64_t id = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const double v = dot(k, x);
      auto digit = static_cast<std::uint64_t>(std::min<double>(m - 1, std::floor((v - std::floor(v)) * m)));
      id = id * static_cast<std::uint64_t>(m) + digit;
    }
    return id;
  }
};

/// Visits lattice points with |x|_inf == s in lexicographic order.
template <class Visit>
bool visit_shell(int dim, std::int64_t s, std::vector<std::int64_t>& x, int coord, bool pinned, Visit&& visit) {
  if (coord == dim) {
    return pinned ? visit(x) : false;
  }
  for (std::int64_t v = -s; v <= s; ++v) {
    const bool boundary = (v == -s || v == s);
    // Some coordinate must reach +-s; prune branches that no longer can.
    if (!pinned && !boundary && coord == dim - 1) continue;
    x[coord] = v;
    if (visit_shell(dim, s, x, coord + 1, pinned || boundary, visit)) return true;
  }
  return false;
}

std::int64_t box_bound(std::size_t n_constraints, int dim, int m) {
  const double exponent = static_cast<double>(n_constraints) / dim * std::log(static_cast<double>(m));
  if (exponent > std::log(4.0e15)) return std::numeric_limits<std::int64_t>::max() / 4;
  return static_cast<std::int64_t>(std::ceil(std::exp(exponent) - 1e-9));
}

}  // namespace

const char* to_string(PeriodMethod m) {
  switch (m) {
    case PeriodMethod::pigeonhole: return "pigeonhole";
    case PeriodMethod::exhaustive: return "exhaustive";
    case PeriodMethod::linearised: return "linearised";
  }
  return "?";
}

double AlmostPeriod::sup_norm() const {
  double s = 0.0;
  for (double v : tau) s = std::max(s, std::abs(v));
  return s;
}

std::vector<std::int64_t> dirichlet_pigeonhole(std::span<const double> mus, int dim, int m,
                                               std::int64_t max_box) {
  if (dim < 1) throw std::invalid_argument("dirichlet_pigeonhole: dim must be >= 1");
  if (m < 2) throw std::invalid_argument("dirichlet_pigeonhole: m must be >= 2");
  if (mus.empty() || mus.size() % dim != 0)
    throw std::invalid_argument("dirichlet_pigeonhole: constraint data does not tile dim");
  const std::size_t n = mus.size() / dim;
  const ConstraintSet cs{mus.data(), n, dim};

  const std::int64_t guaranteed = box_bound(n, dim, m);
  const std::int64_t limit = std::min(guaranteed, max_box);
  const double tol = 1.0 / m;
  const bool use_hash = static_cast<double>(n) * std::log2(static_cast<double>(m)) <= 40.0;

  std::unordered_map<std::uint64_t, std::vector<std::int64_t>> cells;
  std::vector<std::int64_t> x(dim), result;

  auto verified = [&](std::vector<std::int64_t> candidate) {
    if (!cs.qualifies(candidate, tol + 1e-12))
      throw std::logic_error("dirichlet_pigeonhole: verification of returned vector failed");
    result = std::move(candidate);
    return true;
  };

  for (std::int64_t s = 1; s <= limit; ++s) {
    const bool done = visit_shell(dim, s, x, 0, false, [&](const std::vector<std::int64_t>& p) {
      if (cs.qualifies(p, tol)) return verified(p);
      if (use_hash) {
        bool positive = true;
        for (std::int64_t v : p) positive = positive && v >= 1;
        if (positive) {
          auto [it, inserted] = cells.try_emplace(cs.cell_index(p, m), p);
          if (!inserted) {
            std::vector<std::int64_t> diff(dim);
            for (int j = 0; j < dim; ++j) diff[j] = p[j] - it->second[j];
            return verified(std::move(diff));
          }
        }
      }
      return false;
    });
    if (done) return result;
  }
  throw NotFoundWithinBoxError("dirichlet_pigeonhole: no qualifying vector within box " +
                               std::to_string(limit));
}

double sup_difference_bound(const CovarianceKernel& k, std::span<const double> tau) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double dot = 0.0;
    const auto g = k.vec(i);
    for (int j = 0; j < k.dim; ++j) dot += g[j] * tau[j];
    sum += 2.0 * std::abs(std::sin(std::numbers::pi * dot));
  }
  return k.weight * sum;
}

double sup_derivative_difference_bound(const CovarianceKernel& k, std::span<const int> alpha,
                                       std::span<const double> tau) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double dot = 0.0, amp = 1.0;
    const auto g = k.vec(i);
    for (int j = 0; j < k.dim; ++j) {
      dot += g[j] * tau[j];
      for (int rep = 0; rep < alpha[j]; ++rep) amp *= kTwoPi * std::abs(g[j]);
    }
    sum += amp * 2.0 * std::abs(std::sin(std::numbers::pi * dot));
  }
  return k.weight * sum;
}

SupCertificate certified_sup_difference(const CovarianceKernel& k, std::span<const double> tau,
                                        double domain_radius, double h, std::span<const int> alpha,
                                        int threads) {
  if (h <= 0) throw std::invalid_argument("certified_sup_difference: h must be positive");
  const int d = k.dim;
  std::vector<int> alpha_store(alpha.begin(), alpha.end());
  alpha_store.resize(d, 0);

  double lo, hi;
  if (domain_radius > 0) {
    lo = -domain_radius;
    hi = domain_radius;
  } else {
    if (!k.period)
      throw std::invalid_argument("certified_sup_difference: aperiodic kernel needs a domain radius");
    lo = 0.0;
    hi = *k.period;
  }
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / h));
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= steps + 1;

  // Lipschitz constant of t -> d^a K(t+tau) - d^a K(t).
  double lip = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto g = k.vec(i);
    double norm = 0.0, amp = 1.0;
    for (int j = 0; j < d; ++j) {
      norm += g[j] * g[j];
      for (int rep = 0; rep < alpha_store[j]; ++rep) amp *= kTwoPi * std::abs(g[j]);
    }
    lip += 2.0 * amp * kTwoPi * std::sqrt(norm);
  }
  lip *= k.weight;

  const std::size_t rows = steps + 1;
  const std::size_t cols = total / rows;
  std::vector<double> row_sup(rows, 0.0);
  parallel_for(rows, threads, [&](std::size_t r) {
    std::vector<double> t(d), tt(d);
    double best = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t rem = c;
      t[0] = lo + static_cast<double>(r) * h;
      for (int j = 1; j < d; ++j) {
        t[j] = lo + static_cast<double>(rem % (steps + 1)) * h;
        rem /= steps + 1;
      }
      for (int j = 0; j < d; ++j) tt[j] = t[j] + tau[j];
      const double diff = std::abs(eval_partial(k, alpha_store, tt) - eval_partial(k, alpha_store, t));
      best = std::max(best, diff);
    }
    row_sup[r] = best;
  });

  SupCertificate cert;
  cert.grid_spacing = h;
  cert.grid_sup = *std::max_element(row_sup.begin(), row_sup.end());
  cert.lipschitz_bound = lip;
  cert.certified_sup = cert.grid_sup + lip * h * std::sqrt(static_cast<double>(d)) / 2.0;
  return cert;
}

AlmostPeriod almost_period_of_kernel(const CovarianceKernel& k, int m, std::int64_t max_box) {
  if (k.size() == 0) throw std::invalid_argument("almost_period_of_kernel: empty kernel");
  const auto x = dirichlet_pigeonhole(k.vectors, k.dim, m, max_box);
  AlmostPeriod ap;
  ap.tau.assign(x.begin(), x.end());
  ap.method = PeriodMethod::pigeonhole;
  ap.m = m;
  ap.epsilon_target = 1.0 / m;
  double n2 = 0.0, worst = 0.0;
  for (double v : ap.tau) n2 += v * v;
  ap.norm = std::sqrt(n2);
  for (std::size_t i = 0; i < k.size(); ++i) {
    double dot = 0.0;
    const auto g = k.vec(i);
    for (int j = 0; j < k.dim; ++j) dot += g[j] * ap.tau[j];
    worst = std::max(worst, dist_to_integer(dot));
  }
  ap.max_fractional_distance = worst;
  // Mean-value chain gives 2 pi / m; the per-term sine bound is exact and
  // usually much smaller. Both are true global bounds.
  ap.epsilon_certified = std::min(kTwoPi / m, sup_difference_bound(k, ap.tau));
  return ap;
}

std::optional<AlmostPeriod> smallest_almost_period_scan(const CovarianceKernel& k, double epsilon,
                                                        double radius, double h) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("smallest_almost_period_scan: epsilon must lie in (0,1)");
  if (h <= 0 || radius < 1.0)
    throw std::invalid_argument("smallest_almost_period_scan: need h > 0 and radius >= 1");
  const double threshold = 1.0 - epsilon;

  double best_norm = std::numeric_limits<double>::infinity();
  std::vector<double> best_tau;

  if (k.dim == 1) {
    for (double t = 1.0; t <= radius; t += h) {
      const double v[1] = {t};
      if (eval(k, v) > threshold) {
        best_norm = t;
        best_tau = {t};
        break;
      }
    }
  } else if (k.dim == 2) {
    const auto rings = static_cast<std::int64_t>(std::ceil(radius / h));
    for (std::int64_t ring = 1; ring <= rings; ++ring) {
      if (static_cast<double>(ring) * h > best_norm) break;  // no closer point can follow
      auto consider = [&](std::int64_t i, std::int64_t j) {
        const double t[2] = {i * h, j * h};
        const double norm = std::hypot(t[0], t[1]);
        if (norm < 1.0 || norm > radius || norm >= best_norm) return;
        if (eval(k, t) > threshold) {
          best_norm = norm;
          best_tau = {t[0], t[1]};
        }
      };
      for (std::int64_t i = -ring; i <= ring; ++i) {
        consider(i, -ring);
        consider(i, ring);
      }
      for (std::int64_t j = -ring + 1; j <= ring - 1; ++j) {
        consider(-ring, j);
        consider(ring, j);
      }
    }
  } else {
    throw std::invalid_argument("smallest_almost_period_scan: dim must be 1 or 2");
  }

  if (best_tau.empty()) return std::nullopt;
  AlmostPeriod ap;
  ap.tau = best_tau;
  ap.norm = best_norm;
  ap.method = PeriodMethod::exhaustive;
  ap.epsilon_target = epsilon;
  ap.epsilon_certified = 1.0 - eval(k, ap.tau);  // measured correlation defect at tau
  return ap;
}

double lower_bound_witness(const FrequencySet& fs, std::span<const double> tau_rescaled) {
  const auto k = rescaled_kernel(fs);
  const double r = std::hypot(tau_rescaled[0], tau_rescaled[1]);
  const double j0 = bessel_j0(kTwoPi * r);
  const double rn = eval(k, tau_rescaled);
  return std::abs(1.0 - j0) - std::abs(rn - j0);
}

AlmostPeriod linearised_almost_period(const LinearisedKernel& k, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("linearised_almost_period: epsilon must lie in (0,1)");
  const auto omega = k.base_angles.size();
  if (omega == 0) {
    // No split primes: s(t) = cos(0) = 1 identically, every integer works.
    AlmostPeriod ap;
    ap.tau = {1.0};
    ap.norm = 1.0;
    ap.method = PeriodMethod::linearised;
    ap.m = 1;
    ap.epsilon_target = epsilon;
    ap.epsilon_certified = 0.0;
    return ap;
  }
  const int m = static_cast<int>(std::ceil(kTwoPi * static_cast<double>(omega) / epsilon));
  auto x = dirichlet_pigeonhole(k.base_angles, 1, m);
  AlmostPeriod ap;
  ap.tau = {static_cast<double>(std::abs(x[0]))};  // dist constraints are sign-symmetric
  ap.norm = ap.tau[0];
  ap.method = PeriodMethod::linearised;
  ap.m = m;
  ap.epsilon_target = epsilon;
  double worst = 0.0, sharp = 0.0;
  for (double theta : k.base_angles) worst = std::max(worst, dist_to_integer(theta * ap.tau[0]));
  ap.max_fractional_distance = worst;
  for (double theta : k.eta_frequencies)
    sharp += 2.0 * std::abs(std::sin(std::numbers::pi * theta * ap.tau[0]));
  ap.epsilon_certified = std::min(epsilon, k.weight * sharp);
  return ap;
}

}  // namespace arw
