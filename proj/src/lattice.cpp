#include "arw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "arw/errors.hpp"

namespace arw {

namespace {

std::int64_t isqrt64(std::int64_t v) {
  if (v < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  auto strip = [&](std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  for (std::int64_t d = 3; d * d <= n; d += 2) strip(d);
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_sum_of_two_squares(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("is_sum_of_two_squares: n must be positive");
  for (const auto& [p, e] : factorize(n)) {
    if (p % 4 == 3 && e % 2 != 0) return false;
  }
  return true;
}

std::int64_t cardinality_from_factorization(std::int64_t n) {
  if (!is_sum_of_two_squares(n))
    throw NotRepresentableError("n=" + std::to_string(n) + " is not a sum of two squares");
  std::int64_t card = 4;
  for (const auto& [p, e] : factorize(n)) {
    if (p % 4 == 1) card *= (1 + e);
  }
  return card;
}

GaussianAngles gaussian_prime_angles(std::int64_t n) {
  if (!is_sum_of_two_squares(n))
    throw NotRepresentableError("n=" + std::to_string(n) + " is not a sum of two squares");
  GaussianAngles out;
  int alpha2 = 0;
  for (const auto& [p, e] : factorize(n)) {
    if (p == 2) {
      alpha2 = e;
    } else if (p % 4 == 1) {
      // p = a^2 + b^2 with 0 < b < a; unique up to the symmetries we fixed away.
      std::int64_t a = 0, b = 0;
      for (std::int64_t cand = isqrt64(p); cand * cand * 2 > p; --cand) {
        std::int64_t rem = p - cand * cand;
        std::int64_t s = isqrt64(rem);
        if (s * s == rem) {
          a = cand;
          b = s;
          break;
        }
      }
      if (a == 0) throw std::logic_error("two-square decomposition not found for split prime");
      out.split_angles.push_back(std::atan2(static_cast<double>(b), static_cast<double>(a)));
    }
    // Primes q = 3 mod 4 contribute a positive real factor: no angle.
  }
  out.base_angle = std::fmod(alpha2 * std::numbers::pi / 4.0, 2.0 * std::numbers::pi);
  return out;
}

FrequencySet enumerate_lattice(std::int64_t n) {
  if (!is_sum_of_two_squares(n))
    throw NotRepresentableError("n=" + std::to_string(n) + " is not a sum of two squares");
  std::set<LatticePoint> pts;
  for (std::int64_t x = 0; x * x <= n; ++x) {
    const std::int64_t rem = n - x * x;
    const std::int64_t y = isqrt64(rem);
    if (y * y != rem) continue;
    const std::int64_t xs[2] = {x, -x};
    const std::int64_t ys[2] = {y, -y};
    for (std::int64_t a : xs)
      for (std::int64_t b : ys) {
        pts.insert({a, b});
        pts.insert({b, a});
      }
  }
  FrequencySet fs;
  fs.n = n;
  fs.points.assign(pts.begin(), pts.end());
  fs.cardinality = static_cast<std::int64_t>(fs.points.size());

  const auto angles = gaussian_prime_angles(n);
  fs.split_angles = angles.split_angles;
  fs.base_angle = angles.base_angle;
  bool squarefree_split = true;
  int split_count = 0;
  for (const auto& [p, e] : factorize(n)) {
    if (p % 4 == 1) {
      ++split_count;
      if (e != 1) squarefree_split = false;
    }
  }
  if (squarefree_split) fs.omega = split_count;
  return fs;
}

AngularMeasure angular_measure(const FrequencySet& fs) {
  AngularMeasure m;
  m.atoms.reserve(fs.points.size());
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& p : fs.points) {
    double a = std::atan2(static_cast<double>(p.y), static_cast<double>(p.x));
    if (a < 0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    m.atoms.push_back(a);
  }
  std::sort(m.atoms.begin(), m.atoms.end());
  m.weight = m.atoms.empty() ? 0.0 : 1.0 / static_cast<double>(m.atoms.size());
  return m;
}

double kolmogorov_distance(const AngularMeasure& m) {
  const auto& a = m.atoms;
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("kolmogorov_distance: empty measure");
  const double two_pi = 2.0 * std::numbers::pi;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Closed arc from atom i to atom j, travelling counterclockwise.
      const std::size_t count = ((j + n - i) % n) + 1;
      double len = a[j] - a[i];
      if (len < 0) len += two_pi;
      const double mu = static_cast<double>(count) / static_cast<double>(n);
      const double sigma = len / two_pi;
      // Shrinking to the closed arc maximises mu - sigma; opening both
      // endpoints drops exactly the two boundary atoms and maximises
      // sigma - mu.
      best = std::max(best, mu - sigma);
      best = std::max(best, sigma - (mu - 2.0 / static_cast<double>(n)));
    }
  }
  return best;
}

std::vector<std::int64_t> admissible_sequence(std::int64_t limit, double kappa) {
  constexpr double kKappaMax = 0.34657359027997264;  // log(2)/2
  if (!(kappa > 0.0 && kappa < kKappaMax))
    throw std::invalid_argument("admissible_sequence: kappa must lie in (0, log(2)/2)");
  std::vector<std::int64_t> out;
  // n = 1 is excluded: log(1)^kappa = 0 makes the bound vacuous there.
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (!is_sum_of_two_squares(n)) continue;
    const double bound = std::pow(std::log(static_cast<double>(n)), kappa);
    if (static_cast<double>(cardinality_from_factorization(n)) >= bound) out.push_back(n);
  }
  return out;
}

}  // namespace arw
