#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "arw/errors.hpp"
#include "arw/lattice.hpp"
#include "oracles.hpp"

using namespace arw;

TEST_CASE("two-square criterion matches the brute-force sieve") {
  const auto counts = oracles::two_square_counts(500);
  for (std::int64_t n = 1; n <= 500; ++n)
    CHECK(is_sum_of_two_squares(n) == (counts[n] > 0));
  CHECK(is_sum_of_two_squares(25));
  CHECK_FALSE(is_sum_of_two_squares(3));
  CHECK(is_sum_of_two_squares(9));
}

TEST_CASE("enumerate_lattice reproduces the known small point sets") {
  const auto fs25 = enumerate_lattice(25);
  CHECK(fs25.cardinality == 12);
  const std::set<LatticePoint> expected25 = {{5, 0},  {-5, 0}, {0, 5},  {0, -5},
                                             {3, 4},  {3, -4}, {-3, 4}, {-3, -4},
                                             {4, 3},  {4, -3}, {-4, 3}, {-4, -3}};
  CHECK(std::set<LatticePoint>(fs25.points.begin(), fs25.points.end()) == expected25);
  CHECK_FALSE(fs25.omega.has_value());  // 25 = 5^2, split exponent 2

  const auto fs2 = enumerate_lattice(2);
  CHECK(fs2.cardinality == 4);
  CHECK(*fs2.omega == 0);

  const auto fs5 = enumerate_lattice(5);
  CHECK(fs5.cardinality == 8);
  CHECK(*fs5.omega == 1);
  CHECK(fs5.split_angles.size() == 1);
  CHECK(fs5.split_angles[0] == doctest::Approx(std::atan2(1.0, 2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(enumerate_lattice(3), NotRepresentableError);
  CHECK_THROWS_AS(enumerate_lattice(7), NotRepresentableError);
  CHECK_THROWS_AS(cardinality_from_factorization(12), NotRepresentableError);
}

TEST_CASE("cardinality: enumeration == divisor formula == sieve, n <= 2000") {
  const auto counts = oracles::two_square_counts(2000);
  for (std::int64_t n = 1; n <= 2000; ++n) {
    if (counts[n] == 0) continue;
    const auto fs = enumerate_lattice(n);
    CHECK(fs.cardinality == counts[n]);
    CHECK(fs.cardinality == cardinality_from_factorization(n));
    CHECK(fs.cardinality == oracles::two_square_count_formula(n));
  }
}

TEST_CASE("point sets are closed under the eight lattice symmetries") {
  for (std::int64_t n : {2, 5, 25, 65, 325, 1105}) {
    const auto fs = enumerate_lattice(n);
    const std::set<LatticePoint> pts(fs.points.begin(), fs.points.end());
    for (const auto& p : pts) {
      for (const auto& q : {LatticePoint{-p.x, p.y}, LatticePoint{p.x, -p.y},
                            LatticePoint{-p.x, -p.y}, LatticePoint{p.y, p.x},
                            LatticePoint{-p.y, p.x}, LatticePoint{p.y, -p.x},
                            LatticePoint{-p.y, -p.x}}) {
        CHECK(pts.count(q) == 1);
      }
    }
  }
}

TEST_CASE("squarefree split part: cardinality = 2^(omega+2)") {
  for (std::int64_t n : {2, 5, 10, 65, 85, 1105, 32045}) {
    const auto fs = enumerate_lattice(n);
    REQUIRE(fs.omega.has_value());
    CHECK(fs.cardinality == (std::int64_t{1} << (*fs.omega + 2)));
  }
}

TEST_CASE("gaussian prime angles: canonical representative and base part") {
  const auto a5 = gaussian_prime_angles(5);
  CHECK(a5.split_angles.size() == 1);
  CHECK(a5.split_angles[0] == doctest::Approx(std::atan(0.5)).epsilon(1e-15));

  const auto a4 = gaussian_prime_angles(4);  // 2^2: ramified part only
  CHECK(a4.split_angles.empty());
  CHECK(a4.base_angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));

  const auto a65 = gaussian_prime_angles(65);  // 5 * 13
  REQUIRE(a65.split_angles.size() == 2);
  CHECK(a65.split_angles[0] == doctest::Approx(std::atan(0.5)).epsilon(1e-15));
  CHECK(a65.split_angles[1] == doctest::Approx(std::atan(2.0 / 3.0)).epsilon(1e-15));
  for (double th : a65.split_angles) {
    CHECK(th > 0.0);
    CHECK(th < std::numbers::pi / 4);
  }
}

TEST_CASE("angle decomposition reconstructs the atom set") {
  // exp(i(pi nu / 2 + sum eta_j theta_j + theta)) over nu in {0..3},
  // eta in {-1,1}^omega must reproduce the angular atoms when every split
  // exponent is 1.
  const double two_pi = 2 * std::numbers::pi;
  for (std::int64_t n : {2, 4, 5, 8, 9, 10, 18, 65, 90, 1105}) {
    const auto fs = enumerate_lattice(n);
    REQUIRE(fs.omega.has_value());
    const int omega = *fs.omega;
    std::vector<double> reconstructed;
    for (int nu = 0; nu < 4; ++nu) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << omega); ++mask) {
        double angle = nu * std::numbers::pi / 2 + fs.base_angle;
        for (int j = 0; j < omega; ++j)
          angle += ((mask >> j) & 1 ? 1.0 : -1.0) * fs.split_angles[j];
        angle = std::fmod(angle, two_pi);
        if (angle < 0) angle += two_pi;
        reconstructed.push_back(angle);
      }
    }
    std::sort(reconstructed.begin(), reconstructed.end());
    const auto measure = angular_measure(fs);
    REQUIRE(reconstructed.size() == measure.atoms.size());
    for (std::size_t i = 0; i < reconstructed.size(); ++i) {
      double d = std::abs(reconstructed[i] - measure.atoms[i]);
      d = std::min(d, two_pi - d);
      CHECK(d < 1e-9);
    }
  }
}

TEST_CASE("kolmogorov distance: exact values and scan oracle") {
  CHECK(kolmogorov_distance(angular_measure(enumerate_lattice(1))) ==
        doctest::Approx(0.25).epsilon(1e-14));

  // regression constant, first recorded from this implementation
  CHECK(kolmogorov_distance(angular_measure(enumerate_lattice(25))) ==
        doctest::Approx(0.1214994313658001).epsilon(1e-12));

  for (std::int64_t n : {5, 25, 65}) {
    const auto m = angular_measure(enumerate_lattice(n));
    const double exact = kolmogorov_distance(m);
    CHECK(exact > 0.0);
    CHECK(exact <= 0.25 + 1e-12);
    CHECK(exact == doctest::Approx(oracles::kolmogorov_scan(m.atoms)).epsilon(1e-5));
  }
}

TEST_CASE("kolmogorov distance is rotation invariant") {
  const double two_pi = 2 * std::numbers::pi;
  const auto base = angular_measure(enumerate_lattice(65));
  const double reference = kolmogorov_distance(base);
  for (double rot : {0.1, 1.0, 2.5, 4.9}) {
    AngularMeasure rotated = base;
    for (double& a : rotated.atoms) {
      a = std::fmod(a + rot, two_pi);
      if (a < 0) a += two_pi;
    }
    std::sort(rotated.atoms.begin(), rotated.atoms.end());
    CHECK(kolmogorov_distance(rotated) == doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("admissible sequence") {
  const auto small = admissible_sequence(10, 0.3);
  CHECK(small == std::vector<std::int64_t>{2, 4, 5, 8, 9, 10});
  for (auto n : small)
    CHECK(static_cast<double>(cardinality_from_factorization(n)) >=
          std::pow(std::log(static_cast<double>(n)), 0.3));

  CHECK(admissible_sequence(1, 0.2).empty());

  const auto big = admissible_sequence(1105, 0.3);
  CHECK(std::find(big.begin(), big.end(), 1105) != big.end());
  CHECK(cardinality_from_factorization(1105) == 32);

  CHECK_THROWS(admissible_sequence(10, 0.0));
  CHECK_THROWS(admissible_sequence(10, 0.35));
}
