#include <doctest.h>

#include <cmath>
#include <vector>

#include "nio/errors.hpp"
#include "nio/partition.hpp"
#include "support/oracles.hpp"

using nio::Density;
using nio::Partition;

TEST_CASE("partition geometry on n=8") {
  Partition p(8);
  CHECK(p.n() == 8);
  CHECK(p.delta() == 0.25);
  CHECK(p.left(0) == -1.0);
  CHECK(p.right(7) == 1.0);
  CHECK(p.center(0) == doctest::Approx(-0.875).epsilon(1e-15));
  CHECK(p.left(4) == 0.0);  // even n puts the critical point on a boundary
}

TEST_CASE("cell_index covers the closed interval") {
  Partition p(8);
  CHECK(p.cell_index(-1.0) == 0);
  CHECK(p.cell_index(1.0) == 7);  // right endpoint clamps into the last cell
  CHECK(p.cell_index(0.0) == 4);
  CHECK(p.cell_index(-1e-12) == 3);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(p.cell_index(p.center(i)) == i);
    CHECK(p.cell_index(p.left(i)) == i);
  }
}

TEST_CASE("partition rejects odd or degenerate sizes") {
  CHECK_THROWS_AS(Partition(7), nio::DomainError);
  CHECK_THROWS_AS(Partition(0), nio::DomainError);
  CHECK_THROWS_AS(Partition(1), nio::DomainError);
}

TEST_CASE("uniform density has unit mass and value one half") {
  Density f = Density::uniform(10);
  CHECK(f.n() == 10);
  for (double v : f.values) CHECK(v == 0.5);
  CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("masses and from_masses round trip") {
  std::vector<double> masses = {0.1, 0.2, 0.3, 0.4};
  Density f = Density::from_masses(masses);
  CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-15));
  std::vector<double> back = f.masses();
  REQUIRE(back.size() == masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    CHECK(back[i] == doctest::Approx(masses[i]).epsilon(1e-15));
  }
}

TEST_CASE("l1 distance is a scaled absolute difference") {
  Density f = Density::uniform(4);
  Density g = f;
  g.values[0] += 0.2;
  g.values[3] -= 0.1;
  CHECK(f.l1_distance(g) == doctest::Approx(0.5 * 0.3).epsilon(1e-14));
  CHECK(f.l1_distance(g) == g.l1_distance(f));
  CHECK(f.l1_distance(f) == 0.0);
}

TEST_CASE("project reproduces exact cell averages of x^2") {
  Partition p(8);
  Density f = nio::project(p, [](double x) { return x * x; });
  for (std::size_t i = 0; i < p.n(); ++i) {
    double a = p.left(i);
    double b = p.right(i);
    double exact = (b * b * b - a * a * a) / 3.0 / p.delta();
    CHECK(f.values[i] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("project matches a fixed Simpson oracle for exp") {
  Partition p(6);
  Density f = nio::project(p, [](double x) { return std::exp(x); });
  for (std::size_t i = 0; i < p.n(); ++i) {
    double oracle = testsupport::simpson_fixed([](double x) { return std::exp(x); },
                                               p.left(i), p.right(i), 512) /
                    p.delta();
    CHECK(f.values[i] == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("adaptive integral on smooth references") {
  CHECK(nio::adaptive_integral([](double x) { return x * x; }, -1.0, 1.0, 1e-12) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(nio::adaptive_integral([](double x) { return std::sin(x); }, 0.0,
                               3.141592653589793, 1e-11) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(nio::adaptive_integral([](double x) { return std::exp(x); }, 0.0, 1.0,
                               1e-12) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("adaptive integral resolves an oscillatory integrand") {
  double exact = (1.0 - std::cos(40.0)) / 40.0;
  CHECK(nio::adaptive_integral([](double x) { return std::sin(40.0 * x); }, 0.0, 1.0,
                               1e-11) == doctest::Approx(exact).epsilon(1e-9));
}
