#include <cmath>
#include <random>

#include "doctest.h"
#include "dwell/errors.hpp"
#include "dwell/potential.hpp"
#include "oracles.hpp"

using namespace dwell;

TEST_CASE("construction rejects non-confining coefficients") {
  CHECK_THROWS_AS(QuarticPotential(-1, 0, 0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(QuarticPotential(0, 1, 1, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(QuarticPotential(0, 0, -1, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(QuarticPotential(1, 0, NAN, 0, 0), InvalidArgument);
  CHECK_NOTHROW(QuarticPotential(0, 0, 2, 0, 0));
}

TEST_CASE("double_well maps alpha, beta, gamma, v0 onto coefficients") {
  const auto v = QuarticPotential::double_well(2, 3, 4, 5);
  CHECK(v.c4() == 2);
  CHECK(v.c3() == 0);
  CHECK(v.c2() == -3);
  CHECK(v.c1() == 4);
  CHECK(v.c0() == 5);
  CHECK(v(1.0) == doctest::Approx(2 - 3 + 4 + 5));
  CHECK(v.derivative(1.0) == doctest::Approx(8 - 6 + 4));
  CHECK(v.second_derivative(1.0) == doctest::Approx(24 - 6));
}

TEST_CASE("symmetric well: minima at +-sqrt5, barrier at 0") {
  const auto geo = critical_points(QuarticPotential::double_well(1, 10, 0));
  REQUIRE(geo.minima.size() == 2);
  REQUIRE(geo.barrier);
  CHECK(geo.minima[0].x == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
  CHECK(geo.minima[1].x == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(geo.minima[0].value == doctest::Approx(-25).epsilon(1e-14));
  CHECK(std::abs(geo.barrier->x) < 1e-14);
  CHECK(geo.deeper_well_side == WellSide::Symmetric);
}

TEST_CASE("positive gamma deepens the left well and moves the barrier right") {
  const auto pot = QuarticPotential::double_well(1, 10, 3);
  const auto geo = critical_points(pot);
  REQUIRE(geo.is_double_well());
  CHECK(geo.deeper_well_side == WellSide::Left);
  CHECK(geo.barrier->x > 0);
  const auto ref = oracle::scan_roots([&](double x) { return pot.derivative(x); }, -10, 10);
  REQUIRE(ref.size() == 3);
  CHECK(geo.minima[0].x == doctest::Approx(ref[0]).epsilon(1e-12));
  CHECK(geo.barrier->x == doctest::Approx(ref[1]).epsilon(1e-12));
  CHECK(geo.minima[1].x == doctest::Approx(ref[2]).epsilon(1e-12));
  CHECK(geo.minima[0].x < geo.barrier->x);
  CHECK(geo.barrier->x < geo.minima[1].x);
}

TEST_CASE("large gamma leaves a single well") {
  const auto pot = QuarticPotential::double_well(1, 1, 10);
  const auto geo = critical_points(pot);
  CHECK(geo.minima.size() == 1);
  CHECK_FALSE(geo.barrier);
  const auto ref = oracle::scan_roots([&](double x) { return pot.derivative(x); }, -10, 10);
  CHECK(ref.size() == 1);
}

TEST_CASE("critical points satisfy V' = 0 to 1e-10 on random potentials") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 100; ++t) {
    const QuarticPotential pot(std::abs(u(rng)) + 0.1, u(rng), u(rng), u(rng), u(rng));
    const auto geo = critical_points(pot);
    const double scale = std::max({1.0, 4 * pot.c4(), 3 * std::abs(pot.c3()), 2 * std::abs(pot.c2()),
                                   std::abs(pot.c1())});
    for (const auto& m : geo.minima) {
      CHECK(std::abs(pot.derivative(m.x)) <= 1e-10 * scale * std::max(1.0, std::pow(std::abs(m.x), 3)));
      CHECK(pot.second_derivative(m.x) >= 0);
    }
    if (geo.barrier) CHECK(pot.second_derivative(geo.barrier->x) <= 0);
  }
}

TEST_CASE("turning points at a minimum's energy are a double root") {
  const auto pot = QuarticPotential::double_well(1, 10, 0);
  const auto r = turning_points(pot, -25.0);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-7));
  CHECK(r[1] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-7));
  CHECK(r[2] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
  CHECK(r[3] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
}

TEST_CASE("turning points above the barrier: two roots") {
  const auto pot = QuarticPotential::double_well(1, 10, 0);
  const auto r = turning_points(pot, 10.0);
  const auto ref = oracle::scan_roots([&](double x) { return pot(x) - 10.0; }, -10, 10);
  REQUIRE(r.size() == 2);
  REQUIRE(ref.size() == 2);
  CHECK(r[0] == doctest::Approx(ref[0]).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(ref[1]).epsilon(1e-12));
  CHECK(turning_points(pot, -30.0).empty());
}

TEST_CASE("turning points of the cubic benchmark potential") {
  const QuarticPotential v2(0.01, -0.0075, -0.0025, 0, 0);
  const auto r = turning_points(v2, 0.2205);
  const auto ref = oracle::scan_roots([&](double x) { return v2(x) - 0.2205; }, -20, 20);
  REQUIRE(r.size() == ref.size());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("turning points agree with a sign scan on random potentials") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 100; ++t) {
    const QuarticPotential pot(std::abs(u(rng)) + 0.2, u(rng), u(rng) * 3, u(rng) * 3, 0);
    const double e = global_minimum(pot).value + std::abs(u(rng)) * 4 + 0.01;
    const auto r = turning_points(pot, e);
    const auto ref = oracle::scan_roots([&](double x) { return pot(x) - e; }, -30, 30, 60000);
    REQUIRE(r.size() == ref.size());
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  }
}

TEST_CASE("mirror is an involution and negates critical points") {
  const auto pot = QuarticPotential(1.5, 0.3, -7, 2, 1);
  CHECK(mirror(mirror(pot)) == pot);
  const auto m = mirror(QuarticPotential::double_well(1, 10, 3));
  CHECK(m == QuarticPotential::double_well(1, 10, -3));
  const auto g = critical_points(pot);
  const auto gm = critical_points(mirror(pot));
  REQUIRE(g.minima.size() == gm.minima.size());
  for (std::size_t i = 0; i < g.minima.size(); ++i) {
    CHECK(gm.minima[g.minima.size() - 1 - i].x == doctest::Approx(-g.minima[i].x).epsilon(1e-12));
  }
}

TEST_CASE("zero_minimum puts the global minimum at zero") {
  const auto pot = zero_minimum(QuarticPotential::double_well(1, 20, 3));
  CHECK(std::abs(global_minimum(pot).value) < 1e-12);
}

TEST_CASE("cubic roots") {
  const auto r = cubic_real_roots(1, -6, 11, -6);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(1));
  CHECK(r[1] == doctest::Approx(2));
  CHECK(r[2] == doctest::Approx(3));
  CHECK(cubic_real_roots(1, 0, 1, 0).size() == 1);
  CHECK_THROWS_AS(cubic_real_roots(0, 1, 1, 1), InvalidArgument);
}
