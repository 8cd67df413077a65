#include <doctest.h>

#include <cmath>

#include "lagns/errors.hpp"
#include "lagns/gas.hpp"

using namespace lagns;

TEST_SUITE("gas") {
  TEST_CASE("pressure of the ideal polytropic gas") {
    const GasParams p(2.0, 1.5, 1.0, 1.0, 1.0);
    CHECK(gas::pressure(p, 0.5, 3.0) == doctest::Approx(12.0));
    CHECK(gas::pressure(GasParams::normalized(1.0), 1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(gas::pressure(p, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gas::pressure(p, 1.0, -1.0), DomainError);
  }

  TEST_CASE("conductivity is kappa theta^beta") {
    const GasParams p(1.0, 1.0, 1.0, 3.0, 2.5);
    CHECK(gas::conductivity(p, 4.0) == doctest::Approx(3.0 * 32.0));
    CHECK(gas::conductivity(p, 1.0) == 3.0);
    // degenerates as theta -> 0
    CHECK(gas::conductivity(p, 1e-6) < 1e-14);
    CHECK_THROWS_AS(gas::conductivity(p, 0.0), DomainError);
  }

  TEST_CASE("entropy potential is nonnegative and vanishes only at one") {
    CHECK(gas::entropy_potential(1.0) == 0.0);
    for (double y : {1e-8, 0.1, 0.5, 0.999, 1.001, 2.0, 50.0}) {
      CHECK(gas::entropy_potential(y) > 0.0);
      CHECK(gas::entropy_potential(y) == doctest::Approx(y - std::log(y) - 1.0));
    }
    CHECK(gas::entropy_potential(2.0) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK_THROWS_AS(gas::entropy_potential(0.0), DomainError);
  }

  TEST_CASE("parameter validation") {
    CHECK_NOTHROW(GasParams(1.0, 1.0, 1.0, 1.0, 0.0));
    CHECK_THROWS_AS(GasParams(1.0, 1.0, 1.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(GasParams(0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GasParams(1.0, -1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GasParams(1.0, 1.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(GasParams(1.0, 1.0, 1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(GasParams(1.0, 1.0, 1.0, 1.0, 1.0, 0.5), DomainError);
    CHECK(GasParams(2.0, 4.0, 1.0, 1.0, 1.0).adiabatic_index() == 1.5);
    CHECK(GasParams::normalized(2.5).beta() == 2.5);
  }

  TEST_CASE("jensen roots") {
    SUBCASE("e0 = 1 - ln 2 has the upper root 2") {
      const auto [a1, a2] = gas::jensen_roots(1.0 - std::log(2.0));
      CHECK(std::fabs(a2 - 2.0) < 1e-10);
      CHECK(a1 < 1.0);
      CHECK(std::fabs(gas::entropy_potential(a1) - (1.0 - std::log(2.0))) < 1e-12);
    }
    SUBCASE("zero energy collapses both roots") {
      const auto [a1, a2] = gas::jensen_roots(0.0);
      CHECK(a1 == 1.0);
      CHECK(a2 == 1.0);
    }
    SUBCASE("roots satisfy the equation over a wide range") {
      for (double e0 : {1e-12, 1e-6, 0.01, 0.3, 1.0, 10.0, 100.0}) {
        const auto [a1, a2] = gas::jensen_roots(e0);
        CHECK(a1 < 1.0);
        CHECK(a2 > 1.0);
        CHECK(gas::entropy_potential(a2) == doctest::Approx(e0).epsilon(1e-9));
        if (e0 < 50.0) CHECK(gas::entropy_potential(a1) == doctest::Approx(e0).epsilon(1e-9));
      }
    }
    SUBCASE("roots widen with energy") {
      const auto [l1, h1] = gas::jensen_roots(0.1);
      const auto [l2, h2] = gas::jensen_roots(0.2);
      CHECK(l2 < l1);
      CHECK(h2 > h1);
    }
    CHECK_THROWS_AS(gas::jensen_roots(-1e-3), DomainError);
  }
}
