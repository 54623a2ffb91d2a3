#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thresh/bessel.hpp"
#include "thresh/errors.hpp"

using namespace thresh;

TEST_CASE("oracle reproduces itself under step refinement") {
  for (double z : {0.05, 1.0, 5.0, 30.0})
    CHECK(oracle::bessel_k1_integral(z) == doctest::Approx(oracle::bessel_k1_integral(z, 0.01)).epsilon(1e-13));
}

TEST_CASE("K1 against the integral oracle") {
  // Frozen after agreeing with the oracle.
  CHECK(bessel_k1(1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-12));
  CHECK(bessel_k1(5.0) == doctest::Approx(0.004044613445452165).epsilon(1e-12));
  CHECK(bessel_k1(10.0) == doctest::Approx(1.864877345382558e-05).epsilon(1e-12));
  CHECK(oracle::bessel_k1_integral(1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-12));
  CHECK(oracle::bessel_k1_integral(5.0) == doctest::Approx(0.004044613445452165).epsilon(1e-12));

  for (int i = 0; i <= 400; ++i) {
    const double z = 1e-3 * std::pow(7e5, i / 400.0);
    if (z > 600.0) break;
    const double ref = oracle::bessel_k1_integral(z);
    CHECK(std::abs(bessel_k1(z) / ref - 1.0) <= 1e-10);
  }
}

TEST_CASE("small argument: z K1(z) -> 1") {
  CHECK(1e-4 * bessel_k1(1e-4) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(1e-4 * oracle::bessel_k1_integral(1e-4, 0.01) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("K1 exceeds its leading asymptotic") {
  for (int i = 0; i <= 200; ++i) {
    const double z = 0.01 * std::pow(6e4, i / 200.0);
    CHECK(bessel_k1_scaled(z) > std::sqrt(std::numbers::pi / (2.0 * z)));
  }
}

TEST_CASE("scaled variants and K0") {
  for (double z : {0.3, 2.0, 2.5, 17.0, 300.0}) {
    CHECK(bessel_k1_scaled(z) == doctest::Approx(bessel_k1(z) * std::exp(z)).epsilon(1e-13));
    CHECK(bessel_k0_scaled(z) == doctest::Approx(bessel_k0(z) * std::exp(z)).epsilon(1e-13));
  }
  // K0' = -K1 on both sides of the series / continued-fraction switch.
  for (double z : {0.5, 1.9, 2.1, 8.0}) {
    const double h = 1e-5;
    CHECK((bessel_k0(z + h) - bessel_k0(z - h)) / (2 * h) == doctest::Approx(-bessel_k1(z)).epsilon(1e-8));
  }
}

TEST_CASE("domain and underflow") {
  CHECK_THROWS_AS(bessel_k1(0.0), DomainError);
  CHECK_THROWS_AS(bessel_k1(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
  CHECK_FALSE(bessel_k1_checked(700.0).underflow);
  CHECK(bessel_k1_checked(700.0).value > 0.0);
  const auto far = bessel_k1_checked(800.0);
  CHECK(far.underflow);
  CHECK(far.value < DBL_MIN);
}
