#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thresh/errors.hpp"
#include "thresh/potential.hpp"
#include "thresh/weights.hpp"

using namespace thresh;

namespace {

const RadialPotential kCoulomb(1.0, 1.0, CoulombTail{0.25});

double fd1(const WeightFunction& F, double r) {
  const double h = 1e-4 * r;
  return (F(r + h) - F(r - h)) / (2.0 * h);
}

double fd2(const WeightFunction& F, double r) {
  const double h = 1e-3 * r;
  return (F(r + h) - 2.0 * F(r) + F(r - h)) / (h * h);
}

}  // namespace

TEST_CASE("upper weight: exact sqrt family") {
  const WeightFunction F = build_upper_weight(RadialPotential(1.0, 1.0, CoulombTail{0.25}), 0.0, 0.0);
  for (double r : {0.01, 1.0, 9.0, 1e4}) {
    CHECK(F(r) == doctest::Approx(std::sqrt(r)).epsilon(1e-10));
    CHECK(F.d1(r) == doctest::Approx(0.5 / std::sqrt(r)).epsilon(1e-14));
  }
}

TEST_CASE("upper weight: closed-form antiderivative") {
  const RadialPotential p(1.0, 1.0, CoulombTail{0.16});
  const WeightFunction F = build_upper_weight(p, 0.19, 1.0);
  CHECK(F(100.0) == doctest::Approx(6.48).epsilon(1e-10));
  CHECK(F(1.0) == 0.0);
  CHECK(F(0.5) == 0.0);
  for (double r : {2.0, 50.0, 3e3})
    CHECK(F(r) == doctest::Approx(2.0 * std::sqrt(0.81 * 0.16) * (std::sqrt(r) - 1.0)).epsilon(1e-10));
}

TEST_CASE("upper weight: zero tail gives the zero weight") {
  const WeightFunction F = build_upper_weight(RadialPotential(1.0, 1.0, NoTail{}), 0.3, 1.0);
  for (double r : {1.0, 10.0, 1e5}) {
    CHECK(F(r) == 0.0);
    CHECK(F.d1(r) == 0.0);
  }
}

TEST_CASE("property: built weights keep the strict gap U - F'^2 = eps U") {
  const RadialPotential tails[] = {RadialPotential(1.0, 1.0, CoulombTail{0.25}),
                                   RadialPotential(1.0, 2.0, CoulombTail{0.7}),
                                   RadialPotential(1.0, 1.0, PowerTail{0.75, -2.0}),
                                   RadialPotential(1.0, 1.0, PowerTail{1.5, -0.3})};
  for (const auto& p : tails)
    for (double eps : {0.01, 0.1, 0.5, 0.9}) {
      const WeightFunction F = build_upper_weight(p, eps, p.well_radius());
      for (int i = 0; i <= 60; ++i) {
        const double r = p.well_radius() * std::pow(1e5, i / 60.0) * (1.0 + 1e-9);
        const double U = eval_repulsive(p, r);
        const double g = F.d1(r);
        CHECK((U - g * g) / U == doctest::Approx(eps).epsilon(1e-12));
      }
      CHECK(check_upper_condition(F, p, p.well_radius(), 1e5, 500).pass);
    }
}

TEST_CASE("property: analytic derivatives agree with centered differences") {
  const RadialPotential p(1.0, 1.0, PowerTail{0.75, -2.0});
  const WeightFunction Fs[] = {build_upper_weight(kCoulomb, 0.1, 1.0), build_upper_weight(p, 0.3, 1.0),
                               power_law_weight(1.3, 0.5), power_law_weight(0.7, 1.5),
                               regularized_weight(power_law_weight(1.0, 0.5), 0.2)};
  for (const auto& F : Fs)
    for (double r : {1.5, 4.0, 33.0, 700.0}) {
      CHECK(F.d1(r) == doctest::Approx(fd1(F, r)).epsilon(1e-6));
      CHECK(F.d2(r) == doctest::Approx(fd2(F, r)).epsilon(1e-5));
    }
  // Finite-difference weights for arbitrary profiles.
  const WeightFunction G = weight_from_values([](double r) { return std::log1p(r * r); }, 0.0);
  for (double r : {0.5, 2.0, 10.0}) {
    CHECK(G.d1(r) == doctest::Approx(2.0 * r / (1.0 + r * r)).epsilon(1e-6));
    CHECK(G.d2(r) == doctest::Approx(2.0 * (1.0 - r * r) / ((1.0 + r * r) * (1.0 + r * r))).epsilon(1e-5));
  }
}

TEST_CASE("upper condition examples") {
  const auto eq = check_upper_condition(power_law_weight(1.0, 0.5), kCoulomb, 1.0, 1e4, 200);
  CHECK_FALSE(eq.pass);
  CHECK(std::abs(eq.worst_margin) <= 1e-14);

  const auto ok = check_upper_condition(power_law_weight(0.9, 0.5), kCoulomb, 1.0, 1e4, 200);
  CHECK(ok.pass);
  CHECK(ok.worst_margin == doctest::Approx((0.25 - 0.2025) / 0.25).epsilon(1e-12));

  CHECK_FALSE(check_upper_condition(power_law_weight(1.1, 0.5), kCoulomb, 1.0, 1e4, 200).pass);
}

TEST_CASE("lower condition: sqrt weight onset") {
  const double K = std::sqrt(1.01);
  const double onset = sqrt_weight_lower_onset(K, 0.25);
  CHECK(onset == doctest::Approx(9.0903e4).epsilon(1e-4));
  CHECK(onset == doctest::Approx(std::pow(3.0 * K / (K * K - 1.0), 2)).epsilon(1e-14));

  const auto rep = check_lower_condition(power_law_weight(K, 0.5), kCoulomb, 1.0, 1e7, 4000);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.onset_radius.has_value());
  // Geometric grid spacing is about 0.4%.
  CHECK(*rep.onset_radius >= onset);
  CHECK(*rep.onset_radius <= onset * 1.005);
  CHECK(rep.params_echo.at("worst_margin_beyond_onset") >= 0.0);

  const auto beyond = check_lower_condition(power_law_weight(K, 0.5), kCoulomb, onset * 1.0001, 1e8, 2000);
  CHECK(beyond.pass);
}

TEST_CASE("lower condition: K^2 < 4C fails at large r") {
  const auto rep = check_lower_condition(power_law_weight(0.99, 0.5), kCoulomb, 1.0, 1e9, 1000);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.onset_radius.has_value());
}

TEST_CASE("lower condition: linear weight without tail") {
  const RadialPotential p(1.0, 1.0, NoTail{});
  const auto rep = check_lower_condition(power_law_weight(1.0, 1.0), p, 2.0 + 1e-9, 1e3, 300);
  CHECK(rep.pass);
  CHECK(rep.worst_margin == doctest::Approx(0.0).epsilon(1e-8));
  const WeightFunction F = power_law_weight(1.0, 1.0);
  for (double r : {3.0, 10.0, 400.0})
    CHECK(F.d1(r) * F.d1(r) - radial_laplacian(F, r) == doctest::Approx(1.0 - 2.0 / r).epsilon(1e-14));
  CHECK_THROWS_AS(check_lower_condition(F, kCoulomb, 0.5, 10.0, 10), DomainError);
}

TEST_CASE("admissibility proxy") {
  CHECK(check_lower_admissibility(power_law_weight(1.0, 0.5), 1e4, 5.0).pass);
  CHECK_FALSE(check_lower_admissibility(weight_from_values([](double r) { return std::log(r); }, 1.0), 1e4, 5.0).pass);
}

TEST_CASE("regularized weight") {
  const WeightFunction F = power_law_weight(1.0, 0.5);
  CHECK(regularized_weight(F, 1.0)(4.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(regularized_weight(F, 0.0), DomainError);
  for (double r : {0.5, 4.0, 100.0, 1e6}) {
    double prev = -1.0;
    for (double eps : {1.0, 0.3, 0.1, 1e-2, 1e-4, 1e-8}) {
      const WeightFunction G = regularized_weight(F, eps);
      CHECK(G(r) <= std::min(F(r), 1.0 / eps));
      CHECK(G(r) > prev);
      prev = G(r);
      const double q = G.d1(r) / F.d1(r);
      CHECK(q > 0.0);
      CHECK(q <= 1.0);
    }
    CHECK(prev == doctest::Approx(F(r)).epsilon(1e-5));
  }
}

TEST_CASE("radial laplacian") {
  CHECK(radial_laplacian(power_law_weight(1.0, 0.5), 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(radial_laplacian(power_law_weight(1.0, 2.0), 5.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(radial_laplacian(power_law_weight(0.0, 1.0), 3.0) == 0.0);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  const WeightFunction Fs[] = {power_law_weight(1.0, 0.5), power_law_weight(0.3, 1.7),
                               build_upper_weight(kCoulomb, 0.2, 1.0)};
  for (const auto& F : Fs)
    for (int k = 0; k < 25; ++k) {
      Eigen::Vector3d x(coord(rng), coord(rng), coord(rng));
      if (x.norm() < 2.0) continue;
      const double ref = oracle::cartesian_laplacian<3>(F.value, x, 1e-3 * x.norm());
      CHECK(radial_laplacian(F, x.norm(), 3) == doctest::Approx(ref).epsilon(1e-5));
    }
  // Dimension enters through (dim - 1) F'/r.
  Eigen::Matrix<double, 5, 1> y;
  y << 1.0, -2.0, 0.5, 3.0, 1.5;
  const WeightFunction F = power_law_weight(1.0, 0.5);
  CHECK(radial_laplacian(F, y.norm(), 5) ==
        doctest::Approx(oracle::cartesian_laplacian<5>(F.value, y, 1e-3)).epsilon(1e-5));
}
