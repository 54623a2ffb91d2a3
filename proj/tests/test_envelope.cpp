#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thresh/envelope.hpp"
#include "thresh/errors.hpp"
#include "thresh/quadrature.hpp"
#include "thresh/radial_solver.hpp"
#include "thresh/weights.hpp"

using namespace thresh;

namespace {

constexpr double kC = 0.25;

const RadialPotential& coulomb() {
  static const RadialPotential p(0.0, 1.0, CoulombTail{kC});
  return p;
}

GridSolution exact_on(double r_max, int steps) {
  const Eigen::VectorXd g = make_radial_grid(1.0, r_max, steps);
  return GridSolution::from_psi(g.tail(g.size() - 1),
                                [](double r) { return exterior_exact(kC, r); });
}

// Critical C = 0.25 solution on the one-particle suite's default grid.
const GridSolution& critical() {
  static const GridSolution s = [] {
    CriticalSearchOptions opt;
    opt.r_max = 20000.0;
    opt.steps = 40000;
    const auto crit = find_critical_depth(coulomb(), 3.0, 4.0, 1e-11, opt);
    return assemble_critical_solution(coulomb(), crit, opt.r_max, opt.steps);
  }();
  return s;
}

}  // namespace

TEST_CASE("fit: synthetic sqrt decay") {
  const GridSolution s = GridSolution::from_psi(make_radial_grid(1.0, 2000.0, 4000),
                                                [](double r) { return std::exp(-std::sqrt(r)); });
  for (auto model : {FitModel::plain, FitModel::with_prefactor}) {
    const DecayFit f = fit_decay_exponent(s, 100.0, 900.0, model);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.converged);
  }
  CHECK(fit_decay_exponent(s, 100.0, 900.0).log_coefficient == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("fit: exponential decay is flagged as the wrong ansatz") {
  const GridSolution s = GridSolution::from_psi(make_radial_grid(1.0, 700.0, 4000),
                                                [](double r) { return std::exp(-r); });
  CHECK_FALSE(fit_decay_exponent(s, 100.0, 600.0, FitModel::plain).converged);
  CHECK_FALSE(fit_decay_exponent(s, 100.0, 600.0, FitModel::with_prefactor).converged);
  const DecayFit a = fit_decay_exponent(s, 100.0, 200.0, FitModel::plain);
  const DecayFit b = fit_decay_exponent(s, 300.0, 600.0, FitModel::plain);
  CHECK(b.slope > 1.2 * a.slope);
}

TEST_CASE("fit: critical solution follows the exterior asymptotics") {
  const DecayFit crit = fit_decay_exponent(critical(), 400.0, 900.0);
  CHECK(crit.slope >= 0.98 * 2.0 * std::sqrt(kC));
  CHECK(crit.slope <= 1.02 * 2.0 * std::sqrt(kC));
  // Oracle: the same fit on the exact exterior solution.
  const DecayFit ref = fit_decay_exponent(exact_on(2000.0, 20000), 400.0, 900.0);
  CHECK(crit.slope == doctest::Approx(ref.slope).epsilon(1e-4));
}

TEST_CASE("property: plain fit converges like log(a)/sqrt(a)") {
  const GridSolution s = exact_on(8000.0, 40000);
  double prev = INFINITY;
  for (double a : {100.0, 400.0, 1600.0}) {
    const double err = std::abs(fit_decay_exponent(s, a, 4.0 * a, FitModel::plain).slope - 1.0);
    CHECK(err < prev);
    CHECK(err <= std::log(a) / std::sqrt(a));
    prev = err;
  }
}

TEST_CASE("fit rejects bad windows") {
  GridSolution s = exact_on(100.0, 1000);
  CHECK_THROWS_AS(fit_decay_exponent(s, 50.0, 50.1), DomainError);
  s.psi[s.size() - 10] = -1.0;
  CHECK_THROWS_AS(fit_decay_exponent(s, 50.0, 100.0), DomainError);
}

TEST_CASE("sandwich on the exact exterior solution") {
  const GridSolution s = exact_on(1000.0, 8000);
  const WeightFunction F_low = power_law_weight(std::sqrt(1.01), 0.5);
  const WeightFunction F_up = build_upper_weight(coulomb(), 0.1, 1.0);
  const EnvelopeCheck e = verify_sandwich(s, F_low, F_up, 100.0, 900.0);
  CHECK(e.kind == EnvelopeKind::sandwich);
  CHECK(e.constants.at("N") > 0.0);
  CHECK(std::isfinite(e.constants.at("N")));
  CHECK(e.constants.at("c") > 0.0);
  CHECK(std::isfinite(e.constants.at("c")));
  CHECK(e.domain.lo == 100.0);
  CHECK(e.domain.hi == 900.0);
  // The upper side holds: psi e^{F_up} decreases.
  CHECK(e.result.params_echo.at("upper_violations") == 0.0);
}

TEST_CASE("sandwich with equal weights orders the constants") {
  const GridSolution s = exact_on(1000.0, 8000);
  const WeightFunction F = power_law_weight(1.0, 0.5);
  const EnvelopeCheck e = verify_sandwich(s, F, F, SandwichWindows{{50, 200}, {200, 900}, {50, 200}, {200, 900}});
  CHECK(e.constants.at("c") / e.constants.at("N") >= 1.0);
}

TEST_CASE("sandwich requires positive psi") {
  GridSolution s = exact_on(1000.0, 8000);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s.grid[i] > 300.0 && s.grid[i] < 301.0) s.psi[i] = 0.0;
  const WeightFunction F = power_law_weight(1.0, 0.5);
  CHECK_THROWS_AS(verify_sandwich(s, F, F, 100.0, 900.0), DomainError);
}

TEST_CASE("property: calibrated sandwich holds on the critical solution beyond the lower onset") {
  const double eps_lower = 0.2;
  const double K = std::sqrt(4.0 * kC + eps_lower);
  const double onset = sqrt_weight_lower_onset(K, kC);
  const EnvelopeCheck e = verify_sandwich(
      critical(), power_law_weight(K, 0.5), build_upper_weight(coulomb(), 0.1, 1.0),
      SandwichWindows{{onset, 1.5 * onset}, {1.5 * onset, 1e4}, {50.0, 100.0}, {100.0, 1000.0}});
  CHECK(e.result.pass);
  CHECK(e.result.params_echo.at("lower_violations") == 0.0);
  CHECK(e.result.params_echo.at("upper_violations") == 0.0);
}

TEST_CASE("weighted norm: zero weight") {
  const GridSolution& s = critical();
  const WeightFunction zero = power_law_weight(0.0, 1.0);
  const double w = weighted_norm(s, zero, coulomb(), 10.0, 1000.0);
  double ref = 0.0;
  for (Eigen::Index i = 1; i < s.size(); ++i) {
    const double a = s.grid[i - 1], b = s.grid[i];
    if (a < 10.0 || b > 1000.0) continue;
    const auto f = [&](Eigen::Index k) {
      return kC / s.grid[k] * s.psi[k] * s.psi[k] * 4.0 * std::numbers::pi * s.grid[k] * s.grid[k];
    };
    ref += 0.5 * (b - a) * (f(i - 1) + f(i));
  }
  CHECK(w == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::isfinite(w));
  CHECK(w > 0.0);
}

TEST_CASE("weighted norm: decade increments against the Bessel integrand") {
  const GridSolution& s = critical();
  const WeightFunction F = build_upper_weight(coulomb(), 0.5, 1.0);
  const std::vector<double> edges{10.0, 100.0, 1000.0};
  const auto inc = weighted_norm_increments(s, F, coulomb(), edges);
  REQUIRE(inc.size() == 2);
  CHECK(inc[1] / inc[0] < 0.5);

  // psi is a constant multiple of the exact exterior solution outside the well.
  Eigen::Index k = 0;
  while (s.grid[k] < 50.0) ++k;
  const double q = s.psi[k] / exterior_exact(kC, s.grid[k]);
  for (std::size_t j = 0; j < inc.size(); ++j) {
    const auto integrand = [&](double r) {
      const double psi = q * exterior_exact(kC, r);
      return std::exp(2.0 * F(r)) * 0.5 * kC / r * psi * psi * 4.0 * std::numbers::pi * r * r;
    };
    const double ref = integrate_adaptive(integrand, edges[j], edges[j + 1], 1e-12).value;
    CHECK(inc[j] == doctest::Approx(ref).epsilon(1e-5));
  }
}

TEST_CASE("property: weighted norm monotone in r_hi, increments decreasing") {
  const GridSolution& s = critical();
  const WeightFunction F = build_upper_weight(coulomb(), 0.5, 1.0);
  double prev = 0.0;
  for (double r_hi : {20.0, 50.0, 100.0, 1e3, 1e4}) {
    const double w = weighted_norm(s, F, coulomb(), 10.0, r_hi);
    CHECK(w >= prev);
    prev = w;
  }
  const auto inc = weighted_norm_increments(s, F, coulomb(), {10.0, 100.0, 1e3, 1e4});
  for (std::size_t i = 1; i < inc.size(); ++i) CHECK(inc[i] < inc[i - 1]);
}

TEST_CASE("weighted norm rejects an inadmissible weight") {
  const WeightFunction F = power_law_weight(std::sqrt(1.5), 0.5);  // F'^2 = 1.5 C / r
  CHECK_THROWS_AS(weighted_norm(critical(), F, coulomb(), 10.0, 100.0), DomainError);
}

TEST_CASE("point bound constant") {
  const GridSolution exact_env = GridSolution::from_psi(make_radial_grid(1.0, 500.0, 2000),
                                                        [](double r) { return std::exp(-std::sqrt(r)); });
  CHECK(point_bound_constant(exact_env, power_law_weight(1.0, 0.5), 10.0, 400.0) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // psi e^{2 sqrt(C r)} r^{3/4} tends to a constant.
  const GridSolution& s = critical();
  const WeightFunction F = power_law_weight(1.0, 0.5);
  const auto scaled = [&](double r) { return point_bound_constant(s, F, r, r * 1.001) * std::pow(r, 0.75); };
  CHECK(std::abs(scaled(4000.0) / scaled(8000.0) - 1.0) < std::abs(scaled(250.0) / scaled(500.0) - 1.0));
  CHECK(scaled(4000.0) / scaled(8000.0) == doctest::Approx(1.0).epsilon(5e-3));

  // With a strict margin the constant stops moving once r_hi is past the peak.
  const WeightFunction Fe = build_upper_weight(coulomb(), 0.1, 1.0);
  const double c1 = point_bound_constant(s, Fe, 1.0, 2000.0);
  const double c2 = point_bound_constant(s, Fe, 1.0, 4000.0);
  CHECK(std::abs(c2 / c1 - 1.0) < 0.01);
}

TEST_CASE("envelope kind names") {
  CHECK(to_string(EnvelopeKind::upper) == "upper");
  CHECK(to_string(EnvelopeKind::weighted_norm) == "weighted_norm");
  CHECK(to_string(EnvelopeKind::point_constant) == "point_constant");
}
