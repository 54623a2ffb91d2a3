#include <doctest.h>

#include <cmath>

#include "thresh/errors.hpp"
#include "thresh/potential.hpp"

using namespace thresh;

TEST_CASE("well is a closed ball") {
  const RadialPotential p(1.0, 1.0, CoulombTail{0.25});
  CHECK(eval_attractive(p, 0.5) == 1.0);
  CHECK(eval_attractive(p, 2.0) == 0.0);
  const RadialPotential q(3.5, 2.0, CoulombTail{0.25});
  CHECK(eval_attractive(q, 2.0) == 3.5);
  CHECK_THROWS_AS(eval_attractive(p, -1.0), DomainError);
}

TEST_CASE("repulsive tails") {
  const RadialPotential c(1.0, 1.0, CoulombTail{0.25});
  CHECK(eval_repulsive(c, 4.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(eval_repulsive(c, 1.0) == 0.25);
  CHECK_THROWS_AS(eval_repulsive(c, 0.0), DomainError);

  const RadialPotential pw(1.0, 1.0, PowerTail{0.75, -2.0});
  CHECK(eval_repulsive(pw, 2.0) == doctest::Approx(0.1875).epsilon(1e-15));

  const RadialPotential none(1.0, 1.0, NoTail{});
  CHECK(eval_repulsive(none, 3.0) == 0.0);
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(RadialPotential(1.0, 1.0, CoulombTail{1.5}), DomainError);
  CHECK_THROWS_AS(RadialPotential(1.0, 1.0, CoulombTail{0.0}), DomainError);
  CHECK_THROWS_AS(RadialPotential(1.0, 0.0, CoulombTail{0.25}), DomainError);
  CHECK_THROWS_AS(RadialPotential(-1.0, 1.0, CoulombTail{0.25}), DomainError);
  CHECK_THROWS_AS(RadialPotential(1.0, 1.0, PowerTail{-1.0, -2.0}), DomainError);
}

TEST_CASE("property: well nonnegative and zero outside; tails positive and decreasing") {
  const RadialPotential tails[] = {RadialPotential(2.0, 1.5, CoulombTail{0.3}),
                                   RadialPotential(2.0, 1.5, PowerTail{0.75, -2.0}),
                                   RadialPotential(2.0, 1.5, PowerTail{2.0, -0.5})};
  for (const auto& p : tails) {
    double prev = INFINITY;
    for (int i = 1; i <= 2000; ++i) {
      const double r = 0.01 * std::pow(1.01, i);
      const double v = eval_attractive(p, r);
      CHECK(v >= 0.0);
      if (r > p.well_radius()) CHECK(v == 0.0);
      const double u = eval_repulsive(p, r);
      CHECK(u > 0.0);
      CHECK(u < prev);
      prev = u;
    }
  }
}

TEST_CASE("tail derivative matches a centered difference") {
  const RadialPotential p(1.0, 1.0, PowerTail{0.75, -2.0});
  for (double r : {0.5, 2.0, 30.0}) {
    const double h = 1e-5 * r;
    const double fd = (eval_repulsive(p, r + h) - eval_repulsive(p, r - h)) / (2.0 * h);
    CHECK(eval_repulsive_derivative(p, r) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("origin limit of r U(r)") {
  CHECK(RadialPotential(1.0, 1.0, CoulombTail{0.25}).origin_limit() == 0.25);
  CHECK(RadialPotential(1.0, 1.0, PowerTail{0.5, -0.5}).origin_limit() == 0.0);
  CHECK_THROWS_AS(RadialPotential(1.0, 1.0, PowerTail{0.75, -2.0}).origin_limit(), DomainError);
  CHECK(RadialPotential(1.0, 1.0, CoulombTail{0.25}).with_depth(3.0).well_depth() == 3.0);
}
