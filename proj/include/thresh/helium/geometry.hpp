#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "thresh/errors.hpp"

namespace thresh::helium {

template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;

/// Two-electron configuration modulo rotations.
template <typename Scalar>
struct HeliumPoint {
  Scalar r1;
  Scalar r2;
  Scalar cos_theta;
  Scalar r12;

  Scalar x_inf() const { return std::max(r1, r2); }
  Scalar x0() const { return std::min(r1, r2); }
};

/// r12 from the law of cosines in the cancellation-free form
/// (r1 - r2)^2 + 2 r1 r2 (1 - cos theta).
template <typename Scalar>
HeliumPoint<Scalar> make_point(Scalar r1, Scalar r2, Scalar cos_theta) {
  using std::sqrt;
  if (!(r1 > Scalar(0)) || !(r2 > Scalar(0))) throw DomainError("helium point needs r1, r2 > 0");
  if (!(cos_theta >= Scalar(-1) && cos_theta <= Scalar(1)))
    throw DomainError("helium point needs cos_theta in [-1, 1]");
  const Scalar d = r1 - r2;
  const Scalar r12 = sqrt(d * d + Scalar(2) * r1 * r2 * (Scalar(1) - cos_theta));
  return {r1, r2, cos_theta, r12};
}

/// Canonical embedding x1 = (r1, 0, 0), x2 = r2 (cos theta, sin theta, 0).
template <typename Scalar>
Vector6<Scalar> embed(const HeliumPoint<Scalar>& p) {
  using std::sqrt;
  const Scalar s = sqrt(std::max(Scalar(0), Scalar(1) - p.cos_theta * p.cos_theta));
  Vector6<Scalar> x;
  x << p.r1, Scalar(0), Scalar(0), p.r2 * p.cos_theta, p.r2 * s, Scalar(0);
  return x;
}

/// Reduced coordinates of a point in R^6; r12 is taken from x1 - x2 directly.
template <typename Scalar>
HeliumPoint<Scalar> from_cartesian(const Vector6<Scalar>& x) {
  const auto x1 = x.template head<3>();
  const auto x2 = x.template tail<3>();
  const Scalar r1 = x1.norm(), r2 = x2.norm();
  if (!(r1 > Scalar(0)) || !(r2 > Scalar(0))) throw DomainError("electron at the nucleus");
  const Scalar c = std::clamp(Scalar(x1.dot(x2) / (r1 * r2)), Scalar(-1), Scalar(1));
  return {r1, r2, c, (x1 - x2).norm()};
}

/// Same point with the electrons exchanged.
template <typename Scalar>
HeliumPoint<Scalar> swapped(const HeliumPoint<Scalar>& p) {
  return {p.r2, p.r1, p.cos_theta, p.r12};
}

/// -1/r1 - 1/r2 + U/r12 (infinitely heavy nucleus).
template <typename Scalar>
Scalar helium_potential(const HeliumPoint<Scalar>& p, Scalar U) {
  if (!(p.r12 > Scalar(0))) throw DomainError("coincident electrons: r12 = 0");
  return -Scalar(1) / p.r1 - Scalar(1) / p.r2 + U / p.r12;
}

}  // namespace thresh::helium
