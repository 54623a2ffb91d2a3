#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "thresh/helium/cutoffs.hpp"
#include "thresh/helium/finite_difference.hpp"
#include "thresh/helium/geometry.hpp"
#include "thresh/helium/params.hpp"

namespace thresh::helium {

/// phi = N M(r12) exp(-x0/2 - C x_inf).
template <typename Scalar>
Scalar comparison_function(const HeliumPoint<Scalar>& p, const HeliumParams& P) {
  using std::exp;
  return Scalar(P.N_low) * m_profile(p.r12, P.m) *
         exp(-p.x0() / Scalar(2) - Scalar(P.C_low) * p.x_inf());
}

/// W1 = -1/r1 - 1/r2 + (U + eps)/r12 + 1/4: the helium potential shifted to
/// its threshold, with extra repulsion eps/r12.
template <typename Scalar>
Scalar w1_potential(const HeliumPoint<Scalar>& p, const HeliumParams& P) {
  return helium_potential(p, Scalar(P.U)) - Scalar(kThreshold) + Scalar(P.eps_low) / p.r12;
}

namespace detail {

// Electron positions ordered as (nearer, farther); ties put electron 2 nearer.
template <typename Scalar>
struct Ordered {
  Eigen::Matrix<Scalar, 3, 1> near, far;
  Scalar r_near, r_far, rho;
};

template <typename Scalar>
Ordered<Scalar> order(const Vector6<Scalar>& x) {
  const Eigen::Matrix<Scalar, 3, 1> x1 = x.template head<3>(), x2 = x.template tail<3>();
  const Scalar r1 = x1.norm(), r2 = x2.norm();
  const Scalar rho = (x1 - x2).norm();
  if (r1 >= r2) return {x2, x1, r2, r1, rho};
  return {x1, x2, r1, r2, rho};
}

template <typename Scalar>
Scalar blend(Scalar s) {
  const Scalar s3 = s * s * s;
  return s - s3 + Scalar(0.5) * s3 * s;
}

// t(rho + d) - t(rho), factored inside a single branch to avoid cancellation.
template <typename Scalar>
Scalar t_difference(Scalar rho, Scalar d, int m) {
  const Scalar mm(m), lo = mm, hi = Scalar(3) * mm;
  const Scalar rho2 = rho + d;
  if (rho <= lo && rho2 <= lo) return d;
  if (rho >= hi && rho2 >= hi) return Scalar(0);
  if (rho > lo && rho < hi && rho2 > lo && rho2 < hi) {
    const Scalar a = (rho - mm) / (Scalar(2) * mm), b = (rho2 - mm) / (Scalar(2) * mm);
    const Scalar ds = d / (Scalar(2) * mm);
    const Scalar cube = a * a + a * b + b * b;
    const Scalar quart = (a + b) * (a * a + b * b);
    return Scalar(2) * mm * ds * (Scalar(1) - cube + Scalar(0.5) * quart);
  }
  return t_profile(rho2, m) - t_profile(rho, m);
}

}  // namespace detail

/// log(phi(y) / phi(x)) assembled from norm differences, so that it stays
/// accurate to a few ulps of the difference itself when y is close to x.
template <typename Scalar>
Scalar comparison_log_ratio(const Vector6<Scalar>& x, const Vector6<Scalar>& y,
                            const HeliumParams& P) {
  using std::log1p;
  const auto x1 = x.template head<3>(), x2 = x.template tail<3>();
  const auto y1 = y.template head<3>(), y2 = y.template tail<3>();
  const Scalar r1x = x1.norm(), r2x = x2.norm(), r1y = y1.norm(), r2y = y2.norm();
  const Scalar d1 = norm_difference(y1, x1), d2 = norm_difference(y2, x2);
  const Scalar drho = norm_difference(y1 - y2, x1 - x2);

  Scalar d_near, d_far;
  if ((r1x >= r2x) == (r1y >= r2y)) {
    d_near = r1x >= r2x ? d2 : d1;
    d_far = r1x >= r2x ? d1 : d2;
  } else {
    d_near = std::min(r1y, r2y) - std::min(r1x, r2x);
    d_far = std::max(r1y, r2y) - std::max(r1x, r2x);
  }
  const Scalar rho = (x1 - x2).norm();
  const Scalar tx = t_profile(rho, P.m);
  const Scalar dt = detail::t_difference(rho, drho, P.m);
  return Scalar(P.m) * log1p(dt / (tx + Scalar(P.m))) - d_near / Scalar(2) -
         Scalar(P.C_low) * d_far;
}

/// Closed-form -Delta phi / phi at a point of R^6 off the nonsmooth sets.
///
/// With M = (t + m)^m and g = -x0/2 - C x_inf:
///   -1/4 + 1/x0 - C^2 + 2C/x_inf - 2m(m-1)(t'/(t+m))^2
///   - 2m/(t+m) (t'' + 2t'/rho) + 2m t'/(t+m) Q,
///   Q = <x0, x0 - x_inf>/(2 |x0| rho) + C <x_inf, x_inf - x0>/(|x_inf| rho),
/// where x0, x_inf are the positions of the nearer and the farther electron.
template <typename Scalar>
Scalar minus_laplacian_ratio(const Vector6<Scalar>& x, const HeliumParams& P) {
  const auto o = detail::order(x);
  const int m = P.m;
  const Scalar C(P.C_low), mm(m);
  const Scalar t = t_profile(o.rho, m), t1 = t_profile_d1(o.rho, m), t2 = t_profile_d2(o.rho, m);
  const Scalar tm = t + mm;
  const Scalar Q = o.near.dot(o.near - o.far) / (Scalar(2) * o.r_near * o.rho) +
                   C * o.far.dot(o.far - o.near) / (o.r_far * o.rho);
  const Scalar ratio = t1 / tm;
  return Scalar(-0.25) + Scalar(1) / o.r_near - C * C + Scalar(2) * C / o.r_far -
         Scalar(2) * mm * (mm - Scalar(1)) * ratio * ratio -
         Scalar(2) * mm / tm * (t2 + Scalar(2) * t1 / o.rho) + Scalar(2) * mm * ratio * Q;
}

/// (-Delta + W1) phi / phi, analytic.
template <typename Scalar>
Scalar supersolution_bracket(const Vector6<Scalar>& x, const HeliumParams& P) {
  return minus_laplacian_ratio(x, P) + w1_potential(from_cartesian(x), P);
}

/// (-Delta + W1) phi / phi with the Laplacian by second-order differences of step h.
template <typename Scalar>
Scalar supersolution_bracket_fd(const Vector6<Scalar>& x, const HeliumParams& P, Scalar h) {
  auto lr = [&P](const Vector6<Scalar>& a, const Vector6<Scalar>& b) {
    return comparison_log_ratio(a, b, P);
  };
  return -laplacian_ratio_fd(lr, x, h) + w1_potential(from_cartesian(x), P);
}

/// Constants of the three-region closing estimate (rho = |x1 - x2|):
///   far:    rho > 3m   -C^2 + (2C-1)/R + (U+eps)/(3m)
///   near:   rho < m    -C^2 + (2C-1)/R + (U-2)/rho - (m-2)/(2m) + 2C + 1
///   middle: otherwise  -C^2 + (2C-1)/R + (U+eps)/m + C + 1/2 + pi/(4m)
struct ClosingBounds {
  double far;
  double near_sup;  ///< sup of the near bound over 0 < rho < m
  double middle;
};

inline double closing_bound_near(const HeliumParams& P, double rho) {
  const double C = P.C_low, m = P.m;
  return -C * C + (2.0 * C - 1.0) / P.R + (P.U - 2.0) / rho - (m - 2.0) / (2.0 * m) + 2.0 * C + 1.0;
}

inline ClosingBounds closing_bounds(const HeliumParams& P) {
  const double C = P.C_low, m = P.m;
  const double base = -C * C + (2.0 * C - 1.0) / P.R;
  ClosingBounds b;
  b.far = base + (P.U + P.eps_low) / (3.0 * m);
  // (U - 2)/rho is increasing in rho when U <= 2, so the sup sits at rho -> m;
  // for U > 2 it is unbounded as rho -> 0.
  b.near_sup = P.U <= 2.0 ? closing_bound_near(P, m) : std::numeric_limits<double>::infinity();
  b.middle = base + (P.U + P.eps_low) / m + C + 0.5 + std::numbers::pi / (4.0 * m);
  return b;
}

}  // namespace thresh::helium
