#pragma once

#include <cmath>

#include "thresh/helium/geometry.hpp"

namespace thresh::helium {

/// Centered 6D gradient. Each step is the representable x_k +- h actually taken.
template <typename Scalar, typename F>
Vector6<Scalar> gradient_fd(const F& f, const Vector6<Scalar>& x, Scalar h) {
  Vector6<Scalar> g;
  for (int k = 0; k < 6; ++k) {
    Vector6<Scalar> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (xp[k] - xm[k]);
  }
  return g;
}

/// Plain second-order 6D Laplacian.
template <typename Scalar, typename F>
Scalar laplacian_fd(const F& f, const Vector6<Scalar>& x, Scalar h) {
  const Scalar f0 = f(x);
  Scalar acc(0);
  for (int k = 0; k < 6; ++k) {
    Vector6<Scalar> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Scalar hp = xp[k] - x[k], hm = x[k] - xm[k];
    acc += Scalar(2) * ((f(xp) - f0) / hp - (f0 - f(xm)) / hm) / (hp + hm);
  }
  return acc;
}

/// Delta f / f at x from log_ratio(x, y) = log(f(y) / f(x)).
///
/// Working with the ratio keeps the stencil values near 1 and avoids the
/// cancellation of f(x + h) - 2 f(x) + f(x - h) when f carries a large
/// exponential factor.
template <typename Scalar, typename LogRatio>
Scalar laplacian_ratio_fd(const LogRatio& log_ratio, const Vector6<Scalar>& x, Scalar h) {
  using std::expm1;
  Scalar acc(0);
  for (int k = 0; k < 6; ++k) {
    Vector6<Scalar> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Scalar hp = xp[k] - x[k], hm = x[k] - xm[k];
    const Scalar fp = expm1(log_ratio(x, xp)), fm = expm1(log_ratio(x, xm));
    acc += Scalar(2) * (fp / hp + fm / hm) / (hp + hm);
  }
  return acc;
}

/// |a| - |b| without cancellation: <a - b, a + b> / (|a| + |b|).
template <typename Derived1, typename Derived2>
auto norm_difference(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  return (a - b).dot(a + b) / (a.norm() + b.norm());
}

}  // namespace thresh::helium
