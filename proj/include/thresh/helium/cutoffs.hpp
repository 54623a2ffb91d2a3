#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "thresh/errors.hpp"
#include "thresh/helium/geometry.hpp"
#include "thresh/helium/params.hpp"

namespace thresh::helium {

/// Cosine smooth step: 1 for r <= 1 - w, 0 for r >= 1,
/// (1 + cos(pi (r - (1 - w)) / w)) / 2 in between. C^1, sup |phi'| = pi / (2 w).
template <typename Scalar>
Scalar smooth_step(Scalar w, Scalar r) {
  using std::cos;
  const Scalar a = Scalar(1) - w;
  if (r <= a) return Scalar(1);
  if (r >= Scalar(1)) return Scalar(0);
  return Scalar(0.5) * (Scalar(1) + cos(std::numbers::pi_v<Scalar> * (r - a) / w));
}

template <typename Scalar>
Scalar smooth_step_derivative(Scalar w, Scalar r) {
  using std::sin;
  const Scalar a = Scalar(1) - w;
  if (r <= a || r >= Scalar(1)) return Scalar(0);
  const Scalar k = std::numbers::pi_v<Scalar> / w;
  return -Scalar(0.5) * k * sin(k * (r - a));
}

/// 1 - phi(x_inf / R): zero near the nucleus, one for x_inf >= R.
template <typename Scalar>
Scalar chi_cutoff(Scalar R, Scalar w, const HeliumPoint<Scalar>& p) {
  if (!(R > Scalar(0))) throw DomainError("chi_cutoff requires R > 0");
  return Scalar(1) - smooth_step(w, p.x_inf() / R);
}

/// phi(delta x_inf / x0) on x0 >= delta x_inf, else 0. Continuous because phi(1) = 0.
template <typename Scalar>
Scalar gamma_A(const HeliumPoint<Scalar>& p, Scalar delta, Scalar w) {
  const Scalar x0 = p.x0(), xi = p.x_inf();
  if (x0 < delta * xi) return Scalar(0);
  return smooth_step(w, delta * xi / x0);
}

/// C sqrt(x)/(1 + eta sqrt(x)) + D gamma_A x/(1 + eta x), x = x_inf.
template <typename Scalar>
Scalar f_eta(const HeliumPoint<Scalar>& p, const HeliumParams& P) {
  using std::sqrt;
  const Scalar x = p.x_inf();
  const Scalar sx = sqrt(x);
  const Scalar eta(P.eta);
  const Scalar g = gamma_A(p, Scalar(P.delta), Scalar(P.pitchfork));
  return Scalar(P.C_w) * sx / (Scalar(1) + eta * sx) + Scalar(P.D_w) * g * x / (Scalar(1) + eta * x);
}

/// (sigma, sigma_perp) with sigma^2 + sigma_perp^2 = 1; sigma = 1 on x0 >= delta x_inf,
/// 0 on x0 <= delta x_inf / 2. Built from the half-width step of x0 / (delta x_inf).
template <typename Scalar>
std::pair<Scalar, Scalar> partition_sigma(const HeliumPoint<Scalar>& p, Scalar delta) {
  using std::sqrt;
  const Scalar q = p.x0() / (delta * p.x_inf());
  const Scalar b = smooth_step(Scalar(0.5), q);
  const Scalar a = Scalar(1) - b;
  const Scalar n = sqrt(a * a + b * b);
  return {a / n, b / n};
}

/// a^2 + b^2 before normalization; never below 1/2.
template <typename Scalar>
Scalar partition_denominator(const HeliumPoint<Scalar>& p, Scalar delta) {
  const Scalar b = smooth_step(Scalar(0.5), p.x0() / (delta * p.x_inf()));
  const Scalar a = Scalar(1) - b;
  return a * a + b * b;
}

/// L with (|grad sigma|^2 + |grad sigma_perp|^2) x_inf^2 <= L:
/// the step gradient (pi (1 + 1/delta))^2 times 1/n^4 <= 4.
inline double partition_constant(double delta) {
  const double g = std::numbers::pi * (1.0 + 1.0 / delta);
  return 4.0 * g * g;
}

inline double upper_weight_inner_coefficient(double pitchfork, double delta) {
  return 1.0 / (4.0 * std::sqrt(1.0 + std::numbers::pi / (pitchfork * delta)));
}

inline double upper_weight_outer_coefficient(double U, double delta, double K) {
  const double gap = U - 1.0 - delta;
  if (gap < 0.0) throw ParameterError("outer upper weight needs U >= 1 + delta");
  return K * std::sqrt(gap / (2.0 + 2.0 * delta));
}

/// Piecewise upper exponent: linear in x_inf on the closed region x0 >= delta x_inf,
/// sqrt(x_inf) outside. Discontinuous across the region boundary.
template <typename Scalar>
Scalar upper_weight_helium(const HeliumPoint<Scalar>& p, const HeliumParams& P) {
  using std::sqrt;
  const Scalar xi = p.x_inf();
  if (p.x0() >= Scalar(P.delta) * xi)
    return Scalar(upper_weight_inner_coefficient(P.pitchfork, P.delta)) * xi;
  return Scalar(upper_weight_outer_coefficient(P.U, P.delta, P.K)) * sqrt(xi);
}

/// Both branches blended by gamma_A; continuous.
template <typename Scalar>
Scalar upper_weight_helium_mollified(const HeliumPoint<Scalar>& p, const HeliumParams& P) {
  using std::sqrt;
  const Scalar xi = p.x_inf();
  const Scalar g = gamma_A(p, Scalar(P.delta), Scalar(P.pitchfork));
  const Scalar inner = Scalar(upper_weight_inner_coefficient(P.pitchfork, P.delta)) * xi;
  const Scalar outer = Scalar(upper_weight_outer_coefficient(P.U, P.delta, P.K)) * sqrt(xi);
  return g * inner + (Scalar(1) - g) * outer;
}

/// t(x) = x on [0, m], 2m on [3m, inf), and m + 2m g(s), s = (x - m)/(2m),
/// g(s) = s - s^3 + s^4/2 in between. C^2, 0 <= t' <= 1, |t''| <= 0.75/m.
template <typename Scalar>
Scalar t_profile(Scalar x, int m) {
  const Scalar mm(m);
  if (x <= mm) return x;
  if (x >= Scalar(3) * mm) return Scalar(2) * mm;
  const Scalar s = (x - mm) / (Scalar(2) * mm);
  const Scalar s3 = s * s * s;
  return mm + Scalar(2) * mm * (s - s3 + Scalar(0.5) * s3 * s);
}

template <typename Scalar>
Scalar t_profile_d1(Scalar x, int m) {
  const Scalar mm(m);
  if (x <= mm) return Scalar(1);
  if (x >= Scalar(3) * mm) return Scalar(0);
  const Scalar s = (x - mm) / (Scalar(2) * mm);
  return Scalar(1) - Scalar(3) * s * s + Scalar(2) * s * s * s;
}

template <typename Scalar>
Scalar t_profile_d2(Scalar x, int m) {
  const Scalar mm(m);
  if (x <= mm || x >= Scalar(3) * mm) return Scalar(0);
  const Scalar s = (x - mm) / (Scalar(2) * mm);
  return (Scalar(-6) * s + Scalar(6) * s * s) / (Scalar(2) * mm);
}

/// M(x) = (t(x) + m)^m: (x + m)^m up to m, (3m)^m from 3m on.
template <typename Scalar>
Scalar m_profile(Scalar x, int m) {
  using std::pow;
  if (m < 1) throw DomainError("m_profile requires m >= 1");
  return pow(t_profile(x, m) + Scalar(m), m);
}

struct TProfileCheck {
  double min_d1;
  double max_d1;
  double max_abs_d2;
  double d2_bound;  ///< pi / (4m)
  bool ok;
};

/// Scans t', t'' on n points of [0, 4m] against 0 <= t' <= 1 and |t''| <= pi/(4m).
inline TProfileCheck check_t_profile(int m, int n = 4001) {
  if (m < 1) throw DomainError("t_profile requires m >= 1");
  TProfileCheck c{1.0, 0.0, 0.0, std::numbers::pi / (4.0 * m), true};
  for (int i = 0; i < n; ++i) {
    const double x = 4.0 * m * i / (n - 1);
    const double d1 = t_profile_d1(x, m), d2 = t_profile_d2(x, m);
    c.min_d1 = std::min(c.min_d1, d1);
    c.max_d1 = std::max(c.max_d1, d1);
    c.max_abs_d2 = std::max(c.max_abs_d2, std::abs(d2));
  }
  c.ok = c.min_d1 >= 0.0 && c.max_d1 <= 1.0 && c.max_abs_d2 <= c.d2_bound;
  return c;
}

}  // namespace thresh::helium
