#include "thresh/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "thresh/errors.hpp"

namespace thresh {

namespace {

constexpr double kSeriesLimit = 2.0;
constexpr int kMaxTerms = 200;
constexpr double kEps = 1e-17;

void require_positive(double z) {
  if (!(z > 0.0)) throw DomainError("modified Bessel K requires z > 0");
}

struct Pair {
  double k0, k1;
};

// Series about the origin. psi(n) = -gamma + H_{n-1}.
Pair series(double z) {
  const double y = 0.25 * z * z;
  const double log_half = std::log(0.5 * z);
  const double gamma = std::numbers::egamma;

  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double t0 = 1.0;  // y^k / (k!)^2
  double t1 = 1.0;  // y^k / (k! (k+1)!)
  double psi1 = -gamma;        // psi(k+1)
  double psi2 = 1.0 - gamma;   // psi(k+2)
  for (int k = 0; k < kMaxTerms; ++k) {
    i0 += t0;
    i1 += t1;
    s0 += psi1 * t0;
    s1 += (psi1 + psi2) * t1;
    if (t0 < kEps * i0 && t1 < kEps * i1) break;
    const double kk = k + 1.0;
    t0 *= y / (kk * kk);
    t1 *= y / (kk * (kk + 1.0));
    psi1 += 1.0 / kk;
    psi2 += 1.0 / (kk + 1.0);
  }
  i1 *= 0.5 * z;
  return {-log_half * i0 + s0, 1.0 / z + log_half * i1 - 0.25 * z * s1};
}

// Steed's continued fraction (Temme's normalization) for e^z K0, e^z K1.
Pair continued_fraction_scaled(double z) {
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
  return {k0, k0 * (z + 0.5 - h) / z};
}

Pair scaled(double z) {
  if (z <= kSeriesLimit) {
    const Pair p = series(z);
    const double e = std::exp(z);
    return {p.k0 * e, p.k1 * e};
  }
  return continued_fraction_scaled(z);
}

}  // namespace

double bessel_k0(double z) {
  require_positive(z);
  if (z <= kSeriesLimit) return series(z).k0;
  return continued_fraction_scaled(z).k0 * std::exp(-z);
}

double bessel_k1(double z) {
  require_positive(z);
  if (z <= kSeriesLimit) return series(z).k1;
  return continued_fraction_scaled(z).k1 * std::exp(-z);
}

double bessel_k0_scaled(double z) {
  require_positive(z);
  return scaled(z).k0;
}

double bessel_k1_scaled(double z) {
  require_positive(z);
  return scaled(z).k1;
}

BesselValue bessel_k1_checked(double z) {
  const double v = bessel_k1(z);
  if (v < std::numeric_limits<double>::min()) return {0.0, true};
  return {v, false};
}

}  // namespace thresh
