#pragma once

#include <functional>

#include "thresh/potential.hpp"
#include "thresh/report.hpp"

namespace thresh {

/// Radial Agmon-type exponent F with its first and second derivatives.
///
/// `anchor` is the radius where F vanishes; weights built from a potential are
/// defined for r >= anchor.
struct WeightFunction {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  double anchor = 0.0;

  double operator()(double r) const { return value(r); }
};

/// F(r) = K * r^alpha (anchor 0 for alpha > 0).
WeightFunction power_law_weight(double K, double alpha);

/// Weight given only by its values; derivatives by central differences.
WeightFunction weight_from_values(std::function<double(double)> value, double anchor);

/// F(r) = integral_R^r sqrt((1 - eps) U(s)) ds, so that F'^2 = (1 - eps) U.
///
/// Accepts eps in [0, 1) and R >= 0. The integral uses the substitution
/// s = R + w^2, which absorbs integrable 1/sqrt endpoint singularities; a
/// non-integrable tail throws QuadratureError on evaluation. F is clamped to
/// 0 below R.
WeightFunction build_upper_weight(const RadialPotential& p, double eps, double R);

/// F'' + (dim - 1) F' / r.
double radial_laplacian(const WeightFunction& F, double r, int dim = 3);

/// r -> F / (1 + eps F), bounded by 1/eps, with chain-rule derivatives.
WeightFunction regularized_weight(const WeightFunction& F, double eps_reg);

/// Scans (U - F'^2) / U on n geometric points of [r_lo, r_hi].
/// Passes iff every relative margin exceeds 1e-14 (the inequality is strict).
VerificationReport check_upper_condition(const WeightFunction& F, const RadialPotential& p,
                                         double r_lo, double r_hi, int n);

/// Scans F'^2 - Laplacian(F) - U on n geometric points of [r_lo, r_hi].
///
/// Passes iff the margin is nonnegative everywhere; `onset_radius` is the
/// smallest grid radius beyond which it stays nonnegative (unset if the last
/// point fails). params_echo carries `worst_margin_beyond_onset`.
VerificationReport check_lower_condition(const WeightFunction& F, const RadialPotential& p,
                                         double r_lo, double r_hi, int n, int dim = 3);

/// Practical proxy for e^{-F} in H^2: F(r_hi) / log(r_hi) must exceed `threshold`.
VerificationReport check_lower_admissibility(const WeightFunction& F, double r_hi,
                                             double threshold);

/// Radius beyond which F = K sqrt(r) is a subsolution weight for U = C/r in
/// three dimensions: (3K / (K^2 - 4C))^2. Infinite when K^2 <= 4C.
double sqrt_weight_lower_onset(double K, double C);

}  // namespace thresh
