#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thresh/helium/geometry.hpp"
#include "thresh/helium/params.hpp"
#include "thresh/report.hpp"

namespace thresh::helium {

/// One evaluated quantity at one sample, for CSV export.
struct SampleRecord {
  double r1;
  double r2;
  double cos_theta;
  std::string quantity;
  double margin;
};

using Samples = std::vector<HeliumPoint<double>>;

/// Potential lower bounds by region, with margins
/// (LHS - RHS) / max(1, |LHS|, |RHS|) and tolerance 1e-12:
///   x0 >= delta x_inf:  V >= (U/2 - (1 + delta)/delta) / x_inf
///   x0 <= delta x_inf:  V >= -1/x0 + (U - 1 - delta) / ((1 + delta) x_inf)
/// Both apply on x0 = delta x_inf.
VerificationReport check_region_estimates(const HeliumPoint<double>& pt, double U, double delta);
VerificationReport check_region_estimates(const Samples& samples, double U, double delta,
                                          int jobs = 1, std::vector<SampleRecord>* records = nullptr);

/// |grad F_eta| (centered differences, step 1e-7 x_inf) against
/// c1 1[x0 >= delta x_inf] + c2 / sqrt(x_inf). Samples with x_inf < onset are
/// skipped; samples with |r1 - r2| < 1e-6 x_inf are excluded (x_inf has a kink
/// there) and their violations are counted separately. Margin (B - G)/B,
/// tolerance 1e-6.
VerificationReport grad_bound_f_eta(const Samples& samples, const HeliumParams& P, double onset,
                                    int jobs = 1, std::vector<SampleRecord>* records = nullptr);

/// Normalization, denominator floor and the scaled gradient
/// (|grad sigma|^2 + |grad sigma_perp|^2) x_inf^2 of the partition of unity.
/// Passes iff sigma^2 + sigma_perp^2 = 1 to 1e-12, a^2 + b^2 >= 1/2, and the
/// empirical sup lies in [L/2, L] with L = partition_constant(delta).
VerificationReport partition_gradient_bound(const Samples& samples, double delta, int jobs = 1,
                                            std::vector<SampleRecord>* records = nullptr);

/// Lower bounds of the three localized energy terms:
///   A1 = 1/4 + (delta U - 4 - 2 delta)/(2 delta x) - 4 c1^2 - 4 c2^2 / x   (x0 >= delta x_inf)
///   A2 = (U - 1 - delta)/((1 + delta) x) - 2 c2^2 / x                      (x0 <= delta x_inf / 2)
///   A3 = A2 - L / x^2                                                     (in between)
/// with x = x_inf. Scans n_per_region samples per region on [x_lo, x_hi],
/// sets onset_radius R* to the smallest scanned x_inf above the last failure,
/// then validates n_per_region fresh samples per region on [R*, x_hi].
/// Margins are A_j x_inf. Throws ParameterError when the expressions are
/// still negative at the top of the range.
VerificationReport positivity_scan(const HeliumParams& P, double c1, double c2, double x_lo,
                                   double x_hi, std::size_t n_per_region, std::uint64_t seed,
                                   int jobs = 1);
/// Same with c1, c2 taken from the F_eta coefficients of P.
VerificationReport positivity_scan(const HeliumParams& P, double x_lo, double x_hi,
                                   std::size_t n_per_region, std::uint64_t seed, int jobs = 1);

/// Points near which the second-order Laplacian stencil of step h straddles a
/// kink of the comparison function: |r1 - r2|, |rho - m|, |rho - 3m| or rho
/// within the band.
bool in_nonsmooth_band(const HeliumPoint<double>& pt, const HeliumParams& P, double h);

/// n samples with x_inf in (R, x_hi] outside the nonsmooth bands: two thirds
/// with x0 uniform below x_inf, one third with |x1 - x2| uniform on (0, 4m).
Samples sample_supersolution_points(std::size_t n, std::uint64_t seed, const HeliumParams& P,
                                    double x_hi, double h = 1e-4);

/// Sign of (-Delta + W1) phi / phi at every sample (analytic form), agreement of
/// the analytic and finite-difference Laplacians to relative 1e-6
/// (|b_fd - b| / max(|b|, 1)) on smooth-region samples, and nonpositivity of the
/// three closing bounds. The stencil step is h min(1, x0, |x1 - x2|).
/// worst_margin is the minimum of -max bracket,
/// 1e-6 - max disagreement and -max closing bound; each part is echoed.
VerificationReport check_supersolution(const Samples& samples, const HeliumParams& P,
                                       double h = 1e-4, int jobs = 1,
                                       std::vector<SampleRecord>* records = nullptr);

}  // namespace thresh::helium
