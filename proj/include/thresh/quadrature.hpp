#pragma once

#include <functional>

namespace thresh {

struct QuadratureResult {
  double value;
  double error_estimate;
  int intervals;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
///
/// Stops when the summed error estimate drops below
/// max(abs_tol, rel_tol * |value|). Throws QuadratureError when the interval
/// budget is exhausted or the integrand turns non-finite.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 1e-300,
                                    int max_intervals = 2000);

}  // namespace thresh
