#pragma once

#include <map>
#include <string>
#include <vector>

#include "thresh/potential.hpp"
#include "thresh/radial_solver.hpp"
#include "thresh/report.hpp"
#include "thresh/weights.hpp"

namespace thresh {

/// Regression basis for -log psi.
///   plain:          s sqrt(r) + b
///   with_prefactor: s sqrt(r) + a log(r) + b   (free algebraic prefactor r^-a)
enum class FitModel { plain, with_prefactor };

struct DecayFit {
  double slope = 0.0;
  double log_coefficient = 0.0;  ///< a; zero for the plain model
  double intercept = 0.0;
  double lower_half_slope = 0.0;
  double upper_half_slope = 0.0;
  /// Half-window slopes agree within 5%; an exponent that keeps drifting with
  /// the window means the sqrt(r) ansatz is wrong.
  bool converged = false;
  int points = 0;
};

/// Least-squares decay exponent of psi over the grid nodes in [r_lo, r_hi].
/// Throws DomainError on fewer than 6 nodes or a nonpositive psi.
DecayFit fit_decay_exponent(const GridSolution& sol, double r_lo, double r_hi,
                            FitModel model = FitModel::with_prefactor);

enum class EnvelopeKind { upper, lower, sandwich, weighted_norm, point_constant };

std::string to_string(EnvelopeKind kind);

struct Window {
  double lo;
  double hi;
};

struct EnvelopeCheck {
  EnvelopeKind kind = EnvelopeKind::sandwich;
  std::map<std::string, double> constants;
  Window domain{0.0, 0.0};
  VerificationReport result;
};

/// Windows for the two sides. Constants come from the calibration window and
/// are tested on the validation window, so nothing is checked on the data it
/// was tuned on.
struct SandwichWindows {
  Window lower_calibration;
  Window lower_validation;
  Window upper_calibration;
  Window upper_validation;
};

/// N = min psi e^{F} on `calibration`, then psi >= N e^{-F} on `validation`.
/// Margins are psi e^{F} / N - 1.
EnvelopeCheck check_lower_envelope(const GridSolution& sol, const WeightFunction& F,
                                   Window calibration, Window validation);

/// c = max psi e^{F} on `calibration`, then psi <= c e^{-F} on `validation`.
/// Margins are 1 - psi e^{F} / c.
EnvelopeCheck check_upper_envelope(const GridSolution& sol, const WeightFunction& F,
                                   Window calibration, Window validation);

/// Both sides; constants N and c, worst margin over both validation windows,
/// violation counts per side in params_echo.
EnvelopeCheck verify_sandwich(const GridSolution& sol, const WeightFunction& F_low,
                              const WeightFunction& F_up, const SandwichWindows& windows);

/// Same with [r_lo, r_hi] split at its geometric midpoint: lower half
/// calibrates, upper half validates.
EnvelopeCheck verify_sandwich(const GridSolution& sol, const WeightFunction& F_low,
                              const WeightFunction& F_up, double r_lo, double r_hi);

/// integral_{r_lo}^{r_hi} e^{2F} (U - F'^2) psi^2 4 pi r^2 dr, trapezoid on the
/// grid nodes. Throws DomainError if U - F'^2 < 0 anywhere in the window.
double weighted_norm(const GridSolution& sol, const WeightFunction& F, const RadialPotential& p,
                     double r_lo, double r_hi);

/// weighted_norm over consecutive [edges[i], edges[i+1]].
std::vector<double> weighted_norm_increments(const GridSolution& sol, const WeightFunction& F,
                                             const RadialPotential& p,
                                             const std::vector<double>& edges);

/// max psi e^{F} over the grid nodes in [r_lo, r_hi].
double point_bound_constant(const GridSolution& sol, const WeightFunction& F, double r_lo,
                            double r_hi);

}  // namespace thresh
