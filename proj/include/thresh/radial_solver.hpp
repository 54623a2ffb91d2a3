#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <string>

#include "thresh/potential.hpp"

namespace thresh {

/// Zero-energy s-wave solution on a radial grid. u = r psi; du = u'.
struct GridSolution {
  Eigen::VectorXd grid;
  Eigen::VectorXd u;
  Eigen::VectorXd du;
  Eigen::VectorXd psi;
  double r_match = 0.0;
  double normalization = 1.0;  ///< factor applied to the raw integration
  double matching_jump = 0.0;  ///< log-derivative jump at r_match (assembled solutions)

  Eigen::Index size() const { return grid.size(); }

  /// Synthetic solution from psi(r); u' by differentiating r psi numerically.
  static GridSolution from_psi(const Eigen::VectorXd& grid, const std::function<double(double)>& psi);

  /// Columns r,u,psi.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::string& path) const;
};

struct CriticalityResult {
  double depth_star = 0.0;
  double bracket_width = 0.0;
  int iterations = 0;
  double diagnostic = 0.0;  ///< u'/u (inner) - u'/u (exterior) at r_match
  double r_match = 0.0;
  double r_max = 0.0;
  int steps = 0;
};

enum class Direction { outward, inward };

/// Nodes uniform in sqrt(r) on [0, R] and on [R, r_max], R itself a node.
/// `steps` intervals outside the well, max(200, steps / 8) inside.
Eigen::VectorXd make_radial_grid(double R, double r_max, int steps);

/// K1(2 sqrt(C r)) / sqrt(r): the decaying zero-energy solution outside the well.
double exterior_exact(double C, double r);

/// RK4 on u'' = (U - V) u.
///
/// Outward starts from the regular solution u ~ r (1 + r lim(rU)/2) at the
/// first node; inward from the decaying exterior behaviour at r_max (exact for
/// Coulomb tails, WKB otherwise), scaled to be O(1) at the well edge. An
/// inward solution's value at r = 0 is linearly extrapolated. Throws
/// IntegrationError when |u| exceeds 1e300.
GridSolution integrate_zero_energy(const RadialPotential& p, double r_max, int steps,
                                   Direction direction);

struct CriticalSearchOptions {
  double r_max = 400.0;
  int steps = 4000;
  int max_iterations = 200;
};

/// Bisects the well depth until an outward inner solution and the inward
/// exterior solution have matching logarithmic derivatives at r = R.
///
/// The bisected function is the normalized Wronskian of the two (u, u')
/// vectors, which is continuous through nodes of u. Throws BracketError when
/// it does not change sign on [depth_lo, depth_hi].
CriticalityResult find_critical_depth(const RadialPotential& p_template, double depth_lo,
                                      double depth_hi, double tol,
                                      const CriticalSearchOptions& opt = {});

/// Inner and exterior solutions at depth_star glued at r_match, made positive
/// outside the well and normalized to integral 4 pi u^2 dr = 1 (trapezoid).
/// Throws DomainError when the log-derivative jump exceeds 1e-6.
GridSolution assemble_critical_solution(const RadialPotential& p, const CriticalityResult& crit,
                                        double r_max, int steps);

/// max |-u'' + (U - V) u| / max |u| over interior nodes with r >= r_from,
/// skipping the node at the well edge. u'' is the second-order three-point
/// derivative of the stored u' on the nonuniform grid.
double zero_energy_residual(const GridSolution& sol, const RadialPotential& p, double r_from);

}  // namespace thresh
