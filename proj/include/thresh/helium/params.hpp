#pragma once

#include <numbers>
#include <string>

#include "thresh/errors.hpp"

namespace thresh::helium {

/// Bottom of the essential spectrum of the helium Hamiltonian (hydrogen ground energy).
inline constexpr double kThreshold = -0.25;

struct HeliumParams {
  double U = 1.1;           ///< electron-electron repulsion coupling
  double delta = 0.05;      ///< opening of the region x0 >= delta x_inf
  double pitchfork = 0.5;   ///< transition width of the smooth step
  double eta = 0.0;         ///< regularization of F_eta
  double C_w = 0.1;         ///< sqrt coefficient of F_eta
  double D_w = 0.0;         ///< linear coefficient of F_eta
  double K = 1.0;           ///< prefactor of the outer upper weight
  double R = 10.0;          ///< radius beyond which the comparison function is used
  int m = 2;                ///< degree of the pair profile M
  double C_low = 2.0;       ///< exponential rate of the comparison function
  double N_low = 1.0;       ///< comparison prefactor
  double eps_low = 0.01;    ///< extra repulsion epsilon / |x1 - x2| in W1

  /// Throws ParameterError naming the first offending field.
  void validate() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw ParameterError(std::string("helium parameter ") + what);
    };
    need(U > 0.0, "U must be positive");
    need(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    need(pitchfork > 0.0 && pitchfork < 1.0, "pitchfork must lie in (0, 1)");
    need(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
    need(C_w >= 0.0, "C_w must be nonnegative");
    need(D_w >= 0.0, "D_w must be nonnegative");
    need(K > 0.0 && K < 2.0, "K must lie in (0, 2)");
    need(R > 0.0, "R must be positive");
    need(m >= 1, "m must be a positive integer");
    need(C_low > 0.0, "C_low must be positive");
    need(N_low > 0.0, "N_low must be positive");
    need(eps_low > 0.0, "eps_low must be positive");
  }

  /// sup |phi'| of the cosine smooth step with this transition width.
  double step_slope() const { return std::numbers::pi / (2.0 * pitchfork); }
  /// Gradient-bound constants of F_eta: c1 on supp gamma_A, c2 / sqrt(x_inf) everywhere.
  double c1() const { return D_w + 2.0 * D_w * step_slope() / delta; }
  double c2() const { return C_w / 2.0; }
};

}  // namespace thresh::helium
