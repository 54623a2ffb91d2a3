#include "thresh/radial_solver.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "thresh/bessel.hpp"
#include "thresh/errors.hpp"
#include "thresh/quadrature.hpp"

namespace thresh {

namespace {

constexpr double kOverflow = 1e300;

int inner_steps(int steps) { return std::max(200, steps / 8); }

// u'' = (U - V) u over nodes [from, to]; u, du already set at `from`.
void rk4_segment(const RadialPotential& p, const Eigen::VectorXd& r, Eigen::Index from,
                 Eigen::Index to, double V, Eigen::VectorXd& u, Eigen::VectorXd& du) {
  const Eigen::Index step = to > from ? 1 : -1;
  auto q = [&](double x) { return eval_repulsive(p, x) - V; };
  for (Eigen::Index k = from; k != to; k += step) {
    const double r0 = r[k];
    const double h = r[k + step] - r0;
    const double y0 = u[k], y1 = du[k];
    const double qa = q(r0), qm = q(r0 + 0.5 * h), qb = q(r0 + h);
    const double k1a = y1, k1b = qa * y0;
    const double k2a = y1 + 0.5 * h * k1b, k2b = qm * (y0 + 0.5 * h * k1a);
    const double k3a = y1 + 0.5 * h * k2b, k3b = qm * (y0 + 0.5 * h * k2a);
    const double k4a = y1 + h * k3b, k4b = qb * (y0 + h * k3a);
    u[k + step] = y0 + h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    du[k + step] = y1 + h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    if (!(std::abs(u[k + step]) < kOverflow) || !std::isfinite(du[k + step]))
      throw IntegrationError("zero-energy integration overflowed", r[k + step]);
  }
}

// Regular solution at the first node off the origin.
void seed_outward(const RadialPotential& p, const Eigen::VectorXd& r, Eigen::VectorXd& u,
                  Eigen::VectorXd& du) {
  const double L = p.origin_limit();
  u[0] = 0.0;
  du[0] = 1.0;
  u[1] = r[1] + 0.5 * L * r[1] * r[1];
  du[1] = 1.0 + L * r[1];
}

// Decaying exterior behaviour at r_max, scaled by exp(integral_R^r_max sqrt U)
// so that the inward solution is O(1) at the well edge.
void seed_inward(const RadialPotential& p, double r_max, double& u, double& du) {
  const double R = p.well_radius();
  if (!p.has_tail()) {
    u = 1.0;
    du = 0.0;
    return;
  }
  if (p.is_coulomb()) {
    const double C = p.coulomb_C();
    const double z = 2.0 * std::sqrt(C * r_max);
    const double damp = std::exp(-2.0 * std::sqrt(C) * (std::sqrt(r_max) - std::sqrt(R)));
    u = std::sqrt(r_max) * bessel_k1_scaled(z) * damp;
    du = -std::sqrt(C) * bessel_k0_scaled(z) * damp;
    return;
  }
  const double phase =
      integrate_adaptive([&](double s) { return std::sqrt(eval_repulsive(p, s)); }, R, r_max).value;
  const double U = eval_repulsive(p, r_max);
  const double dU = eval_repulsive_derivative(p, r_max);
  u = std::pow(U, -0.25) * std::exp(-phase);
  du = u * (-std::sqrt(U) - dU / (4.0 * U));
}

struct EdgeState {
  double u, du;
};

double wronskian_sine(const EdgeState& a, const EdgeState& b) {
  return (a.du * b.u - a.u * b.du) / (std::hypot(a.u, a.du) * std::hypot(b.u, b.du));
}

void fill_psi(GridSolution& s) {
  s.psi.resize(s.grid.size());
  for (Eigen::Index i = 0; i < s.grid.size(); ++i)
    s.psi[i] = s.grid[i] > 0.0 ? s.u[i] / s.grid[i] : s.du[i];
}

double trapezoid_norm(const Eigen::VectorXd& r, const Eigen::VectorXd& u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < r.size(); ++i)
    acc += 0.5 * (r[i + 1] - r[i]) * (u[i] * u[i] + u[i + 1] * u[i + 1]);
  return 4.0 * M_PI * acc;
}

}  // namespace

GridSolution GridSolution::from_psi(const Eigen::VectorXd& grid,
                                    const std::function<double(double)>& psi) {
  if (grid.size() < 3) throw DomainError("grid needs at least three nodes");
  GridSolution s;
  s.grid = grid;
  const Eigen::Index n = grid.size();
  s.u.resize(n);
  s.du.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.u[i] = grid[i] * psi(grid[i]);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    s.du[i] = (s.u[i + 1] - s.u[i - 1]) / (grid[i + 1] - grid[i - 1]);
  s.du[0] = (s.u[1] - s.u[0]) / (grid[1] - grid[0]);
  s.du[n - 1] = (s.u[n - 1] - s.u[n - 2]) / (grid[n - 1] - grid[n - 2]);
  s.psi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.psi[i] = psi(grid[i]);
  return s;
}

void GridSolution::write_csv(std::ostream& os) const {
  os << "r,u,psi\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    os << grid[i] << ',' << u[i] << ',' << psi[i] << '\n';
}

void GridSolution::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Eigen::VectorXd make_radial_grid(double R, double r_max, int steps) {
  if (!(R > 0.0) || !(r_max > R)) throw DomainError("radial grid needs 0 < R < r_max");
  if (steps < 100) throw DomainError("radial grid needs at least 100 steps");
  const int n_in = inner_steps(steps);
  Eigen::VectorXd r(n_in + steps + 1);
  const double sR = std::sqrt(R), sM = std::sqrt(r_max);
  for (int i = 0; i <= n_in; ++i) {
    const double s = sR * i / n_in;
    r[i] = s * s;
  }
  for (int j = 1; j <= steps; ++j) {
    const double s = sR + (sM - sR) * j / steps;
    r[n_in + j] = s * s;
  }
  r[n_in] = R;
  r[n_in + steps] = r_max;
  return r;
}

double exterior_exact(double C, double r) {
  if (!(r > 0.0)) throw DomainError("exterior_exact requires r > 0");
  if (!(C > 0.0)) throw DomainError("exterior_exact requires C > 0");
  return bessel_k1(2.0 * std::sqrt(C * r)) / std::sqrt(r);
}

GridSolution integrate_zero_energy(const RadialPotential& p, double r_max, int steps,
                                   Direction direction) {
  GridSolution s;
  s.grid = make_radial_grid(p.well_radius(), r_max, steps);
  const Eigen::Index n = s.grid.size();
  const Eigen::Index iR = inner_steps(steps);
  s.u.resize(n);
  s.du.resize(n);
  s.r_match = p.well_radius();
  if (direction == Direction::outward) {
    seed_outward(p, s.grid, s.u, s.du);
    rk4_segment(p, s.grid, 1, iR, p.well_depth(), s.u, s.du);
    rk4_segment(p, s.grid, iR, n - 1, 0.0, s.u, s.du);
  } else {
    seed_inward(p, r_max, s.u[n - 1], s.du[n - 1]);
    rk4_segment(p, s.grid, n - 1, iR, 0.0, s.u, s.du);
    rk4_segment(p, s.grid, iR, 1, p.well_depth(), s.u, s.du);
    s.u[0] = s.u[1] - s.grid[1] * s.du[1];
    s.du[0] = s.du[1];
  }
  fill_psi(s);
  return s;
}

CriticalityResult find_critical_depth(const RadialPotential& p_template, double depth_lo,
                                      double depth_hi, double tol,
                                      const CriticalSearchOptions& opt) {
  if (!(tol > 0.0)) throw DomainError("find_critical_depth requires tol > 0");
  if (!(depth_lo >= 0.0) || !(depth_hi > depth_lo))
    throw DomainError("find_critical_depth requires 0 <= depth_lo < depth_hi");

  const Eigen::VectorXd r = make_radial_grid(p_template.well_radius(), opt.r_max, opt.steps);
  const Eigen::Index n = r.size();
  const Eigen::Index iR = inner_steps(opt.steps);

  Eigen::VectorXd u(n), du(n);
  seed_inward(p_template, opt.r_max, u[n - 1], du[n - 1]);
  rk4_segment(p_template, r, n - 1, iR, 0.0, u, du);
  const EdgeState exterior{u[iR], du[iR]};

  auto inner = [&](double depth) {
    const RadialPotential p = p_template.with_depth(depth);
    seed_outward(p, r, u, du);
    rk4_segment(p, r, 1, iR, depth, u, du);
    return EdgeState{u[iR], du[iR]};
  };

  double lo = depth_lo, hi = depth_hi;
  double w_lo = wronskian_sine(inner(lo), exterior);
  const double w_hi = wronskian_sine(inner(hi), exterior);
  if (w_lo * w_hi > 0.0)
    throw BracketError("matching Wronskian does not change sign on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");

  CriticalityResult res;
  res.r_match = p_template.well_radius();
  res.r_max = opt.r_max;
  res.steps = opt.steps;
  while (hi - lo > tol && res.iterations < opt.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double w = wronskian_sine(inner(mid), exterior);
    ++res.iterations;
    if (w == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((w < 0.0) == (w_lo < 0.0)) {
      lo = mid;
      w_lo = w;
    } else {
      hi = mid;
    }
  }
  res.depth_star = 0.5 * (lo + hi);
  res.bracket_width = hi - lo;
  const EdgeState in = inner(res.depth_star);
  res.diagnostic = in.du / in.u - exterior.du / exterior.u;
  return res;
}

GridSolution assemble_critical_solution(const RadialPotential& p, const CriticalityResult& crit,
                                        double r_max, int steps) {
  const RadialPotential pc = p.with_depth(crit.depth_star);
  GridSolution s;
  s.grid = make_radial_grid(p.well_radius(), r_max, steps);
  const Eigen::Index n = s.grid.size();
  const Eigen::Index iR = inner_steps(steps);
  s.u.resize(n);
  s.du.resize(n);
  s.r_match = p.well_radius();

  seed_inward(pc, r_max, s.u[n - 1], s.du[n - 1]);
  rk4_segment(pc, s.grid, n - 1, iR, 0.0, s.u, s.du);
  const EdgeState outer{s.u[iR], s.du[iR]};

  Eigen::VectorXd ui(iR + 1), dui(iR + 1);
  Eigen::VectorXd r_in = s.grid.head(iR + 1);
  seed_outward(pc, r_in, ui, dui);
  rk4_segment(pc, r_in, 1, iR, pc.well_depth(), ui, dui);

  s.matching_jump = dui[iR] / ui[iR] - outer.du / outer.u;
  if (!(std::abs(s.matching_jump) <= 1e-6))
    throw DomainError("critical depth inconsistent with potential: log-derivative jump " +
                      std::to_string(s.matching_jump));

  const double scale = outer.u / ui[iR];
  s.u.head(iR) = scale * ui.head(iR);
  s.du.head(iR) = scale * dui.head(iR);

  double factor = s.u[n - 1] < 0.0 ? -1.0 : 1.0;
  factor /= std::sqrt(trapezoid_norm(s.grid, s.u));
  s.u *= factor;
  s.du *= factor;
  s.normalization = std::abs(factor);
  fill_psi(s);
  return s;
}

double zero_energy_residual(const GridSolution& sol, const RadialPotential& p, double r_from) {
  const Eigen::VectorXd& r = sol.grid;
  const double R = p.well_radius();
  const double scale = sol.u.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index i = 1; i + 1 < r.size(); ++i) {
    if (r[i] < r_from || std::abs(r[i] - R) <= 1e-12 * R) continue;
    const double hm = r[i] - r[i - 1], hp = r[i + 1] - r[i];
    // Second-order derivative of u' on the nonuniform stencil.
    const double d2 = (-hp / (hm * (hm + hp))) * sol.du[i - 1] +
                      ((hp - hm) / (hm * hp)) * sol.du[i] +
                      (hm / (hp * (hm + hp))) * sol.du[i + 1];
    const double res = -d2 + (eval_repulsive(p, r[i]) - eval_attractive(p, r[i])) * sol.u[i];
    worst = std::max(worst, std::abs(res));
  }
  return worst / scale;
}

}  // namespace thresh
