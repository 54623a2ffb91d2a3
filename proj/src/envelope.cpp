#include "thresh/envelope.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "thresh/errors.hpp"

namespace thresh {

namespace {

std::vector<Eigen::Index> nodes_in(const GridSolution& sol, double lo, double hi) {
  if (!(hi > lo)) throw DomainError("window must satisfy r_lo < r_hi");
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < sol.grid.size(); ++i)
    if (sol.grid[i] >= lo && sol.grid[i] <= hi) idx.push_back(i);
  if (idx.empty()) throw DomainError("window contains no grid nodes");
  return idx;
}

void require_positive(const GridSolution& sol, const std::vector<Eigen::Index>& idx) {
  for (auto i : idx)
    if (!(sol.psi[i] > 0.0))
      throw DomainError("psi not positive at r = " + std::to_string(sol.grid[i]));
}

// log(psi e^F) on the window nodes.
std::vector<double> log_weighted(const GridSolution& sol, const WeightFunction& F,
                                 const std::vector<Eigen::Index>& idx) {
  require_positive(sol, idx);
  std::vector<double> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(std::log(sol.psi[i]) + F.value(sol.grid[i]));
  return out;
}

// Coefficients (sqrt r, 1[, log r]) of the least-squares fit of -log psi.
Eigen::VectorXd least_squares(const GridSolution& sol, const std::vector<Eigen::Index>& idx,
                              FitModel model) {
  const int cols = model == FitModel::plain ? 2 : 3;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(idx.size()), cols);
  Eigen::VectorXd b(A.rows());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double r = sol.grid[idx[k]];
    const auto row = static_cast<Eigen::Index>(k);
    A(row, 0) = std::sqrt(r);
    A(row, 1) = 1.0;
    if (cols == 3) A(row, 2) = std::log(r);
    b[row] = -std::log(sol.psi[idx[k]]);
  }
  return A.colPivHouseholderQr().solve(b);
}

EnvelopeCheck side_check(EnvelopeKind kind, const GridSolution& sol, const WeightFunction& F,
                         Window cal, Window val) {
  const auto cal_idx = nodes_in(sol, cal.lo, cal.hi);
  const auto val_idx = nodes_in(sol, val.lo, val.hi);
  const auto cal_log = log_weighted(sol, F, cal_idx);
  const auto val_log = log_weighted(sol, F, val_idx);
  const bool lower = kind == EnvelopeKind::lower;

  double log_const = lower ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  for (double v : cal_log) log_const = lower ? std::min(log_const, v) : std::max(log_const, v);

  double worst = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (double v : val_log) {
    const double margin = lower ? std::expm1(v - log_const) : -std::expm1(v - log_const);
    worst = std::min(worst, margin);
    if (margin < 0.0) ++violations;
  }

  EnvelopeCheck out;
  out.kind = kind;
  out.domain = val;
  out.constants[lower ? "N" : "c"] = std::exp(log_const);
  VerificationReport& rep = out.result;
  rep.check_name = lower ? "envelope_lower" : "envelope_upper";
  rep.params_echo = {{"calibration_lo", cal.lo}, {"calibration_hi", cal.hi},
                     {"validation_lo", val.lo},  {"validation_hi", val.hi},
                     {"violations", static_cast<double>(violations)}};
  rep.set_tolerance(0.0);
  rep.samples = val_idx.size();
  rep.worst_margin = worst;
  rep.notes = lower ? "margin psi e^F / N - 1" : "margin 1 - psi e^F / c";
  rep.finalize();
  if (!std::isfinite(log_const)) rep.pass = false;
  return out;
}

}  // namespace

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::upper: return "upper";
    case EnvelopeKind::lower: return "lower";
    case EnvelopeKind::sandwich: return "sandwich";
    case EnvelopeKind::weighted_norm: return "weighted_norm";
    case EnvelopeKind::point_constant: return "point_constant";
  }
  return "unknown";
}

DecayFit fit_decay_exponent(const GridSolution& sol, double r_lo, double r_hi, FitModel model) {
  const auto idx = nodes_in(sol, r_lo, r_hi);
  if (idx.size() < 6) throw DomainError("decay fit needs at least 6 grid nodes in the window");
  require_positive(sol, idx);

  const Eigen::VectorXd x = least_squares(sol, idx, model);

  DecayFit fit;
  fit.slope = x[0];
  fit.intercept = x[1];
  fit.log_coefficient = x.size() == 3 ? x[2] : 0.0;
  fit.points = static_cast<int>(idx.size());

  const double mid = std::pow(0.5 * (std::sqrt(r_lo) + std::sqrt(r_hi)), 2);
  std::vector<Eigen::Index> lower, upper;
  for (auto i : idx) (sol.grid[i] <= mid ? lower : upper).push_back(i);
  if (lower.size() >= 6 && upper.size() >= 6) {
    fit.lower_half_slope = least_squares(sol, lower, model)[0];
    fit.upper_half_slope = least_squares(sol, upper, model)[0];
    const double scale = std::max(std::abs(fit.lower_half_slope), std::abs(fit.upper_half_slope));
    fit.converged = std::abs(fit.upper_half_slope - fit.lower_half_slope) <= 0.05 * scale;
  }
  return fit;
}

EnvelopeCheck check_lower_envelope(const GridSolution& sol, const WeightFunction& F,
                                   Window calibration, Window validation) {
  return side_check(EnvelopeKind::lower, sol, F, calibration, validation);
}

EnvelopeCheck check_upper_envelope(const GridSolution& sol, const WeightFunction& F,
                                   Window calibration, Window validation) {
  return side_check(EnvelopeKind::upper, sol, F, calibration, validation);
}

EnvelopeCheck verify_sandwich(const GridSolution& sol, const WeightFunction& F_low,
                              const WeightFunction& F_up, const SandwichWindows& w) {
  const EnvelopeCheck lo = check_lower_envelope(sol, F_low, w.lower_calibration, w.lower_validation);
  const EnvelopeCheck up = check_upper_envelope(sol, F_up, w.upper_calibration, w.upper_validation);

  EnvelopeCheck out;
  out.kind = EnvelopeKind::sandwich;
  out.constants = {{"N", lo.constants.at("N")}, {"c", up.constants.at("c")}};
  out.domain = {std::min({w.lower_calibration.lo, w.lower_validation.lo, w.upper_calibration.lo,
                          w.upper_validation.lo}),
                std::max({w.lower_calibration.hi, w.lower_validation.hi, w.upper_calibration.hi,
                          w.upper_validation.hi})};
  VerificationReport& rep = out.result;
  rep.check_name = "sandwich";
  rep.params_echo = {{"lower_calibration_lo", w.lower_calibration.lo},
                     {"lower_calibration_hi", w.lower_calibration.hi},
                     {"lower_validation_lo", w.lower_validation.lo},
                     {"lower_validation_hi", w.lower_validation.hi},
                     {"upper_calibration_lo", w.upper_calibration.lo},
                     {"upper_calibration_hi", w.upper_calibration.hi},
                     {"upper_validation_lo", w.upper_validation.lo},
                     {"upper_validation_hi", w.upper_validation.hi},
                     {"N", out.constants["N"]},
                     {"c", out.constants["c"]},
                     {"lower_violations", lo.result.params_echo.at("violations")},
                     {"upper_violations", up.result.params_echo.at("violations")},
                     {"lower_worst_margin", lo.result.worst_margin},
                     {"upper_worst_margin", up.result.worst_margin}};
  rep.set_tolerance(0.0);
  rep.samples = lo.result.samples + up.result.samples;
  rep.worst_margin = std::min(lo.result.worst_margin, up.result.worst_margin);
  rep.notes = "N e^{-F_low} <= psi <= c e^{-F_up} on validation windows";
  rep.finalize();
  rep.pass = rep.pass && lo.result.pass && up.result.pass;
  return out;
}

EnvelopeCheck verify_sandwich(const GridSolution& sol, const WeightFunction& F_low,
                              const WeightFunction& F_up, double r_lo, double r_hi) {
  const double mid = std::sqrt(r_lo * r_hi);
  const Window cal{r_lo, mid}, val{mid, r_hi};
  return verify_sandwich(sol, F_low, F_up, SandwichWindows{cal, val, cal, val});
}

double weighted_norm(const GridSolution& sol, const WeightFunction& F, const RadialPotential& p,
                     double r_lo, double r_hi) {
  const auto idx = nodes_in(sol, r_lo, r_hi);
  std::vector<double> f(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double r = sol.grid[idx[k]];
    const double U = eval_repulsive(p, r);
    const double g = F.d1(r);
    const double gap = U - g * g;
    if (gap < -1e-14 * U)
      throw DomainError("inadmissible weight: U - F'^2 < 0 at r = " + std::to_string(r));
    const double psi = sol.psi[idx[k]];
    f[k] = std::exp(2.0 * F.value(r)) * std::max(gap, 0.0) * psi * psi * 4.0 * M_PI * r * r;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k)
    acc += 0.5 * (sol.grid[idx[k + 1]] - sol.grid[idx[k]]) * (f[k] + f[k + 1]);
  return acc;
}

std::vector<double> weighted_norm_increments(const GridSolution& sol, const WeightFunction& F,
                                             const RadialPotential& p,
                                             const std::vector<double>& edges) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    out.push_back(weighted_norm(sol, F, p, edges[i], edges[i + 1]));
  return out;
}

double point_bound_constant(const GridSolution& sol, const WeightFunction& F, double r_lo,
                            double r_hi) {
  const auto idx = nodes_in(sol, r_lo, r_hi);
  double best = -std::numeric_limits<double>::infinity();
  for (double v : log_weighted(sol, F, idx)) best = std::max(best, v);
  return std::exp(best);
}

}  // namespace thresh
