#include "thresh/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "thresh/envelope.hpp"
#include "thresh/errors.hpp"
#include "thresh/helium/sampling.hpp"
#include "thresh/parallel.hpp"
#include "thresh/weights.hpp"

namespace thresh::cli {

namespace {

struct Check {
  std::string name;
  std::function<VerificationReport(int jobs, std::vector<helium::SampleRecord>* records)> run;
};

VerificationReport failed(const std::string& name, const std::string& why) {
  VerificationReport r;
  r.check_name = name;
  r.set_tolerance(0.0);
  r.worst_margin = -std::numeric_limits<double>::infinity();
  r.pass = false;
  r.notes = why;
  return r;
}

std::vector<VerificationReport> run_checks(const std::vector<Check>& checks, int jobs,
                                           std::vector<helium::SampleRecord>* records) {
  std::vector<VerificationReport> reports(checks.size());
  std::vector<std::vector<helium::SampleRecord>> recs(checks.size());
  const int outer = std::max(1, std::min<int>(jobs, static_cast<int>(checks.size())));
  const int inner = std::max(1, jobs / outer);
  parallel_for(checks.size(), outer, [&](std::size_t i) {
    try {
      reports[i] = checks[i].run(inner, records ? &recs[i] : nullptr);
    } catch (const ParameterError& e) {
      reports[i] = failed(checks[i].name, e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(checks[i].name + ": " + e.what());
    }
  });
  std::vector<std::size_t> order(checks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return reports[a].check_name < reports[b].check_name; });
  std::vector<VerificationReport> sorted;
  for (auto i : order) {
    sorted.push_back(reports[i]);
    if (records) records->insert(records->end(), recs[i].begin(), recs[i].end());
  }
  return sorted;
}

std::vector<VerificationReport> one_particle_suite(const ScenarioConfig& config, int jobs) {
  const OneParticleSettings& op = config.one_particle;
  const RadialPotential p = config.potential->build();
  const double C = p.coulomb_C();
  const double R = p.well_radius();

  SolveResult solved;
  VerificationReport crit_report;
  crit_report.check_name = "critical_depth";
  crit_report.set_tolerance(0.0);
  try {
    solved = solve_one_particle(config);
  } catch (const BracketError& e) {
    return {failed("critical_depth", e.what())};
  }
  const CriticalityResult& crit = solved.criticality;
  const GridSolution& sol = solved.solution;
  crit_report.params_echo.insert({{"depth_lo", op.depth_lo},
                                  {"depth_hi", op.depth_hi},
                                  {"tol", op.tol},
                                  {"depth_star", crit.depth_star},
                                  {"bracket_width", crit.bracket_width},
                                  {"iterations", crit.iterations},
                                  {"diagnostic", crit.diagnostic},
                                  {"r_max", crit.r_max},
                                  {"steps", crit.steps},
                                  {"matching_jump", sol.matching_jump}});
  crit_report.samples = static_cast<std::size_t>(crit.iterations);
  crit_report.worst_margin = (op.tol - crit.bracket_width) / op.tol;
  crit_report.notes = "margin (tol - bracket_width)/tol";
  crit_report.finalize();

  std::vector<Check> checks;
  checks.push_back({"critical_depth", [crit_report](int, auto*) { return crit_report; }});

  checks.push_back({"decay_fit", [&](int, auto*) {
    const DecayFit fit = fit_decay_exponent(sol, op.fit_window.lo, op.fit_window.hi);
    const double target = 2.0 * std::sqrt(C);
    VerificationReport r;
    r.check_name = "decay_fit";
    r.params_echo = {{"r_lo", op.fit_window.lo}, {"r_hi", op.fit_window.hi},
                     {"slope", fit.slope},       {"target", target},
                     {"log_coefficient", fit.log_coefficient},
                     {"lower_half_slope", fit.lower_half_slope},
                     {"upper_half_slope", fit.upper_half_slope},
                     {"converged", fit.converged ? 1.0 : 0.0}};
    r.set_tolerance(0.0);
    r.samples = static_cast<std::size_t>(fit.points);
    r.worst_margin = 0.02 - std::abs(fit.slope / target - 1.0);
    if (!fit.converged) r.worst_margin = std::min(r.worst_margin, -1.0);
    r.notes = "margin 0.02 - |slope/(2 sqrt C) - 1|; fit of -log psi on sqrt r, log r, 1";
    r.finalize();
    return r;
  }});

  checks.push_back({"sandwich", [&](int, auto*) {
    const double K = std::sqrt(4.0 * C + op.eps_lower);
    const double onset = sqrt_weight_lower_onset(K, C);
    const double cal_hi = 1.5 * std::max(onset, R);
    const double val_hi = 0.5 * op.r_max;
    if (!(cal_hi < val_hi))
      return failed("sandwich", "lower-condition onset " + std::to_string(onset) +
                                    " leaves no validation window below r_max/2");
    const WeightFunction F_low = power_law_weight(K, 0.5);
    const WeightFunction F_up = build_upper_weight(p, op.eps_upper, R);
    EnvelopeCheck ec = verify_sandwich(
        sol, F_low, F_up,
        SandwichWindows{{std::max(onset, R), cal_hi}, {cal_hi, val_hi}, op.upper_calibration,
                        op.upper_validation});
    ec.result.params_echo["lower_onset"] = onset;
    ec.result.params_echo["eps_lower"] = op.eps_lower;
    ec.result.params_echo["eps_upper"] = op.eps_upper;
    return ec.result;
  }});

  checks.push_back({"upper_condition", [&](int, auto*) {
    VerificationReport r = check_upper_condition(build_upper_weight(p, op.eps_upper, R), p, R,
                                                 op.r_max, 2000);
    r.params_echo["eps"] = op.eps_upper;
    return r;
  }});

  checks.push_back({"weighted_norm", [&](int, auto*) {
    const WeightFunction F = build_upper_weight(p, op.eps_norm, R);
    const auto inc = weighted_norm_increments(sol, F, p, op.norm_edges);
    VerificationReport r;
    r.check_name = "weighted_norm";
    r.params_echo["eps"] = op.eps_norm;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      r.params_echo["increment_" + std::to_string(i)] = inc[i];
      if (i > 0) {
        const double ratio = inc[i] / inc[i - 1];
        r.params_echo["ratio_" + std::to_string(i)] = ratio;
        worst_ratio = std::max(worst_ratio, std::isfinite(ratio) ? ratio : 1e300);
      }
    }
    for (std::size_t i = 0; i < op.norm_edges.size(); ++i)
      r.params_echo["edge_" + std::to_string(i)] = op.norm_edges[i];
    r.set_tolerance(0.0);
    r.samples = inc.size();
    r.worst_margin = 0.5 - worst_ratio;
    r.notes = "margin 0.5 - max ratio of consecutive window contributions";
    r.finalize();
    return r;
  }});

  return run_checks(checks, jobs, nullptr);
}

std::vector<VerificationReport> helium_suite(const ScenarioConfig& config, int jobs,
                                             std::vector<helium::SampleRecord>* records) {
  using namespace helium;
  const HeliumParams P = *config.helium_params;
  const SamplingSpec& s = config.sampling;
  const HeliumSettings& hs = config.helium;
  const std::uint64_t seed = s.seed.value_or(0);
  const std::size_t n = s.count;
  const double ss_hi = hs.supersolution_x_hi > 0.0 ? hs.supersolution_x_hi : 4.0 * P.R;

  std::vector<Check> checks;
  checks.push_back({"region_estimates", [=](int j, auto* rec) {
    return check_region_estimates(sample_box(n, seed, s.x_hi), P.U, P.delta, j, rec);
  }});
  checks.push_back({"partition_gradient_bound", [=](int j, auto* rec) {
    Samples pts = sample_shells(n / 2, seed + 1, s.x_lo, s.x_hi, 0.0, 1.0);
    const Samples shell = sample_shells(n - n / 2, seed + 2, s.x_lo, s.x_hi, 0.5 * P.delta, P.delta);
    pts.insert(pts.end(), shell.begin(), shell.end());
    return partition_gradient_bound(pts, P.delta, j, rec);
  }});
  checks.push_back({"grad_bound_f_eta", [=](int j, auto* rec) {
    const double lo = std::max(s.x_lo, hs.gradient_onset);
    return grad_bound_f_eta(sample_shells(n, seed + 3, lo, std::max(lo, s.x_hi), 0.0, 1.0), P,
                            hs.gradient_onset, j, rec);
  }});
  checks.push_back({"positivity_scan", [=](int j, auto*) {
    try {
      return positivity_scan(P, hs.positivity_lo, hs.positivity_hi, n, seed + 4, j);
    } catch (const ParameterError& e) {
      VerificationReport r = failed("positivity_scan", e.what());
      r.params_echo = {{"U", P.U}, {"delta", P.delta}, {"c1", P.c1()}, {"c2", P.c2()},
                       {"x_lo", hs.positivity_lo}, {"x_hi", hs.positivity_hi}, {"tolerance", 0.0}};
      return r;
    }
  }});
  checks.push_back({"supersolution", [=](int j, auto* rec) {
    return check_supersolution(sample_supersolution_points(n, seed + 5, P, ss_hi, hs.fd_step), P,
                               hs.fd_step, j, rec);
  }});

  auto reports = run_checks(checks, jobs, records);
  for (auto& r : reports) r.params_echo["seed"] = static_cast<double>(seed);
  return reports;
}

}  // namespace

SolveResult solve_one_particle(const ScenarioConfig& config) {
  config.validate();
  if (config.scenario != ScenarioKind::one_particle)
    throw ConfigError("config.scenario", "solve needs scenario one_particle");
  const OneParticleSettings& op = config.one_particle;
  const RadialPotential p = config.potential->build();
  CriticalSearchOptions opt;
  opt.r_max = op.r_max;
  opt.steps = op.steps;
  SolveResult out;
  out.criticality = find_critical_depth(p, op.depth_lo, op.depth_hi, op.tol, opt);
  out.solution = assemble_critical_solution(p, out.criticality, op.r_max, op.steps);
  return out;
}

std::vector<VerificationReport> run_scenario(const ScenarioConfig& config, int jobs,
                                             std::vector<helium::SampleRecord>* records) {
  config.validate();
  if (config.scenario == ScenarioKind::one_particle) return one_particle_suite(config, jobs);
  return helium_suite(config, jobs, records);
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return !reports.empty() &&
         std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

}  // namespace thresh::cli
