#pragma once

#include <vector>

#include "thresh/cli/config.hpp"
#include "thresh/helium/checks.hpp"
#include "thresh/radial_solver.hpp"
#include "thresh/report.hpp"

namespace thresh::cli {

struct SolveResult {
  CriticalityResult criticality;
  GridSolution solution;
};

/// Critical depth for the configured potential and the assembled normalized solution.
SolveResult solve_one_particle(const ScenarioConfig& config);

/// Runs the scenario's suite and returns its reports sorted by check_name.
///
/// one_particle: critical_depth, decay_fit, sandwich, upper_condition, weighted_norm.
/// helium: grad_bound_f_eta, partition_gradient_bound, positivity_scan,
/// region_estimates, supersolution.
///
/// Checks run concurrently on up to `jobs` threads; results do not depend on
/// the worker count. Per-sample records of the helium checks are appended to
/// `records` when given. Failures inside a check are rethrown prefixed with
/// the check name.
std::vector<VerificationReport> run_scenario(const ScenarioConfig& config, int jobs = 1,
                                             std::vector<helium::SampleRecord>* records = nullptr);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace thresh::cli
