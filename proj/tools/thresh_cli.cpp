#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "thresh/cli/config.hpp"
#include "thresh/cli/report_io.hpp"
#include "thresh/cli/scenario.hpp"

namespace {

using namespace thresh::cli;

// Exit codes: 0 all checks pass, 1 some check failed, 2 bad config or
// arguments, 3 runtime failure.
constexpr int kFailed = 1;
constexpr int kConfig = 2;
constexpr int kRuntime = 3;

struct Common {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* cfg = sub->add_option("--config", c.config, "scenario config (JSON)");
  if (needs_config) cfg->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output path (default: standard output)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", c.seed, "sampling seed override");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

ScenarioConfig load(const Common& c, ScenarioKind expected) {
  ScenarioConfig cfg = load_config(c.config);
  if (cfg.scenario != expected)
    throw ConfigError("config.scenario", expected == ScenarioKind::helium
                                             ? "verify-helium needs scenario helium"
                                             : "expected scenario one_particle");
  if (c.seed) cfg.sampling.seed = *c.seed;
  if (!c.format.empty()) cfg.output.format = parse_format(c.format);
  if (!c.out.empty()) cfg.output.path = c.out;
  cfg.validate();
  return cfg;
}

int verify(const Common& c, ScenarioKind kind, const std::string& samples_path) {
  const ScenarioConfig cfg = load(c, kind);
  std::vector<thresh::helium::SampleRecord> records;
  const auto reports = run_scenario(cfg, c.jobs, samples_path.empty() ? nullptr : &records);
  emit_report(reports, cfg.output.format, cfg.output.path);
  if (!samples_path.empty()) {
    std::ofstream f(samples_path);
    if (!f) throw std::runtime_error("cannot write " + samples_path);
    write_sample_csv(f, records);
  }
  for (const auto& r : reports)
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.check_name << " worst_margin=" << r.worst_margin
              << "\n";
  return all_pass(reports) ? 0 : kFailed;
}

int solve(const Common& c) {
  const ScenarioConfig cfg = load(c, ScenarioKind::one_particle);
  const SolveResult s = solve_one_particle(cfg);
  const auto& k = s.criticality;
  std::fprintf(stderr, "depth_star=%.15g bracket_width=%.3g iterations=%d diagnostic=%.3g\n",
               k.depth_star, k.bracket_width, k.iterations, k.diagnostic);
  if (cfg.output.path.empty())
    s.solution.write_csv(std::cout);
  else
    s.solution.write_csv(cfg.output.path);
  return 0;
}

int rerender(const Common& c, const std::string& input) {
  const auto reports = load_reports(input);
  emit_report(reports, c.format.empty() ? OutputFormat::json : parse_format(c.format), c.out);
  return all_pass(reports) ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold eigenfunction decay checks"};
  app.require_subcommand(1);

  Common solve_opts, one_opts, he_opts, report_opts;
  std::string samples_path, input;

  auto* s = app.add_subcommand("solve", "critical depth and solution CSV (r,u,psi)");
  add_common(s, solve_opts);
  auto* v1 = app.add_subcommand("verify-1p", "one-particle verification suite");
  add_common(v1, one_opts);
  auto* vh = app.add_subcommand("verify-helium", "helium verification suite");
  add_common(vh, he_opts);
  vh->add_option("--samples", samples_path, "write per-sample CSV (r1,r2,cos_theta,quantity,margin)");
  auto* rp = app.add_subcommand("report", "re-render saved reports");
  add_common(rp, report_opts, false);
  rp->add_option("input", input, "saved report JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return solve(solve_opts);
    if (v1->parsed()) return verify(one_opts, ScenarioKind::one_particle, "");
    if (vh->parsed()) return verify(he_opts, ScenarioKind::helium, samples_path);
    return rerender(report_opts, input);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
