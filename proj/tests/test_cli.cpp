#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "thresh/cli/config.hpp"
#include "thresh/cli/report_io.hpp"
#include "thresh/cli/scenario.hpp"

using namespace thresh;
using namespace thresh::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json one_particle_json() {
  return json::parse(R"({
    "scenario": "one_particle",
    "potential": {"well_depth": 1.0, "well_radius": 1.0, "tail": {"kind": "coulomb_like", "params": {"C": 0.25}}}
  })");
}

json helium_json(double U = 1.1, std::uint64_t seed = 5) {
  json j = json::parse(R"({"scenario": "helium", "helium_params": {"delta": 0.05, "C_low": 2.5},
                           "sampling": {"count": 2000}})");
  j["helium_params"]["U"] = U;
  j["sampling"]["seed"] = seed;
  return j;
}

std::string config_error_path(const json& j) {
  try {
    parse_config(j).validate();
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("thresh_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

int run(const std::string& args) {
  const int status = std::system((std::string(THRESH_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  CHECK(config_error_path(json::object()) == "config.scenario");
  CHECK(config_error_path(json{{"scenario", "three_body"}}) == "config.scenario");
  CHECK(config_error_path(json{{"scenario", "one_particle"}}) == "config.potential");
  json j = one_particle_json();
  j["potential"]["tail"]["params"]["C"] = 1.5;
  CHECK(config_error_path(j) == "config.potential");
  j = one_particle_json();
  j["potential"]["colour"] = 1;
  CHECK(config_error_path(j).rfind("config.potential", 0) == 0);
  j = one_particle_json();
  j["search"] = {{"depth_lo", 4.0}, {"depth_hi", 3.0}};
  CHECK(config_error_path(j) == "config.search");
  j = helium_json();
  j["sampling"].erase("seed");
  CHECK(config_error_path(j) == "config.sampling.seed");
  j = helium_json();
  j["helium_params"]["delta"] = 2.0;
  CHECK(config_error_path(j) == "config.helium_params");
  CHECK(config_error_path(one_particle_json()).empty());
  CHECK(config_error_path(helium_json()).empty());
}

TEST_CASE("one-particle suite: five passing reports") {
  const auto reports = run_scenario(parse_config(one_particle_json()), 2);
  REQUIRE(reports.size() == 5);
  const char* names[] = {"critical_depth", "decay_fit", "sandwich", "upper_condition", "weighted_norm"};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(reports[i].check_name == names[i]);
    CHECK(reports[i].pass);
    CHECK(reports[i].params_echo.count("tolerance") == 1);
    CHECK(reports[i].pass == (reports[i].worst_margin >= -reports[i].tolerance()));
  }
}

TEST_CASE("helium suite: sorted reports and inadmissible coupling") {
  const auto ok = run_scenario(parse_config(helium_json()), 2);
  REQUIRE(ok.size() == 5);
  for (std::size_t i = 1; i < ok.size(); ++i) CHECK(ok[i - 1].check_name < ok[i].check_name);
  for (const auto& r : ok) CHECK(r.pass);

  const auto bad = run_scenario(parse_config(helium_json(1.0)), 2);
  const auto it = std::find_if(bad.begin(), bad.end(), [](const auto& r) { return r.check_name == "positivity_scan"; });
  REQUIRE(it != bad.end());
  CHECK_FALSE(it->pass);
  CHECK(it->notes.find("inadmissible coupling") != std::string::npos);
  CHECK_FALSE(all_pass(bad));
}

TEST_CASE("property: reports do not depend on the worker count") {
  const ScenarioConfig c = parse_config(helium_json());
  std::vector<helium::SampleRecord> r1, r4;
  const auto a = run_scenario(c, 1, &r1);
  const auto b = run_scenario(c, 4, &r4);
  CHECK(a == b);
  REQUIRE(r1.size() == r4.size());
  CHECK(!r1.empty());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].r1 == r4[i].r1);
    CHECK(r1[i].margin == r4[i].margin);
  }
  CHECK(report_document(a)["reports"].dump() == report_document(b)["reports"].dump());
  CHECK(run_scenario(parse_config(helium_json(1.1, 6)), 2) != a);
}

TEST_CASE("JSON round trip, including non-finite values") {
  VerificationReport r;
  r.check_name = "x";
  r.params_echo = {{"a", 1.0 / 3.0}, {"inf", INFINITY}, {"tolerance", 1e-12}};
  r.samples = 7;
  r.worst_margin = -INFINITY;
  r.onset_radius = 12.5;
  r.excluded_points = 3;
  r.notes = "note";
  r.finalize();
  VerificationReport s = r;
  s.check_name = "y";
  s.onset_radius.reset();
  s.worst_margin = 0.1;
  s.finalize();
  const std::vector<VerificationReport> in{r, s};
  std::ostringstream os;
  write_reports(os, in, OutputFormat::json);
  CHECK(parse_reports(os.str()) == in);
  CHECK(parse_reports(report_document(in)["reports"].dump()) == in);

  VerificationReport n = r;
  n.worst_margin = NAN;
  const auto back = report_from_json(to_json(n));
  CHECK(std::isnan(back.worst_margin));
}

TEST_CASE("CSV column order") {
  VerificationReport r;
  r.check_name = "c";
  r.samples = 2;
  r.worst_margin = 0.5;
  r.onset_radius = 3.0;
  r.pass = true;
  std::ostringstream os;
  write_reports(os, {r}, OutputFormat::csv);
  CHECK(os.str() == "check_name,samples,worst_margin,onset_radius,pass\nc,2,0.5,3,true\n");

  std::ostringstream samples;
  write_sample_csv(samples, {{1.0, 2.0, 0.5, "q", -0.25}});
  CHECK(samples.str() == "r1,r2,cos_theta,quantity,margin\n1,2,0.5,q,-0.25\n");
}

TEST_CASE("emit_report surfaces the path on I/O failure") {
  try {
    emit_report({}, OutputFormat::json, "/nonexistent-dir/out.json");
    FAIL("expected failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.json") != std::string::npos);
  }
}

TEST_CASE("command line") {
  const fs::path d = temp_dir();
  const std::string cfg_dir = THRESH_CONFIG_DIR;
  const std::string he = (d / "he.json").string();
  {
    std::ofstream f(he);
    f << helium_json().dump();
  }
  CHECK(run("verify-helium --config " + he + " --out " + (d / "a.json").string() + " --jobs 2") == 0);
  CHECK(run("verify-helium --config " + he + " --out " + (d / "b.json").string() + " --jobs 3 --samples " +
            (d / "s.csv").string()) == 0);
  CHECK(json::parse(slurp(d / "a.json"))["reports"] == json::parse(slurp(d / "b.json"))["reports"]);
  CHECK(slurp(d / "s.csv").rfind("r1,r2,cos_theta,quantity,margin\n", 0) == 0);

  CHECK(run("verify-helium --config " + he + " --seed 9 --format csv --out " + (d / "c.csv").string()) == 0);
  CHECK(slurp(d / "c.csv").rfind("check_name,samples,worst_margin,onset_radius,pass\n", 0) == 0);

  CHECK(run("report " + (d / "a.json").string() + " --format csv --out " + (d / "r.csv").string()) == 0);
  CHECK(slurp(d / "r.csv").find("positivity_scan") != std::string::npos);

  // Wrong scenario for the subcommand, missing file, bad config.
  CHECK(run("verify-1p --config " + he) == 2);
  CHECK(run("verify-helium --config " + (d / "missing.json").string()) != 0);
  {
    std::ofstream f(d / "empty.json");
    f << "{}";
  }
  CHECK(run("verify-helium --config " + (d / "empty.json").string()) == 2);

  // Failing check: exit code 1.
  {
    std::ofstream f(d / "u1.json");
    f << helium_json(1.0).dump();
  }
  CHECK(run("verify-helium --config " + (d / "u1.json").string() + " --out " + (d / "u1_out.json").string()) == 1);

  CHECK(run("verify-1p --config " + cfg_dir + "/one_particle.json --out " + (d / "op.json").string()) == 0);
  CHECK(run("solve --config " + cfg_dir + "/one_particle.json --out " + (d / "sol.csv").string()) == 0);
  CHECK(slurp(d / "sol.csv").rfind("r,u,psi\n", 0) == 0);

  fs::remove_all(d);
}
