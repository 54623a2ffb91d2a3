#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "thresh/envelope.hpp"
#include "thresh/helium/params.hpp"
#include "thresh/potential.hpp"

namespace thresh::cli {

/// Invalid configuration; `path()` is the dotted location of the bad field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class ScenarioKind { one_particle, helium };
enum class OutputFormat { json, csv };

OutputFormat parse_format(const std::string& s);

struct PotentialSpec {
  double well_depth = 1.0;
  double well_radius = 1.0;
  int dimension = 3;
  std::string tail_kind = "coulomb_like";  ///< coulomb_like | power | none
  std::map<std::string, double> tail_params;

  RadialPotential build() const;
};

struct OneParticleSettings {
  double depth_lo = 3.0;
  double depth_hi = 4.0;
  double tol = 1e-10;
  double eps_upper = 0.1;  ///< F_up'^2 = (1 - eps_upper) U
  double eps_lower = 0.2;  ///< F_low = sqrt((4C + eps_lower) r)
  double eps_norm = 0.5;   ///< weight of the weighted-norm check
  double r_max = 20000.0;
  int steps = 40000;
  Window fit_window{100.0, 400.0};
  Window upper_calibration{50.0, 100.0};
  Window upper_validation{100.0, 1000.0};
  std::vector<double> norm_edges{100.0, 1000.0, 10000.0};
};

struct HeliumSettings {
  double positivity_lo = 1.0;
  double positivity_hi = 1e8;
  double supersolution_x_hi = 0.0;  ///< 0 selects 4 R
  double fd_step = 1e-4;
  double gradient_onset = 10.0;
};

struct SamplingSpec {
  std::size_t count = 10000;
  std::optional<std::uint64_t> seed;
  double x_lo = 1.0;
  double x_hi = 1e4;
};

struct OutputSpec {
  OutputFormat format = OutputFormat::json;
  std::string path;  ///< empty: standard output
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::one_particle;
  std::optional<PotentialSpec> potential;
  std::optional<helium::HeliumParams> helium_params;
  OneParticleSettings one_particle;
  HeliumSettings helium;
  SamplingSpec sampling;
  OutputSpec output;

  /// Cross-field invariants; throws ConfigError.
  void validate() const;
};

/// Parses without cross-field validation, so command-line overrides (seed)
/// can be applied first. Unknown keys are rejected.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

}  // namespace thresh::cli
