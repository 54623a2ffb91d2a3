#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace thresh {

/// Uniform outcome of an inequality scan.
///
/// `pass` is always `worst_margin >= -tolerance`; the tolerance is echoed in
/// `params_echo["tolerance"]`.
struct VerificationReport {
  std::string check_name;
  std::map<std::string, double> params_echo;
  std::size_t samples = 0;
  double worst_margin = 0.0;
  std::optional<double> onset_radius;
  bool pass = false;
  std::size_t excluded_points = 0;
  std::string notes;

  void set_tolerance(double tol) { params_echo["tolerance"] = tol; }
  double tolerance() const {
    auto it = params_echo.find("tolerance");
    return it == params_echo.end() ? 0.0 : it->second;
  }
  void finalize() { pass = worst_margin >= -tolerance(); }

  bool operator==(const VerificationReport&) const = default;
};

}  // namespace thresh
