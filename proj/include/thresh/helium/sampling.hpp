#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "thresh/helium/geometry.hpp"

namespace thresh::helium {

/// Seeded stream of doubles with a fixed bit recipe ((x >> 11) * 2^-53), so
/// sample sets are identical across platforms and standard libraries.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (lo, hi].
  double uniform(double lo, double hi) { return hi - (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  double cosine() { return 2.0 * uniform() - 1.0; }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

enum class SamplingMode {
  uniform,  ///< r1, r2 uniform on (0, x_hi]
  measure,  ///< r1, r2 with density ~ r^2 (the R^6 volume weight r1^2 r2^2)
};

/// Reduced points in the box (0, x_hi]^2 x [-1, 1].
std::vector<HeliumPoint<double>> sample_box(std::size_t n, std::uint64_t seed, double x_hi,
                                            SamplingMode mode = SamplingMode::uniform);

/// Points with x_inf log-uniform on [x_lo, x_hi], x0 / x_inf uniform on
/// (ratio_lo, ratio_hi], a random outer electron and uniform cos theta.
std::vector<HeliumPoint<double>> sample_shells(std::size_t n, std::uint64_t seed, double x_lo,
                                               double x_hi, double ratio_lo, double ratio_hi);

}  // namespace thresh::helium
