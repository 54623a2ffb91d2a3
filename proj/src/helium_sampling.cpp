#include "thresh/helium/sampling.hpp"

#include "thresh/errors.hpp"

namespace thresh::helium {

std::vector<HeliumPoint<double>> sample_box(std::size_t n, std::uint64_t seed, double x_hi,
                                            SamplingMode mode) {
  if (!(x_hi > 0.0)) throw DomainError("sample_box requires x_hi > 0");
  SampleStream s(seed);
  std::vector<HeliumPoint<double>> out;
  out.reserve(n);
  auto radius = [&] {
    const double u = s.uniform(0.0, 1.0);
    return mode == SamplingMode::uniform ? x_hi * u : x_hi * std::cbrt(u);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = radius();
    const double r2 = radius();
    out.push_back(make_point(r1, r2, s.cosine()));
  }
  return out;
}

std::vector<HeliumPoint<double>> sample_shells(std::size_t n, std::uint64_t seed, double x_lo,
                                               double x_hi, double ratio_lo, double ratio_hi) {
  if (!(x_lo > 0.0) || !(x_hi >= x_lo)) throw DomainError("sample_shells requires 0 < x_lo <= x_hi");
  if (!(ratio_lo >= 0.0) || !(ratio_hi > ratio_lo) || ratio_hi > 1.0)
    throw DomainError("sample_shells requires 0 <= ratio_lo < ratio_hi <= 1");
  SampleStream s(seed);
  std::vector<HeliumPoint<double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x_inf = s.log_uniform(x_lo, x_hi);
    const double x0 = x_inf * s.uniform(ratio_lo, ratio_hi);
    const double c = s.cosine();
    out.push_back(s.coin() ? make_point(x_inf, x0, c) : make_point(x0, x_inf, c));
  }
  return out;
}

}  // namespace thresh::helium
