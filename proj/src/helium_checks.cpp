#include "thresh/helium/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thresh/errors.hpp"
#include "thresh/helium/comparison.hpp"
#include "thresh/helium/cutoffs.hpp"
#include "thresh/helium/finite_difference.hpp"
#include "thresh/helium/sampling.hpp"
#include "thresh/parallel.hpp"

namespace thresh::helium {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double relative_margin(double lhs, double rhs) {
  return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// Region margins at one point; +inf for a region that does not apply.
struct RegionMargins {
  double inside = kInf;
  double outside = kInf;
};

RegionMargins region_margins(const HeliumPoint<double>& pt, double U, double delta) {
  const double V = helium_potential(pt, U);
  const double xi = pt.x_inf(), x0 = pt.x0();
  RegionMargins m;
  if (x0 >= delta * xi) m.inside = relative_margin(V, (U / 2.0 - (1.0 + delta) / delta) / xi);
  if (x0 <= delta * xi)
    m.outside = relative_margin(V, -1.0 / x0 + (U - 1.0 - delta) / ((1.0 + delta) * xi));
  return m;
}

double min_of(const std::vector<double>& v) {
  double out = kInf;
  for (double x : v) out = std::min(out, x);
  return out;
}

}  // namespace

VerificationReport check_region_estimates(const HeliumPoint<double>& pt, double U, double delta) {
  return check_region_estimates(Samples{pt}, U, delta);
}

VerificationReport check_region_estimates(const Samples& samples, double U, double delta,
                                          int jobs, std::vector<SampleRecord>* records) {
  std::vector<RegionMargins> margins(samples.size());
  parallel_for(samples.size(), jobs,
               [&](std::size_t i) { margins[i] = region_margins(samples[i], U, delta); });

  VerificationReport rep;
  rep.check_name = "region_estimates";
  rep.params_echo = {{"U", U}, {"delta", delta}};
  rep.set_tolerance(1e-12);
  double worst = kInf;
  std::size_t inside = 0, outside = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& m = margins[i];
    if (std::isfinite(m.inside)) ++inside;
    if (std::isfinite(m.outside)) ++outside;
    worst = std::min({worst, m.inside, m.outside});
    if (records) {
      const auto& p = samples[i];
      if (std::isfinite(m.inside)) records->push_back({p.r1, p.r2, p.cos_theta, "region_inside", m.inside});
      if (std::isfinite(m.outside)) records->push_back({p.r1, p.r2, p.cos_theta, "region_outside", m.outside});
    }
  }
  rep.params_echo["inside_samples"] = static_cast<double>(inside);
  rep.params_echo["outside_samples"] = static_cast<double>(outside);
  rep.samples = samples.size();
  rep.worst_margin = worst;
  rep.notes =
      "lemma statement verified; the displayed intermediate step of its proof "
      "(-(1/delta)/x_inf) does not match the stated constant U/2 - (1 + delta)/delta";
  rep.finalize();
  return rep;
}

VerificationReport grad_bound_f_eta(const Samples& samples, const HeliumParams& P, double onset,
                                    int jobs, std::vector<SampleRecord>* records) {
  P.validate();
  const double c1 = P.c1(), c2 = P.c2();
  struct Result {
    bool used = false;
    bool banded = false;
    double margin = kInf;
    double ratio = 0.0;
  };
  std::vector<Result> res(samples.size());
  auto f = [&P](const Vector6<double>& y) { return f_eta(from_cartesian(y), P); };
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const auto& p = samples[i];
    const double xi = p.x_inf();
    if (xi < onset) return;
    Result r;
    r.used = true;
    r.banded = std::abs(p.r1 - p.r2) < 1e-6 * xi;
    const double g = gradient_fd(f, embed(p), 1e-7 * xi).norm();
    const double bound = (p.x0() >= P.delta * xi ? c1 : 0.0) + c2 / std::sqrt(xi);
    r.margin = bound > 0.0 ? (bound - g) / bound : -g;
    r.ratio = bound > 0.0 ? g / bound : (g > 0.0 ? kInf : 0.0);
    res[i] = r;
  });

  VerificationReport rep;
  rep.check_name = "grad_bound_f_eta";
  rep.params_echo = {{"c1", c1},         {"c2", c2},       {"delta", P.delta},
                     {"pitchfork", P.pitchfork}, {"eta", P.eta}, {"C_w", P.C_w},
                     {"D_w", P.D_w},     {"onset", onset}};
  rep.set_tolerance(1e-6);
  double worst = kInf, worst_ratio = 0.0;
  std::size_t used = 0, excluded = 0, band_violations = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& r = res[i];
    if (!r.used) continue;
    ++used;
    if (records)
      records->push_back({samples[i].r1, samples[i].r2, samples[i].cos_theta, "grad_f_eta", r.margin});
    if (r.banded) {
      ++excluded;
      if (r.margin < -rep.tolerance()) ++band_violations;
      continue;
    }
    worst = std::min(worst, r.margin);
    worst_ratio = std::max(worst_ratio, r.ratio);
  }
  rep.params_echo["worst_ratio"] = worst_ratio;
  rep.params_echo["band_violations"] = static_cast<double>(band_violations);
  rep.samples = used;
  rep.excluded_points = excluded;
  rep.worst_margin = used > excluded ? worst : 0.0;
  rep.notes = "margin (bound - |grad F_eta|)/bound outside the |r1 - r2| < 1e-6 x_inf band";
  rep.finalize();
  return rep;
}

VerificationReport partition_gradient_bound(const Samples& samples, double delta, int jobs,
                                            std::vector<SampleRecord>* records) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("partition requires delta in (0, 1)");
  struct Result {
    double norm_error, denominator, scaled_gradient;
  };
  std::vector<Result> res(samples.size());
  auto sigma = [delta](const Vector6<double>& y) { return partition_sigma(from_cartesian(y), delta).first; };
  auto sigma_perp = [delta](const Vector6<double>& y) {
    return partition_sigma(from_cartesian(y), delta).second;
  };
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const auto& p = samples[i];
    const auto [s, sp] = partition_sigma(p, delta);
    const Vector6<double> x = embed(p);
    const double h = 1e-7 * p.x_inf();
    const double g = gradient_fd(sigma, x, h).squaredNorm() + gradient_fd(sigma_perp, x, h).squaredNorm();
    res[i] = {std::abs(s * s + sp * sp - 1.0), partition_denominator(p, delta),
              g * p.x_inf() * p.x_inf()};
  });

  const double L = partition_constant(delta);
  double max_norm = 0.0, min_den = kInf, sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    max_norm = std::max(max_norm, res[i].norm_error);
    min_den = std::min(min_den, res[i].denominator);
    sup = std::max(sup, res[i].scaled_gradient);
    if (records)
      records->push_back({samples[i].r1, samples[i].r2, samples[i].cos_theta,
                          "partition_scaled_gradient", (L - res[i].scaled_gradient) / L});
  }

  VerificationReport rep;
  rep.check_name = "partition_gradient_bound";
  rep.params_echo = {{"delta", delta},
                     {"analytic_L", L},
                     {"empirical_L", sup},
                     {"empirical_over_analytic", sup / L},
                     {"max_normalization_error", max_norm},
                     {"min_denominator", min_den}};
  rep.set_tolerance(0.0);
  rep.samples = samples.size();
  rep.worst_margin = std::min({(L - sup) / L, (sup - 0.5 * L) / L, 1.0 - max_norm / 1e-12,
                               min_den - 0.5});
  if (!std::isfinite(sup)) rep.worst_margin = -kInf;
  rep.notes =
      "margin min((L - sup)/L, (sup - L/2)/L, 1 - normalization error/1e-12, min denominator - 1/2)";
  rep.finalize();
  return rep;
}

namespace {

struct PositivityTerms {
  double a1_const, a1_inv;  // A1 = a1_const + a1_inv / x
  double a2_inv;            // A2 = a2_inv / x
  double L;                 // A3 = A2 - L / x^2
};

double positivity_margin(const PositivityTerms& t, int region, double x) {
  switch (region) {
    case 0: return t.a1_const * x + t.a1_inv;
    case 1: return t.a2_inv;
    default: return t.a2_inv - t.L / x;
  }
}

Samples region_samples(int region, double delta, std::size_t n, std::uint64_t seed, double lo,
                       double hi) {
  switch (region) {
    case 0: return sample_shells(n, seed, lo, hi, delta, 1.0);
    case 1: return sample_shells(n, seed, lo, hi, 0.0, 0.5 * delta);
    default: return sample_shells(n, seed, lo, hi, 0.5 * delta, delta);
  }
}

}  // namespace

VerificationReport positivity_scan(const HeliumParams& P, double c1, double c2, double x_lo,
                                   double x_hi, std::size_t n_per_region, std::uint64_t seed,
                                   int jobs) {
  P.validate();
  if (!(x_lo > 0.0) || !(x_hi > x_lo)) throw DomainError("positivity scan needs 0 < x_lo < x_hi");
  const double U = P.U, d = P.delta;
  const PositivityTerms t{0.25 - 4.0 * c1 * c1, (d * U - 4.0 - 2.0 * d) / (2.0 * d) - 4.0 * c2 * c2,
                          (U - 1.0 - d) / (1.0 + d) - 2.0 * c2 * c2, partition_constant(d)};

  // Scan: every region, every sample. Each region's onset is its smallest
  // passing sample above its last failure; R* is the largest of these.
  double onset = x_lo;
  for (int region = 0; region < 3; ++region) {
    const Samples s = region_samples(region, d, n_per_region, seed + region, x_lo, x_hi);
    std::vector<double> xs(s.size()), margins(s.size());
    parallel_for(s.size(), jobs, [&](std::size_t i) {
      xs[i] = s[i].x_inf();
      margins[i] = positivity_margin(t, region, xs[i]);
    });
    double last_fail = -kInf;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (margins[i] < 0.0) last_fail = std::max(last_fail, xs[i]);
    if (last_fail == -kInf) continue;
    double first_pass = kInf;
    for (double x : xs)
      if (x > last_fail) first_pass = std::min(first_pass, x);
    if (first_pass == kInf) {
      std::string why = "region " + std::to_string(region + 1) +
                        " expression still negative at x_inf = " + std::to_string(last_fail);
      if (U - 1.0 - d <= 0.0) why = "inadmissible coupling: U - 1 - delta <= 0; " + why;
      throw ParameterError(why);
    }
    onset = std::max(onset, first_pass);
  }

  VerificationReport rep;
  rep.check_name = "positivity_scan";
  rep.params_echo = {{"U", U},   {"delta", d},       {"c1", c1},   {"c2", c2},
                     {"L", t.L}, {"x_lo", x_lo},     {"x_hi", x_hi},
                     {"n_per_region", static_cast<double>(n_per_region)}};
  rep.set_tolerance(0.0);
  rep.onset_radius = onset;

  double worst = kInf;
  std::size_t count = 0;
  for (int region = 0; region < 3; ++region) {
    const Samples s = region_samples(region, d, n_per_region, seed + 100 + region, onset, x_hi);
    std::vector<double> m(s.size());
    parallel_for(s.size(), jobs, [&](std::size_t i) { m[i] = positivity_margin(t, region, s[i].x_inf()); });
    const double w = min_of(m);
    rep.params_echo["worst_margin_region_" + std::to_string(region + 1)] = w;
    worst = std::min(worst, w);
    count += s.size();
  }
  rep.samples = count;
  rep.worst_margin = worst;
  rep.notes = "margins A_j x_inf on fresh samples beyond the onset radius";
  rep.finalize();
  return rep;
}

VerificationReport positivity_scan(const HeliumParams& P, double x_lo, double x_hi,
                                   std::size_t n_per_region, std::uint64_t seed, int jobs) {
  return positivity_scan(P, P.c1(), P.c2(), x_lo, x_hi, n_per_region, seed, jobs);
}

bool in_nonsmooth_band(const HeliumPoint<double>& pt, const HeliumParams& P, double h) {
  const double band = 4.0 * h;
  const double m = P.m;
  return std::abs(pt.r1 - pt.r2) < std::max(1e-6 * pt.x_inf(), band) ||
         std::abs(pt.r12 - m) < band || std::abs(pt.r12 - 3.0 * m) < band || pt.r12 < band;
}

Samples sample_supersolution_points(std::size_t n, std::uint64_t seed, const HeliumParams& P,
                                    double x_hi, double h) {
  if (!(x_hi > P.R)) throw DomainError("supersolution sampling needs x_hi > R");
  SampleStream s(seed);
  Samples out;
  out.reserve(n);
  std::size_t k = 0;
  while (out.size() < n) {
    const double far = s.uniform(P.R, x_hi);
    HeliumPoint<double> p{};
    if (k++ % 3 != 2) {
      const double near = s.uniform(0.0, far);
      const double c = s.cosine();
      p = s.coin() ? make_point(far, near, c) : make_point(near, far, c);
    } else {
      // Second electron at distance rho from the first, direction angle alpha.
      const double rho = s.uniform(0.0, 4.0 * P.m);
      const double ca = s.cosine();
      const double r2 = std::sqrt(far * far + rho * rho + 2.0 * far * rho * ca);
      if (!(r2 > 0.0)) continue;
      const double c = std::clamp((far + rho * ca) / r2, -1.0, 1.0);
      p = make_point(far, r2, c);
    }
    if (p.x_inf() <= P.R || in_nonsmooth_band(p, P, h)) continue;
    out.push_back(p);
  }
  return out;
}

VerificationReport check_supersolution(const Samples& samples, const HeliumParams& P, double h,
                                       int jobs, std::vector<SampleRecord>* records) {
  P.validate();
  struct Result {
    double bracket;
    double fd_error;  // NaN when excluded
  };
  std::vector<Result> res(samples.size());
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const auto& p = samples[i];
    if (!(p.x_inf() > P.R)) throw DomainError("supersolution sample with x_inf <= R");
    const Vector6<double> x = embed(p);
    const double b = supersolution_bracket(x, P);
    double err = std::numeric_limits<double>::quiet_NaN();
    if (!in_nonsmooth_band(p, P, h)) {
      // Truncation error grows like (h / distance)^2 near the nucleus and the
      // electron-electron cusp, so the step shrinks with those distances.
      const double h_eff = h * std::min({1.0, p.x0(), p.r12});
      const double b_fd = supersolution_bracket_fd(x, P, h_eff);
      err = std::abs(b_fd - b) / std::max(std::abs(b), 1.0);
    }
    res[i] = {b, err};
  });

  double max_bracket = -kInf, max_err = 0.0;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    max_bracket = std::max(max_bracket, res[i].bracket);
    if (std::isnan(res[i].fd_error))
      ++excluded;
    else
      max_err = std::max(max_err, res[i].fd_error);
    if (records)
      records->push_back({samples[i].r1, samples[i].r2, samples[i].cos_theta,
                          "supersolution_bracket", -res[i].bracket});
  }
  const ClosingBounds cb = closing_bounds(P);
  const double max_closing = std::max({cb.far, cb.near_sup, cb.middle});
  const double agreement_tol = 1e-6;

  VerificationReport rep;
  rep.check_name = "supersolution";
  rep.params_echo = {{"U", P.U},
                     {"m", P.m},
                     {"C_low", P.C_low},
                     {"R", P.R},
                     {"eps_low", P.eps_low},
                     {"h", h},
                     {"max_bracket", max_bracket},
                     {"max_fd_relative_error", max_err},
                     {"closing_bound_far", cb.far},
                     {"closing_bound_near_sup", cb.near_sup},
                     {"closing_bound_middle", cb.middle}};
  rep.set_tolerance(0.0);
  rep.samples = samples.size();
  rep.excluded_points = excluded;
  rep.worst_margin = std::min({-max_bracket, agreement_tol - max_err, -max_closing});
  rep.notes =
      "margin min(-max (-Delta+W1)phi/phi, 1e-6 - max analytic/FD disagreement, -max closing bound)";
  rep.finalize();
  return rep;
}

}  // namespace thresh::helium
