#include "thresh/weights.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "thresh/errors.hpp"
#include "thresh/quadrature.hpp"

namespace thresh {

namespace {

std::vector<double> geometric_points(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("scan window must satisfy 0 < r_lo < r_hi");
  if (n < 2) throw DomainError("scan needs at least two points");
  std::vector<double> r(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  r.back() = hi;
  return r;
}

}  // namespace

WeightFunction power_law_weight(double K, double alpha) {
  WeightFunction F;
  F.value = [K, alpha](double r) { return K * std::pow(r, alpha); };
  F.d1 = [K, alpha](double r) { return K * alpha * std::pow(r, alpha - 1.0); };
  F.d2 = [K, alpha](double r) { return K * alpha * (alpha - 1.0) * std::pow(r, alpha - 2.0); };
  F.anchor = 0.0;
  return F;
}

WeightFunction weight_from_values(std::function<double(double)> value, double anchor) {
  WeightFunction F;
  F.value = value;
  F.d1 = [value](double r) {
    const double h = 1e-5 * std::max(std::abs(r), 1e-3);
    return (value(r + h) - value(r - h)) / (2.0 * h);
  };
  F.d2 = [value](double r) {
    const double h = 1e-4 * std::max(std::abs(r), 1e-3);
    return (value(r + h) - 2.0 * value(r) + value(r - h)) / (h * h);
  };
  F.anchor = anchor;
  return F;
}

WeightFunction build_upper_weight(const RadialPotential& p, double eps, double R) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("build_upper_weight requires eps in [0, 1)");
  if (!(R >= 0.0)) throw DomainError("build_upper_weight requires R >= 0");
  const double scale = std::sqrt(1.0 - eps);

  WeightFunction F;
  F.anchor = R;
  if (!p.has_tail()) {
    F.value = [](double) { return 0.0; };
    F.d1 = [](double) { return 0.0; };
    F.d2 = [](double) { return 0.0; };
    return F;
  }
  F.value = [p, scale, R](double r) {
    if (r <= R) return 0.0;
    auto integrand = [&](double w) {
      const double s = R + w * w;
      if (s <= 0.0) return 2.0 * scale * std::sqrt(p.origin_limit());
      return 2.0 * w * scale * std::sqrt(eval_repulsive(p, s));
    };
    return integrate_adaptive(integrand, 0.0, std::sqrt(r - R), 1e-10).value;
  };
  F.d1 = [p, scale](double r) { return scale * std::sqrt(eval_repulsive(p, r)); };
  F.d2 = [p, scale](double r) {
    const double U = eval_repulsive(p, r);
    if (U <= 0.0) return 0.0;
    return scale * eval_repulsive_derivative(p, r) / (2.0 * std::sqrt(U));
  };
  return F;
}

double radial_laplacian(const WeightFunction& F, double r, int dim) {
  if (!(r > 0.0)) throw DomainError("radial_laplacian requires r > 0");
  return F.d2(r) + (dim - 1) * F.d1(r) / r;
}

WeightFunction regularized_weight(const WeightFunction& F, double eps_reg) {
  if (!(eps_reg > 0.0)) throw DomainError("regularized_weight requires eps > 0");
  WeightFunction G;
  G.anchor = F.anchor;
  G.value = [F, eps_reg](double r) {
    const double f = F.value(r);
    return f / (1.0 + eps_reg * f);
  };
  G.d1 = [F, eps_reg](double r) {
    const double q = 1.0 / (1.0 + eps_reg * F.value(r));
    return F.d1(r) * q * q;
  };
  G.d2 = [F, eps_reg](double r) {
    const double q = 1.0 / (1.0 + eps_reg * F.value(r));
    const double f1 = F.d1(r);
    return F.d2(r) * q * q - 2.0 * eps_reg * f1 * f1 * q * q * q;
  };
  return G;
}

VerificationReport check_upper_condition(const WeightFunction& F, const RadialPotential& p,
                                         double r_lo, double r_hi, int n) {
  if (r_lo < p.well_radius()) throw DomainError("upper condition scan must start outside the well");
  constexpr double strict = 1e-14;
  VerificationReport rep;
  rep.check_name = "upper_condition";
  rep.params_echo = {{"r_lo", r_lo}, {"r_hi", r_hi}, {"n", n}};
  // Negative tolerance: a margin must strictly exceed 1e-14 to count.
  rep.set_tolerance(-strict);
  double worst = std::numeric_limits<double>::infinity();
  for (double r : geometric_points(r_lo, r_hi, n)) {
    const double U = eval_repulsive(p, r);
    const double g = F.d1(r);
    const double margin = U > 0.0 ? (U - g * g) / U : -g * g;
    worst = std::min(worst, margin);
  }
  rep.samples = static_cast<std::size_t>(n);
  rep.worst_margin = worst;
  rep.notes = "relative margin (U - F'^2)/U";
  rep.pass = worst > strict;
  return rep;
}

VerificationReport check_lower_condition(const WeightFunction& F, const RadialPotential& p,
                                         double r_lo, double r_hi, int n, int dim) {
  if (r_lo < p.well_radius()) throw DomainError("lower condition scan must start outside the well");
  VerificationReport rep;
  rep.check_name = "lower_condition";
  rep.params_echo = {{"r_lo", r_lo}, {"r_hi", r_hi}, {"n", n}, {"dim", dim}};
  rep.set_tolerance(0.0);
  const auto grid = geometric_points(r_lo, r_hi, n);
  std::vector<double> margin(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const double g = F.d1(r);
    margin[i] = g * g - radial_laplacian(F, r, dim) - eval_repulsive(p, r);
  }
  double worst = std::numeric_limits<double>::infinity();
  for (double m : margin) worst = std::min(worst, m);

  // Walk inward from the edge while the inequality holds.
  std::size_t first_ok = grid.size();
  while (first_ok > 0 && margin[first_ok - 1] >= 0.0) --first_ok;
  if (first_ok < grid.size()) {
    rep.onset_radius = grid[first_ok];
    double beyond = std::numeric_limits<double>::infinity();
    for (std::size_t i = first_ok; i < grid.size(); ++i) beyond = std::min(beyond, margin[i]);
    rep.params_echo["worst_margin_beyond_onset"] = beyond;
  }
  rep.samples = grid.size();
  rep.worst_margin = worst;
  rep.notes = "margin F'^2 - Laplacian F - U";
  rep.finalize();
  return rep;
}

VerificationReport check_lower_admissibility(const WeightFunction& F, double r_hi,
                                             double threshold) {
  if (!(r_hi > 1.0)) throw DomainError("admissibility proxy needs r_hi > 1");
  VerificationReport rep;
  rep.check_name = "lower_admissibility";
  rep.params_echo = {{"r_hi", r_hi}, {"threshold", threshold}};
  rep.set_tolerance(0.0);
  rep.samples = 1;
  rep.worst_margin = F.value(r_hi) / std::log(r_hi) - threshold;
  rep.notes = "F(r_hi)/log(r_hi) - threshold";
  rep.finalize();
  return rep;
}

double sqrt_weight_lower_onset(double K, double C) {
  const double gap = K * K - 4.0 * C;
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  const double root = 3.0 * K / gap;
  return root * root;
}

}  // namespace thresh
