#pragma once

#include <functional>
#include <string>
#include <variant>

namespace thresh {

/// U(r) = C / r.
struct CoulombTail {
  double C;
};

/// U(r) = a * r^p.
struct PowerTail {
  double a;
  double p;
};

/// User supplied U(r) > 0.
struct CustomTail {
  std::function<double(double)> U;
};

/// U(r) = 0. Degenerate tail used for threshold-of-a-bare-well checks.
struct NoTail {};

using Tail = std::variant<CoulombTail, PowerTail, CustomTail, NoTail>;

/// One-particle radial potential -V + U with a square well
/// V = well_depth * 1[r <= R] and a repulsive tail U.
///
/// Immutable after construction.
class RadialPotential {
 public:
  RadialPotential(double well_depth, double well_radius, Tail tail, int dimension = 3);

  double well_depth() const noexcept { return depth_; }
  double well_radius() const noexcept { return radius_; }
  int dimension() const noexcept { return dim_; }
  const Tail& tail() const noexcept { return tail_; }

  /// Same tail and radius, different depth.
  RadialPotential with_depth(double depth) const;

  bool is_coulomb() const noexcept { return std::holds_alternative<CoulombTail>(tail_); }
  bool has_tail() const noexcept { return !std::holds_alternative<NoTail>(tail_); }
  /// C of a Coulomb-like tail; throws if the tail is not Coulomb-like.
  double coulomb_C() const;

  /// lim_{r->0} r U(r). Used to seed the regular solution at the origin.
  double origin_limit() const;

  std::string describe() const;

 private:
  double depth_;
  double radius_;
  Tail tail_;
  int dim_;
};

/// V(r); the boundary r == R belongs to the well.
double eval_attractive(const RadialPotential& p, double r);

/// U(r) > 0 (zero for the `NoTail` degenerate case).
double eval_repulsive(const RadialPotential& p, double r);

/// dU/dr, analytic for Coulomb and power tails, central difference otherwise.
double eval_repulsive_derivative(const RadialPotential& p, double r);

}  // namespace thresh
