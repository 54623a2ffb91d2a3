#include "thresh/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "thresh/errors.hpp"

namespace thresh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_tail(const Tail& tail) {
  std::visit(overloaded{
                 [](const CoulombTail& t) {
                   if (!(t.C > 0.0 && t.C < 1.0))
                     throw DomainError("coulomb_like tail requires 0 < C < 1");
                 },
                 [](const PowerTail& t) {
                   if (!(t.a > 0.0) || !std::isfinite(t.p))
                     throw DomainError("power tail requires a > 0 and finite p");
                 },
                 [](const CustomTail& t) {
                   if (!t.U) throw DomainError("custom tail requires a callable");
                 },
                 [](const NoTail&) {},
             },
             tail);
}

}  // namespace

RadialPotential::RadialPotential(double well_depth, double well_radius, Tail tail, int dimension)
    : depth_(well_depth), radius_(well_radius), tail_(std::move(tail)), dim_(dimension) {
  if (!(well_depth >= 0.0) || !std::isfinite(well_depth))
    throw DomainError("well_depth must be finite and nonnegative");
  if (!(well_radius > 0.0) || !std::isfinite(well_radius))
    throw DomainError("well_radius must be positive");
  if (dimension < 1) throw DomainError("dimension must be positive");
  validate_tail(tail_);
}

RadialPotential RadialPotential::with_depth(double depth) const {
  return RadialPotential(depth, radius_, tail_, dim_);
}

double RadialPotential::coulomb_C() const {
  if (const auto* t = std::get_if<CoulombTail>(&tail_)) return t->C;
  throw DomainError("potential tail is not coulomb_like");
}

double RadialPotential::origin_limit() const {
  return std::visit(
      overloaded{
          [](const CoulombTail& t) { return t.C; },
          [](const PowerTail& t) -> double {
            if (t.p > -1.0) return 0.0;
            if (t.p == -1.0) return t.a;
            throw DomainError("power tail with p < -1 has no regular s-wave solution at the origin");
          },
          [](const CustomTail& t) {
            const double r = 1e-12;
            return r * t.U(r);
          },
          [](const NoTail&) { return 0.0; },
      },
      tail_);
}

std::string RadialPotential::describe() const {
  std::ostringstream os;
  os << "depth=" << depth_ << " R=" << radius_ << " tail=";
  std::visit(overloaded{
                 [&](const CoulombTail& t) { os << "coulomb_like(C=" << t.C << ")"; },
                 [&](const PowerTail& t) { os << "power(a=" << t.a << ",p=" << t.p << ")"; },
                 [&](const CustomTail&) { os << "custom"; },
                 [&](const NoTail&) { os << "none"; },
             },
             tail_);
  return os.str();
}

double eval_attractive(const RadialPotential& p, double r) {
  if (!(r >= 0.0)) throw DomainError("eval_attractive requires r >= 0");
  return r <= p.well_radius() ? p.well_depth() : 0.0;
}

double eval_repulsive(const RadialPotential& p, double r) {
  return std::visit(
      overloaded{
          [r](const CoulombTail& t) {
            if (!(r > 0.0)) throw DomainError("coulomb_like tail is singular at r = 0");
            return t.C / r;
          },
          [r](const PowerTail& t) {
            if (!(r > 0.0)) throw DomainError("power tail evaluated at r <= 0");
            return t.a * std::pow(r, t.p);
          },
          [r](const CustomTail& t) { return t.U(r); },
          [](const NoTail&) { return 0.0; },
      },
      p.tail());
}

double eval_repulsive_derivative(const RadialPotential& p, double r) {
  return std::visit(overloaded{
                        [r](const CoulombTail& t) { return -t.C / (r * r); },
                        [r](const PowerTail& t) { return t.a * t.p * std::pow(r, t.p - 1.0); },
                        [r](const CustomTail& t) {
                          const double h = 1e-5 * r;
                          return (t.U(r + h) - t.U(r - h)) / (2.0 * h);
                        },
                        [](const NoTail&) { return 0.0; },
                    },
                    p.tail());
}

}  // namespace thresh
