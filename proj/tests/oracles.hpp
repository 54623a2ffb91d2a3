#pragma once

// Reference computations that share no code with the library.

#include <Eigen/Dense>
#include <cmath>
#include <functional>

namespace oracle {

/// K1(z) from the integral of e^{-z cosh t} cosh t over [0, inf). The
/// integrand is analytic in a strip around the real axis, so the plain
/// trapezoid converges geometrically in 1/h.
inline double bessel_k1_integral(double z, double h = 0.02) {
  const double t_max = std::acosh(std::max(750.0 / z, 2.0));
  const int n = static_cast<int>(std::ceil(t_max / h));
  double acc = 0.5;  // t = 0: e^{-z (cosh 0 - 1)} cosh 0 / 2
  for (int i = 1; i <= n; ++i) {
    const double t = i * h;
    acc += std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(t);
  }
  return acc * h * std::exp(-z);
}

/// Second-order centered Laplacian of x -> f(|x|) at a point of R^dim.
template <int Dim>
double cartesian_laplacian(const std::function<double(double)>& f,
                           const Eigen::Matrix<double, Dim, 1>& x, double h) {
  const double f0 = f(x.norm());
  double acc = 0.0;
  for (int k = 0; k < Dim; ++k) {
    Eigen::Matrix<double, Dim, 1> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    acc += (f(xp.norm()) - 2.0 * f0 + f(xm.norm())) / (h * h);
  }
  return acc;
}

/// Without a tail, E = 0 sits at the bottom of the spectrum of
/// -u'' - depth u on [0, R] with u(0) = 0 and u'(R) = 0 (the exterior zero-energy
/// solution is u = const). The critical depth is therefore the lowest
/// Dirichlet-Neumann eigenvalue of -d^2/dr^2 on [0, R], computed here by a
/// dense finite-difference eigensolve.
inline double tailless_critical_depth(double R, int n = 800) {
  const double h = R / n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 2.0 / (h * h);
    if (i > 0) A(i, i - 1) = -1.0 / (h * h);
    if (i + 1 < n) A(i, i + 1) = -1.0 / (h * h);
  }
  // Ghost node u_{n+1} = u_{n-1} for the Neumann end, symmetrized by halving the last row.
  A(n - 1, n - 2) = -2.0 / (h * h);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  w[n - 1] = 0.5;
  const Eigen::VectorXd s = w.cwiseSqrt();
  const Eigen::MatrixXd S = s.asDiagonal() * A * s.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace oracle
