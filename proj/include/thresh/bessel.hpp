#pragma once

namespace thresh {

/// Modified Bessel functions of the second kind, orders 0 and 1.
///
/// Power series with the logarithmic term for z <= 2, Steed's continued
/// fraction above. Relative accuracy ~1e-14 on (0, 700].
double bessel_k0(double z);
double bessel_k1(double z);

/// e^z K_nu(z); never underflows.
double bessel_k0_scaled(double z);
double bessel_k1_scaled(double z);

struct BesselValue {
  double value;
  bool underflow;  ///< true when e^{-z} pushed the result below the normal range
};

/// K1 that reports, rather than silently returns, an underflowed zero.
BesselValue bessel_k1_checked(double z);

}  // namespace thresh
