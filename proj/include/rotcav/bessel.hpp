#pragma once

namespace rotcav {

/// Largest |x| accepted by the Bessel routines.
inline constexpr double bessel_max_argument = 1.0e4;

/// Bessel functions of the first kind, orders 0 and 1.
///
/// Ascending power series for |x| < 12.5 and the Hankel asymptotic expansion
/// beyond; absolute error near 1e-12 on the supported range. Plain double
/// arithmetic only, so results are reproducible wherever IEEE-754 holds.
/// Both throw std::domain_error for |x| > bessel_max_argument.
double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace rotcav
