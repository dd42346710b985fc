#include "rotcav/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "rotcav/constants.hpp"

namespace rotcav {
namespace {

constexpr double series_limit = 12.5;

void check_range(double x) {
  if (!(std::abs(x) <= bessel_max_argument))
    throw std::domain_error("Bessel argument outside [-1e4, 1e4]");
}

// sum_k (-1)^k (x/2)^(2k+order) / (k! (k+order)!)
double ascending_series(int order, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = order == 0 ? 1.0 : half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

// Hankel expansion J_n(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)], x > 0.
double hankel_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double previous = INFINITY;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > previous) break;  // series starts to diverge
    previous = std::abs(term);
    // k odd contributes to Q, k even to P, with alternating signs per pair
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (previous < 1e-17) break;
  }
  const double chi = x - (0.5 * order + 0.25) * pi;
  return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel(int order, double x) {
  check_range(x);
  const double ax = std::abs(x);
  const double value = ax < series_limit ? ascending_series(order, ax) : hankel_asymptotic(order, ax);
  return (order % 2 == 1 && x < 0.0) ? -value : value;
}

}  // namespace

double bessel_j0(double x) { return bessel(0, x); }

double bessel_j1(double x) { return bessel(1, x); }

}  // namespace rotcav
