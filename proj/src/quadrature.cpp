#include "rotcav/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace rotcav {

namespace {

// P_n(x) and its derivative by the three-term recurrence
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

SphereQuadrature build_quadrature(int degree) {
  if (degree < 6 || degree > 50)
    throw std::invalid_argument("sphere quadrature degree must lie in [6, 50]");
  const GaussLegendre gl = gauss_legendre(degree);
  const int n_phi = 2 * degree;
  SphereQuadrature q;
  q.degree = degree;
  q.nodes.reserve(static_cast<std::size_t>(degree) * n_phi);
  for (int i = 0; i < degree; ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt((1.0 - ct) * (1.0 + ct));
    const double w = 0.5 * gl.weights[i] / n_phi;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = two_pi * j / n_phi;
      const double cp = std::cos(phi), sp = std::sin(phi);
      q.nodes.emplace_back(st * cp, st * sp, ct);
      q.theta_hat.emplace_back(ct * cp, ct * sp, -st);
      q.phi_hat.emplace_back(-sp, cp, 0.0);
      q.weights.push_back(w);
    }
  }
  return q;
}

const SphereQuadrature& cached_quadrature(int degree) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<SphereQuadrature>, 51> tables;
  if (degree < 6 || degree > 50)
    throw std::invalid_argument("sphere quadrature degree must lie in [6, 50]");
  std::lock_guard lock(mutex);
  auto& slot = tables[static_cast<std::size_t>(degree)];
  if (!slot) slot = std::make_unique<SphereQuadrature>(build_quadrature(degree));
  return *slot;
}

}  // namespace rotcav
