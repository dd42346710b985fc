#pragma once

#include <vector>

#include "rotcav/constants.hpp"

namespace rotcav {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

GaussLegendre gauss_legendre(int n);

/// Product rule for  integral over S^2 of g(n) d^2n / 4pi  ~=  sum_i w_i g(n_i).
///
/// `degree` Gauss-Legendre nodes in cos(theta) times 2*degree equispaced
/// azimuths; exact for spherical harmonics up to order 2*degree - 1. The
/// (theta-hat, phi-hat) polarization pair of every node is stored alongside.
struct SphereQuadrature {
  int degree = 0;
  std::vector<Vec3> nodes;
  std::vector<Vec3> theta_hat;
  std::vector<Vec3> phi_hat;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Throws std::invalid_argument unless 6 <= degree <= 50.
SphereQuadrature build_quadrature(int degree);

/// Shared read-only table, built once per degree.
const SphereQuadrature& cached_quadrature(int degree);

}  // namespace rotcav
