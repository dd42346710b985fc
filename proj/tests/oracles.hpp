#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the optics or cooling code paths it is used to check.

#include <cmath>
#include <functional>

#include "rotcav/params.hpp"

namespace rotcav::oracle {

/// Truncated ascending series for J1 in long double.
inline long double bessel_j1_series(long double x, int terms = 30) {
  long double term = x / 2.0L;
  long double sum = term;
  const long double q = -(x / 2.0L) * (x / 2.0L);
  for (int k = 1; k < terms; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1));
    sum += term;
  }
  return sum;
}

/// Cycle-averaged interaction energy -P.E*/4 integrated over the cylinder by
/// the midpoint rule, divided by hbar U0 |b|^2 (b = 1). Cells are split
/// `axial` along m, `rings` in equal-area annuli and `sectors` in azimuth.
inline double volume_integral_potential(const Model& model, const Vec3& r, const Vec3& m,
                                        int axial, int rings, int sectors) {
  const auto& p = model.particle();
  const auto& cav = model.cavity();
  const double k = cav.wavenumber();
  const double eps_r = p.permittivity;
  // susceptibility tensor chi_perp 1 + dchi m m^T from the electrostatic solution
  double chi_par = 0.0, chi_perp = 0.0;
  if (p.kind == ParticleKind::rod) {
    chi_par = eps_r - 1.0;
    chi_perp = 2.0 * (eps_r - 1.0) / (eps_r + 1.0);
  } else {
    chi_par = (eps_r - 1.0) / eps_r;
    chi_perp = eps_r - 1.0;
  }
  const double amp2 = 2.0 * hbar * cav.pump_frequency() / (vacuum_permittivity * cav.mode_volume);

  Vec3 u = m.unitOrthogonal();
  Vec3 w = m.cross(u);
  const double ds = p.length / axial;
  const double cell_area = pi * p.radius * p.radius / (rings * sectors);
  double energy = 0.0;
  for (int i = 0; i < axial; ++i) {
    const double s = -0.5 * p.length + (i + 0.5) * ds;
    for (int j = 0; j < rings; ++j) {
      const double rho = p.radius * std::sqrt((j + 0.5) / rings);
      for (int l = 0; l < sectors; ++l) {
        const double phi = two_pi * (l + 0.5) / sectors;
        const Vec3 x = r + s * m + rho * (std::cos(phi) * u + std::sin(phi) * w);
        const double env = std::exp(-(x.x() * x.x() + x.y() * x.y()) / (cav.waist * cav.waist));
        const double field = env * std::cos(k * x.z());  // E = sqrt(amp2) b field e_x
        const double e_sq = amp2 * field * field;
        // P.E* = eps0 E^T chi E with E along e_x
        const double pe = vacuum_permittivity * (chi_perp + (chi_par - chi_perp) * m.x() * m.x()) * e_sq;
        energy += -0.25 * pe * ds * cell_area;
      }
    }
  }
  const double u0 = -cav.pump_frequency() * (eps_r - 1.0) * p.volume() / (2.0 * cav.mode_volume);
  return energy / (hbar * u0);
}

/// Central difference of g along a straight line.
inline double central_difference(const std::function<double(double)>& g, double h) {
  return (g(h) - g(-h)) / (2.0 * h);
}

/// Second derivative by the five-point stencil.
inline double second_difference(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 16 * g(h) - 30 * g(0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h);
}

}  // namespace rotcav::oracle
