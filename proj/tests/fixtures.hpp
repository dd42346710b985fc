#pragma once

#include <random>

#include "rotcav/params.hpp"

namespace rotcav::testing {

inline ParticleSpec fig2_rod() {
  ParticleSpec p;
  p.kind = ParticleKind::rod;
  p.length = 800e-9;
  p.radius = 25e-9;
  return p;
}

inline ParticleSpec fig2_sphere() {
  ParticleSpec p;
  p.kind = ParticleKind::sphere;
  p.radius = equivalent_sphere(800e-9, 25e-9);
  return p;
}

inline CavityConfig fig2_cavity() {
  CavityConfig c;
  c.wavelength = 1.56e-6;
  c.linewidth = two_pi * 0.78e6;
  c.detuning = -1.2 * c.linewidth;
  c.pump_power = 10e-3;
  c.waist = 25e-6;
  c.mode_volume = calibrate_mode_volume(fig2_rod(), c, 1.1);
  return c;
}

inline Model fig2_rod_model() { return Model(fig2_rod(), fig2_cavity()); }
inline Model fig2_sphere_model() { return Model(fig2_sphere(), fig2_cavity()); }

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace rotcav::testing
