#pragma once

#include "rotcav/constants.hpp"
#include "rotcav/params.hpp"

namespace rotcav {

/// Euler angles in the z-y'-z'' convention. Only (alpha, beta) fix the
/// symmetry axis; gamma is the spin angle about it.
struct Orientation {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

Vec3 m_from_euler(double alpha, double beta);
inline Vec3 m_from_euler(const Orientation& o) { return m_from_euler(o.alpha, o.beta); }

/// Inverse chart: alpha in [0, 2pi), beta in [0, pi]; alpha = 0 at the poles.
Orientation euler_from_m(const Vec3& m);

/// Tangent vectors dm/dalpha and dm/dbeta of the Euler chart.
Vec3 dm_dalpha(double alpha, double beta);
Vec3 dm_dbeta(double alpha, double beta);

/// Linear-rotor state: symmetry axis and the angular momentum transverse to it.
/// `spin` is the conserved angular momentum about m (zero for the capture runs).
struct RotorState {
  Vec3 m = e_x;
  Vec3 L = Vec3::Zero();
  double spin = 0.0;
};

double rotational_energy(const RotorState& rotor, double inertia, double axial_inertia);

/// Renormalise m and remove the component of L along m.
void project(RotorState& rotor);

/// Read-only Euler report of a rotor state. Near the poles (sin(beta) < 1e-6)
/// alpha is ill-defined; `near_pole` is set and the alpha entries are zero.
struct EulerRates {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_dot = 0.0;
  double beta_dot = 0.0;
  double p_alpha = 0.0;
  double p_beta = 0.0;
  bool near_pole = false;
};

EulerRates euler_rates_from_state(const RotorState& rotor, double inertia);

// Shape functions ------------------------------------------------------------

/// sin(x)/x and its derivative, series near zero.
double sinc(double x);
double sinc_derivative(double x);

/// J1(2y)/y, the disk form factor in terms of y = k a |m x n|.
double disk_form(double y);
/// (1/y) d/dy [J1(2y)/y]; finite at y = 0 where it equals -1.
double disk_form_slope_over_y(double y);

/// Orientation-dependent shape function S(m, n). `scale` is k*l for rods and
/// k*a for disks; n may have any length. Spheres return 1.
double shape(ParticleKind kind, double scale, const Vec3& m, const Vec3& n);

/// Gradient of S with respect to the three components of m (not projected).
Vec3 shape_gradient(ParticleKind kind, double scale, const Vec3& m, const Vec3& n);

}  // namespace rotcav
