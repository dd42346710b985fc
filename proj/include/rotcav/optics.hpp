#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "rotcav/constants.hpp"
#include "rotcav/params.hpp"
#include "rotcav/quadrature.hpp"

namespace rotcav {

using Complex = std::complex<double>;

/// Orientation of the potential minimum at r = 0: e_x for rods and spheres,
/// e_z for disks.
Vec3 trapped_orientation(ParticleKind kind);

/// Gaussian envelope f(r) = exp(-(x^2 + y^2) / w0^2).
double mode_envelope(double waist, const Vec3& r);

/// Field-independent potential v = V / (hbar U0 |b|^2) with its gradients.
/// `grad_m` is the gradient with respect to the components of m; only its
/// projection onto the tangent plane of m is physical.
struct PotentialJet {
  double value = 0.0;
  Vec3 grad_r = Vec3::Zero();
  Vec3 grad_m = Vec3::Zero();
};

double dimensionless_potential(const Model& model, const Vec3& r, const Vec3& m);
PotentialJet potential_jet(const Model& model, const Vec3& r, const Vec3& m);

/// Optical potential in joules. `torque = grad_m V x m` acts on L.
struct PotentialValue {
  double energy = 0.0;
  Vec3 gradient_r = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

PotentialValue optical_potential(const Model& model, const Vec3& r, const Vec3& m,
                                 double photons);

/// Direction of the internal polarization, chi_perp/chi_m e_x + dchi/chi_m (m.e_x) m.
Vec3 polarization_direction(const Model& model, const Vec3& m);

/// (theta-hat, phi-hat) about e_z; at the poles the phi = 0 limit is used,
/// i.e. (e_x, e_y) at +e_z and (-e_x, e_y) at -e_z.
std::pair<Vec3, Vec3> polarization_basis(const Vec3& n);

/// Rayleigh scattering amplitude A_{n s}(r, m) with analytic derivatives.
/// `d_m` is the gradient with respect to the components of m.
struct AmplitudeJet {
  Complex value{};
  std::array<Complex, 3> d_r{};
  std::array<Complex, 3> d_m{};

  Complex along_m(const Vec3& direction) const {
    return d_m[0] * direction.x() + d_m[1] * direction.y() + d_m[2] * direction.z();
  }
};

/// `polarization` must be 1 or 2.
AmplitudeJet scattering_amplitude(const Model& model, const Vec3& n, int polarization,
                                  const Vec3& r, const Vec3& m);

/// Both polarizations for an explicit orthonormal pair (eps1, eps2) at n.
std::array<AmplitudeJet, 2> scattering_amplitudes(const Model& model, const Vec3& n,
                                                  const Vec3& eps1, const Vec3& eps2,
                                                  const Vec3& r, const Vec3& m);

/// gamma_sc = gamma0 sum_s int d^2n/4pi |A_ns|^2 by direct quadrature.
/// `converged` compares against the next lower degree at 1e-8 relative.
struct ScatteringRate {
  double rate = 0.0;
  double relative_change = 0.0;
  bool converged = true;
};

double scattering_rate(const Model& model, const Vec3& r, const Vec3& m,
                       const SphereQuadrature& quadrature);
ScatteringRate scattering_rate_checked(const Model& model, const Vec3& r, const Vec3& m,
                                       int degree = 30);

/// Fast evaluator of gamma_sc(r, m) for the equations of motion.
///
/// Rods: the sphere integral is done in a frame whose polar axis is m, where
/// the rod shape function only depends on t = m.n and the azimuthal average
/// of the polarization factor is a quadratic in t. What remains is a
/// Gauss-Legendre integral in t with precomputed sin/cos tables.
/// Spheres: closed form gamma0 f^2 (chi_s/chi_m)^2 cos^2(kz).
/// Disks: falls back to the product quadrature of the given degree.
class ScatteringRateEvaluator {
 public:
  explicit ScatteringRateEvaluator(const Model& model, int disk_degree = 30);

  double operator()(const Vec3& r, const Vec3& m) const;

  /// gamma_sc(r, m) = gamma0 f^2 [g0(m) + cos(2kz) g1(m)]; returns (g0, g1).
  std::pair<double, double> orientation_factors(const Vec3& m) const;

 private:
  const Model* model_;
  int disk_degree_;
  double half_scale_ = 0.0;  // k l / 2
  std::vector<double> t_, w_, t2_, sin_at_, cos_at_, at_;
};

/// Radiation-pressure force and torque,
/// hbar gamma0 |b|^2 sum_s int d^2n/4pi Im(A* dA).
struct GeneralizedForce {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();  // acts on L, perpendicular to m
  bool converged = true;
};

GeneralizedForce radiation_pressure(const Model& model, const Vec3& r, const Vec3& m,
                                    double photons, int degree = 30);

/// Far-field intensity at R n, total and split into (theta-hat, phi-hat).
struct DetectorReading {
  double total = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  bool near_field = false;  // R < 100 wavelengths
};

DetectorReading detector_intensity(const Model& model, const Vec3& n, double distance,
                                   const Vec3& r, const Vec3& m, double photons);

}  // namespace rotcav
