#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rotcav/constants.hpp"

namespace rotcav {

enum class ParticleKind { rod, disk, sphere };

std::string_view to_string(ParticleKind kind);
ParticleKind particle_kind_from_string(std::string_view name);

/// Geometry and material of the levitated dielectric.
///
/// For rods `length` is the rod length and `radius` its cross-section radius;
/// for disks `length` is the thickness. Spheres only use `radius`.
struct ParticleSpec {
  ParticleKind kind = ParticleKind::rod;
  double length = 800e-9;       // m
  double radius = 25e-9;        // m
  double mass_density = 2329.0; // kg/m^3, silicon
  double permittivity = 12.1;   // silicon near 1.56 um

  double volume() const;
  double mass() const;
  /// Moment of inertia perpendicular to the symmetry axis (zero for spheres).
  double moment_of_inertia() const;
  /// Moment of inertia about the symmetry axis; carries the conserved spin.
  double axial_moment_of_inertia() const;

  /// Throws std::invalid_argument on non-positive dimensions or eps_r < 1.
  void validate() const;
};

struct Susceptibilities {
  double parallel = 0.0;
  double perpendicular = 0.0;
  double anisotropy = 0.0;  // parallel - perpendicular
  double maximal = 0.0;     // eps_r - 1
};

Susceptibilities derive_susceptibilities(ParticleKind kind, double permittivity);

/// How quoted rates (linewidth, detuning) map to angular frequencies.
/// `angular`: a quoted "0.78 MHz" is 0.78e6 rad/s.
/// `divided_by_2pi`: the quoted value is kappa/2pi, so kappa = 2pi * 0.78e6.
enum class RateConvention { angular, divided_by_2pi };

std::string_view to_string(RateConvention convention);
RateConvention rate_convention_from_string(std::string_view name);

/// Laser and cavity parameters, resolved to SI angular units.
struct CavityConfig {
  double wavelength = 1.56e-6;  // m
  double linewidth = 0.78e6;    // kappa, rad/s
  double detuning = -1.2 * 0.78e6;  // Delta = omega_p - omega_c, rad/s
  double pump_power = 10e-3;    // W
  double waist = 25e-6;         // m, 1/e amplitude radius
  double mode_volume = 0.0;     // m^3; <= 0 means "calibrate"
  RateConvention rate_convention = RateConvention::angular;

  double wavenumber() const { return two_pi / wavelength; }
  double pump_frequency() const { return speed_of_light * wavenumber(); }
  /// eta from P = hbar omega_p eta^2 / (2 kappa)
  double pump_rate() const;

  void validate() const;
};

/// Coupling constants shared by all modules.
struct DerivedParams {
  double coupling = 0.0;        // U0, rad/s, negative
  double rayleigh_rate = 0.0;   // gamma0, 1/s
  double pump_rate = 0.0;       // eta, 1/s
  double mode_volume = 0.0;     // V_c, m^3
};

DerivedParams derive_coupling(const ParticleSpec& particle, const CavityConfig& cavity);

/// V_c such that |U0| / kappa equals `target_ratio`.
/// Rejects non-positive targets and results below lambda^3.
double calibrate_mode_volume(const ParticleSpec& particle, const CavityConfig& cavity,
                             double target_ratio);

/// Radius of the sphere with the volume of a cylinder (length, radius).
double equivalent_sphere(double length, double radius);

struct ValidityReport {
  std::string criterion;  // human-readable name of the dimensionless number
  double value = 0.0;
  double threshold = 0.5;
  bool passes = true;
  std::vector<std::string> warnings;
};

ValidityReport validity_report(const ParticleSpec& particle, const CavityConfig& cavity,
                               double threshold = 0.5);

/// Immutable bundle of everything the physics modules need.
class Model {
 public:
  Model(ParticleSpec particle, CavityConfig cavity);

  const ParticleSpec& particle() const { return particle_; }
  const CavityConfig& cavity() const { return cavity_; }
  const Susceptibilities& chi() const { return chi_; }
  const DerivedParams& derived() const { return derived_; }

  ParticleKind kind() const { return particle_.kind; }
  double k() const { return k_; }
  double mass() const { return mass_; }
  double inertia() const { return inertia_; }
  double axial_inertia() const { return axial_inertia_; }
  double kappa() const { return cavity_.linewidth; }
  double detuning() const { return cavity_.detuning; }
  double U0() const { return derived_.coupling; }
  double gamma0() const { return derived_.rayleigh_rate; }
  double eta() const { return derived_.pump_rate; }
  double waist() const { return cavity_.waist; }

  /// k*l for rods, k*a for disks, 0 for spheres: the shape-function scale.
  double shape_scale() const { return shape_scale_; }

 private:
  ParticleSpec particle_;
  CavityConfig cavity_;
  Susceptibilities chi_;
  DerivedParams derived_;
  double k_ = 0.0;
  double mass_ = 0.0;
  double inertia_ = 0.0;
  double axial_inertia_ = 0.0;
  double shape_scale_ = 0.0;
};

}  // namespace rotcav
