#include "rotcav/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rotcav {

std::string_view to_string(ParticleKind kind) {
  switch (kind) {
    case ParticleKind::rod: return "rod";
    case ParticleKind::disk: return "disk";
    case ParticleKind::sphere: return "sphere";
  }
  return "unknown";
}

ParticleKind particle_kind_from_string(std::string_view name) {
  if (name == "rod") return ParticleKind::rod;
  if (name == "disk") return ParticleKind::disk;
  if (name == "sphere") return ParticleKind::sphere;
  throw std::invalid_argument("unknown particle kind '" + std::string(name) +
                              "' (expected rod, disk or sphere)");
}

std::string_view to_string(RateConvention convention) {
  return convention == RateConvention::angular ? "angular" : "divided_by_2pi";
}

RateConvention rate_convention_from_string(std::string_view name) {
  if (name == "angular") return RateConvention::angular;
  if (name == "divided_by_2pi") return RateConvention::divided_by_2pi;
  throw std::invalid_argument("unknown rate convention '" + std::string(name) +
                              "' (expected angular or divided_by_2pi)");
}

double ParticleSpec::volume() const {
  if (kind == ParticleKind::sphere) return 4.0 / 3.0 * pi * radius * radius * radius;
  return pi * radius * radius * length;
}

double ParticleSpec::mass() const { return mass_density * volume(); }

double ParticleSpec::moment_of_inertia() const {
  switch (kind) {
    case ParticleKind::rod: return mass() * length * length / 12.0;
    case ParticleKind::disk: return mass() * radius * radius / 4.0;
    case ParticleKind::sphere: return 0.0;
  }
  return 0.0;
}

double ParticleSpec::axial_moment_of_inertia() const {
  if (kind == ParticleKind::sphere) return 0.0;
  return 0.5 * mass() * radius * radius;
}

void ParticleSpec::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("particle radius must be positive");
  if (kind != ParticleKind::sphere && !(length > 0.0))
    throw std::invalid_argument("particle length must be positive");
  if (!(mass_density > 0.0)) throw std::invalid_argument("mass density must be positive");
  if (!(permittivity >= 1.0))
    throw std::invalid_argument("permittivity must be >= 1 (absorbing media unsupported)");
}

Susceptibilities derive_susceptibilities(ParticleKind kind, double permittivity) {
  if (!(permittivity >= 1.0))
    throw std::invalid_argument("permittivity must be >= 1 (absorbing media unsupported)");
  const double em1 = permittivity - 1.0;
  Susceptibilities chi;
  chi.maximal = em1;
  switch (kind) {
    case ParticleKind::rod:
      chi.parallel = em1;
      chi.perpendicular = 2.0 * em1 / (permittivity + 1.0);
      break;
    case ParticleKind::disk:
      chi.parallel = em1 / permittivity;
      chi.perpendicular = em1;
      break;
    case ParticleKind::sphere:
      chi.parallel = chi.perpendicular = 3.0 * em1 / (permittivity + 2.0);
      break;
  }
  chi.anisotropy = chi.parallel - chi.perpendicular;
  return chi;
}

double CavityConfig::pump_rate() const {
  return std::sqrt(2.0 * linewidth * pump_power / (hbar * pump_frequency()));
}

void CavityConfig::validate() const {
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(linewidth > 0.0)) throw std::invalid_argument("cavity linewidth must be positive");
  if (!(waist > 0.0)) throw std::invalid_argument("waist must be positive");
  if (!(pump_power >= 0.0)) throw std::invalid_argument("pump power must be non-negative");
  if (!std::isfinite(detuning)) throw std::invalid_argument("detuning must be finite");
}

DerivedParams derive_coupling(const ParticleSpec& particle, const CavityConfig& cavity) {
  particle.validate();
  cavity.validate();
  if (!(cavity.mode_volume > 0.0))
    throw std::invalid_argument("mode volume must be positive (set it or calibrate it)");
  const double chi_m = particle.permittivity - 1.0;
  const double v0 = particle.volume();
  const double k = cavity.wavenumber();
  DerivedParams d;
  d.mode_volume = cavity.mode_volume;
  d.coupling = -cavity.pump_frequency() * chi_m * v0 / (2.0 * cavity.mode_volume);
  d.rayleigh_rate = speed_of_light * chi_m * chi_m * v0 * v0 * std::pow(k, 4) /
                    (6.0 * pi * cavity.mode_volume);
  d.pump_rate = cavity.pump_rate();
  return d;
}

double calibrate_mode_volume(const ParticleSpec& particle, const CavityConfig& cavity,
                             double target_ratio) {
  if (!(target_ratio > 0.0) || !std::isfinite(target_ratio))
    throw std::invalid_argument("coupling ratio |U0|/kappa must be positive and finite");
  particle.validate();
  const double chi_m = particle.permittivity - 1.0;
  const double vc = cavity.pump_frequency() * chi_m * particle.volume() /
                    (2.0 * cavity.linewidth * target_ratio);
  const double floor = std::pow(cavity.wavelength, 3);
  if (!(vc >= floor)) {
    std::ostringstream msg;
    msg << "calibrated mode volume " << vc << " m^3 is below lambda^3 = " << floor
        << " m^3; coupling ratio " << target_ratio << " is unphysical";
    throw std::invalid_argument(msg.str());
  }
  return vc;
}

double equivalent_sphere(double length, double radius) {
  return std::cbrt(0.75 * radius * radius * length);
}

ValidityReport validity_report(const ParticleSpec& particle, const CavityConfig& cavity,
                               double threshold) {
  ValidityReport report;
  report.threshold = threshold;
  const double k = cavity.wavenumber();
  const double em1 = particle.permittivity - 1.0;
  switch (particle.kind) {
    case ParticleKind::rod:
      report.criterion = "pi k^2 a^2 (eps_r - 1)";
      report.value = pi * k * k * particle.radius * particle.radius * em1;
      break;
    case ParticleKind::disk:
      report.criterion = "k l (eps_r - 1)";
      report.value = k * particle.length * em1;
      break;
    case ParticleKind::sphere:
      // point-particle treatment of the sphere
      report.criterion = "k R";
      report.value = k * particle.radius;
      break;
  }
  report.passes = report.value <= threshold;
  if (!report.passes) {
    std::ostringstream msg;
    msg << report.criterion << " = " << report.value << " exceeds " << threshold
        << "; thin-particle internal field approximation is questionable";
    report.warnings.push_back(msg.str());
  }
  if (cavity.waist < 10.0 * cavity.wavelength)
    report.warnings.push_back("waist is not much larger than the wavelength");
  return report;
}

Model::Model(ParticleSpec particle, CavityConfig cavity)
    : particle_(particle), cavity_(cavity) {
  chi_ = derive_susceptibilities(particle_.kind, particle_.permittivity);
  derived_ = derive_coupling(particle_, cavity_);
  k_ = cavity_.wavenumber();
  mass_ = particle_.mass();
  inertia_ = particle_.moment_of_inertia();
  axial_inertia_ = particle_.axial_moment_of_inertia();
  switch (particle_.kind) {
    case ParticleKind::rod: shape_scale_ = k_ * particle_.length; break;
    case ParticleKind::disk: shape_scale_ = k_ * particle_.radius; break;
    case ParticleKind::sphere: shape_scale_ = 0.0; break;
  }
}

}  // namespace rotcav
