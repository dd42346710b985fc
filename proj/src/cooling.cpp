#include "rotcav/cooling.hpp"

#include <cmath>
#include <stdexcept>

#include "rotcav/rotor.hpp"

namespace rotcav {

double gamma_prefactor(const Model& model, double v) {
  const double kappa = model.kappa();
  const double eta = model.eta();
  const double u0 = model.U0();
  const double d = model.detuning() - u0 * v;
  const double denom = kappa * kappa + d * d;
  return 4.0 * hbar * kappa * eta * eta * u0 * u0 * d / (denom * denom * denom);
}

double gamma_rate(const Model& model, const Vec3& r, const Vec3& m) {
  const PotentialJet jet = potential_jet(model, r, m);
  double kinetic = jet.grad_r.squaredNorm() / model.mass();
  if (model.kind() != ParticleKind::sphere) {
    const Vec3 tangent = jet.grad_m - jet.grad_m.dot(m) * m;
    kinetic += tangent.squaredNorm() / model.inertia();
  }
  return gamma_prefactor(model, jet.value) * kinetic;
}

double gamma_rate(const Model& model, const Vec3& r, double alpha, double beta) {
  return gamma_rate(model, r, m_from_euler(alpha, beta));
}

ModeDirections mode_directions(ParticleKind kind) {
  if (kind == ParticleKind::disk) return {e_x, e_y};
  return {e_y, e_z};
}

TrapFrequencies trap_frequencies(const Model& model, double photons) {
  TrapFrequencies w;
  const double depth = 2.0 * hbar * std::abs(model.U0()) * photons;
  const auto& chi = model.chi();
  const double k = model.k();
  w.z = std::sqrt(depth * k * k / model.mass());
  w.transverse = std::sqrt(2.0 * depth / (model.mass() * model.waist() * model.waist()));
  switch (model.kind()) {
    case ParticleKind::rod: {
      const double kl = model.shape_scale();
      const double ratio = chi.anisotropy / chi.parallel;
      w.alpha_confined = ratio > 0.0;
      w.alpha = w.alpha_confined ? std::sqrt(depth * ratio / model.inertia()) : 0.0;
      const double beta2 = depth * (ratio + kl * kl / 12.0) / model.inertia();
      w.beta = beta2 > 0.0 ? std::sqrt(beta2) : 0.0;
      break;
    }
    case ParticleKind::disk:
      w.alpha = 0.0;
      w.alpha_confined = false;
      w.beta = w.z;
      break;
    case ParticleKind::sphere:
      w.alpha = w.beta = 0.0;
      w.alpha_confined = false;
      break;
  }
  return w;
}

SteadyState steady_state_b0(const Model& model) {
  // gamma_sc at the minimum does not depend on the cavity amplitude, so the
  // self-consistency loop closes after one pass; it is kept general.
  const Vec3 m0 = trapped_orientation(model.kind());
  const ScatteringRateEvaluator gamma_sc(model);
  SteadyState out;
  double gamma = 0.0;
  for (out.iterations = 1; out.iterations <= 50; ++out.iterations) {
    const double next = gamma_sc(Vec3::Zero(), m0);
    const bool done = std::abs(next - gamma) <= 1e-12 * std::abs(next);
    gamma = next;
    if (done || next == 0.0) break;
  }
  if (out.iterations > 50) throw std::runtime_error("steady-state amplitude did not converge");
  out.gamma_sc0 = gamma;
  const double v0 = dimensionless_potential(model, Vec3::Zero(), m0);
  out.b0 = model.eta() /
           Complex(model.kappa() + 0.5 * gamma, -(model.detuning() - model.U0() * v0));
  return out;
}

RecoilTemperatures recoil_temperatures(const Model& model, int degree) {
  if (degree < 20) throw std::invalid_argument("recoil temperatures need quadrature degree >= 20");
  const SphereQuadrature& q = cached_quadrature(degree);
  const Vec3 m0 = trapped_orientation(model.kind());
  const ModeDirections dir = mode_directions(model.kind());
  RecoilTemperatures t;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto jets =
        scattering_amplitudes(model, q.nodes[i], q.theta_hat[i], q.phi_hat[i], Vec3::Zero(), m0);
    for (const auto& jet : jets) {
      t.z_integral += q.weights[i] * std::norm(jet.d_r[2]);
      t.alpha_integral += q.weights[i] * std::norm(jet.along_m(dir.alpha));
      t.beta_integral += q.weights[i] * std::norm(jet.along_m(dir.beta));
    }
  }
  const SteadyState ss = steady_state_b0(model);
  t.kappa_eff = model.kappa() + 0.5 * ss.gamma_sc0;
  const double pre = model.gamma0() * hbar * hbar * std::norm(ss.b0) / (2.0 * t.kappa_eff * boltzmann);
  t.z = pre * t.z_integral / model.mass();
  if (model.kind() != ParticleKind::sphere) {
    t.alpha = pre * t.alpha_integral / model.inertia();
    t.beta = pre * t.beta_integral / model.inertia();
  }
  return t;
}

RecoilTemperatures small_particle_temperatures(const Model& model) {
  const SteadyState ss = steady_state_b0(model);
  RecoilTemperatures t;
  t.kappa_eff = model.kappa() + 0.5 * model.gamma0();
  const double pre = model.gamma0() * hbar * hbar * std::norm(ss.b0) / (t.kappa_eff * boltzmann);
  const double k = model.k();
  t.z = pre * k * k / (5.0 * model.mass());
  if (model.kind() != ParticleKind::sphere) {
    const auto& chi = model.chi();
    const double r = chi.anisotropy / chi.maximal;
    t.alpha = t.beta = pre * r * r / (2.0 * model.inertia());
  }
  return t;
}

std::optional<double> occupation(double temperature, double omega) {
  if (!(omega > 0.0)) return std::nullopt;
  return boltzmann * temperature / (hbar * omega);
}

std::optional<double> bose_occupation(double temperature, double omega) {
  if (!(omega > 0.0)) return std::nullopt;
  if (temperature <= 0.0) return 0.0;
  return 1.0 / std::expm1(hbar * omega / (boltzmann * temperature));
}

CoolingReport cooling_report(const Model& model, const Vec3& r, const Vec3& m, int degree) {
  CoolingReport rep;
  rep.gamma = gamma_rate(model, r, m);
  const SteadyState ss = steady_state_b0(model);
  rep.b0 = ss.b0;
  rep.gamma_sc0 = ss.gamma_sc0;
  rep.omega = trap_frequencies(model, std::norm(ss.b0));
  rep.temperature = recoil_temperatures(model, degree);
  rep.kappa_eff = rep.temperature.kappa_eff;
  rep.n_z = occupation(rep.temperature.z, rep.omega.z);
  rep.n_alpha = occupation(rep.temperature.alpha, rep.omega.alpha);
  rep.n_beta = occupation(rep.temperature.beta, rep.omega.beta);
  rep.bose_z = bose_occupation(rep.temperature.z, rep.omega.z);
  rep.bose_alpha = bose_occupation(rep.temperature.alpha, rep.omega.alpha);
  rep.bose_beta = bose_occupation(rep.temperature.beta, rep.omega.beta);
  return rep;
}

}  // namespace rotcav
