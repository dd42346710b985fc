#pragma once

#include <optional>

#include "rotcav/constants.hpp"
#include "rotcav/optics.hpp"
#include "rotcav/params.hpp"

namespace rotcav {

/// Phase-space contraction rate at (r, m). The rotational term is evaluated
/// as |tangential grad_m v|^2 / I, which equals the Euler-angle form away
/// from the poles and stays finite on them.
double gamma_rate(const Model& model, const Vec3& r, const Vec3& m);
double gamma_rate(const Model& model, const Vec3& r, double alpha, double beta);

/// Prefactor 4 hbar kappa eta^2 U0^2 (Delta - U0 v) / (kappa^2 + (Delta - U0 v)^2)^3.
double gamma_prefactor(const Model& model, double v);

/// Tangent directions of the two orientational modes at the minimum.
/// Rod (m = e_x): alpha tilts toward e_y, beta toward e_z.
/// Disk (m = e_z): alpha tilts toward e_x, beta toward e_y.
struct ModeDirections {
  Vec3 alpha;
  Vec3 beta;
};

ModeDirections mode_directions(ParticleKind kind);

struct TrapFrequencies {
  double z = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double transverse = 0.0;  // x and y, small for waists much larger than lambda
  bool alpha_confined = true;  // false for disks and for rods with dchi <= 0
};

TrapFrequencies trap_frequencies(const Model& model, double photons);

struct SteadyState {
  Complex b0{};
  double gamma_sc0 = 0.0;
  int iterations = 0;
};

/// b0 = eta / (kappa + gamma_sc0/2 - i(Delta - U0)) at the potential minimum.
SteadyState steady_state_b0(const Model& model);

struct RecoilTemperatures {
  double z = 0.0, alpha = 0.0, beta = 0.0;  // K
  /// sum_s int d^2n/4pi |d_nu A|^2, the momentum (z) and angular (alpha, beta)
  /// diffusion integrals before the prefactor.
  double z_integral = 0.0, alpha_integral = 0.0, beta_integral = 0.0;
  double kappa_eff = 0.0;
};

/// Recoil-limited temperatures at the minimum with kappa_eff = kappa + gamma_sc0/2.
/// `degree` >= 20.
RecoilTemperatures recoil_temperatures(const Model& model, int degree = 40);

/// Closed forms for k l << 1 with kappa_eff = kappa + gamma0/2.
RecoilTemperatures small_particle_temperatures(const Model& model);

/// Mean occupation k_B T / (hbar omega); empty for omega = 0.
std::optional<double> occupation(double temperature, double omega);
/// Bose occupation 1 / (exp(hbar omega / k_B T) - 1) at the same (T, omega).
std::optional<double> bose_occupation(double temperature, double omega);

struct CoolingReport {
  double gamma = 0.0;  // contraction rate at the queried point
  TrapFrequencies omega;
  Complex b0{};
  double gamma_sc0 = 0.0;
  double kappa_eff = 0.0;
  RecoilTemperatures temperature;
  std::optional<double> n_z, n_alpha, n_beta;
  std::optional<double> bose_z, bose_alpha, bose_beta;
};

CoolingReport cooling_report(const Model& model, const Vec3& r, const Vec3& m, int degree = 40);

}  // namespace rotcav
