#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotcav/constants.hpp"
#include "rotcav/optics.hpp"
#include "rotcav/params.hpp"
#include "rotcav/rotor.hpp"

namespace rotcav {

struct SystemState {
  Vec3 r = Vec3::Zero();  // m
  Vec3 p = Vec3::Zero();  // kg m/s
  RotorState rotor;
  Complex b{};            // cavity amplitude, sqrt(photon number)
  double t = 0.0;         // s

  bool finite() const;
};

enum class CavityMode { dynamic, adiabatic, frozen };

std::string_view to_string(CavityMode mode);
CavityMode cavity_mode_from_string(std::string_view name);

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;  // applied to the dimensionless state
  double max_step = 0.0;   // s; 0 means unbounded
  double output_interval = 0.0;  // s; 0 means no dense samples
  CavityMode cavity_mode = CavityMode::dynamic;
  bool radiation_pressure = false;
  long max_steps = 50'000'000;

  void validate() const;
};

/// Thrown when the integration cannot continue. `state` is the last
/// accepted state.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, SystemState state)
      : std::runtime_error(what), state_(std::move(state)) {}
  const SystemState& state() const { return state_; }

 private:
  SystemState state_;
};

/// Time derivatives in SI units. `rotor.spin` is carried unchanged.
struct StateDerivative {
  Vec3 r_dot = Vec3::Zero();
  Vec3 p_dot = Vec3::Zero();
  Vec3 m_dot = Vec3::Zero();
  Vec3 L_dot = Vec3::Zero();
  Complex b_dot{};
};

StateDerivative derivative(const Model& model, const SystemState& state,
                           CavityMode mode = CavityMode::dynamic,
                           bool radiation_pressure = false);

/// Empty-cavity steady state eta / (kappa - i Delta).
Complex empty_cavity_amplitude(const Model& model);

/// Cavity amplitude slaved to the particle, eta / (kappa + gamma_sc/2 - i(Delta - U0 v)).
Complex adiabatic_amplitude(const Model& model, const Vec3& r, const Vec3& m);

/// E = p^2/2M + L^2/2I + spin^2/2I_axial + hbar U0 |b|^2 v.
double total_energy(const Model& model, const SystemState& state);
double kinetic_energy(const Model& model, const SystemState& state);

struct TrajectorySample {
  SystemState state;
  double energy = 0.0;
  double photons = 0.0;     // |b|^2
  double scattering = 0.0;  // gamma_sc
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  SystemState final_state;
  long accepted_steps = 0;
  long rejected_steps = 0;
  bool stopped_early = false;
};

/// Called after every accepted step; return false to stop.
using StepObserver = std::function<bool(const SystemState&, double energy)>;

/// Dormand-Prince 5(4) with PI step control. After each accepted step m is
/// renormalised and L projected perpendicular to m. Samples are produced by
/// dense output at multiples of `output_interval`, starting at t0.
Trajectory integrate(const Model& model, const SystemState& initial, double t_end,
                     const IntegratorConfig& config, const StepObserver& observer = {});

enum class Outcome { captured, transmitted, undecided };

std::string_view to_string(Outcome outcome);

struct CaptureRule {
  double depth_fraction = 1e-3;  // E < -fraction hbar |U0| |b_ss|^2
  double exit_waists = 3.0;      // transmitted beyond |x| > exit_waists w0
  double hold_time = 0.0;        // s the bound condition must persist
};

/// Online classifier fed with accepted states in time order.
class CaptureMonitor {
 public:
  CaptureMonitor(const Model& model, CaptureRule rule);

  /// Returns the outcome reached so far (undecided until a terminal condition).
  Outcome update(const SystemState& state, double energy);
  Outcome outcome() const { return outcome_; }
  double threshold() const { return threshold_; }

 private:
  double waist_;
  CaptureRule rule_;
  double threshold_;
  double bound_since_ = -1.0;
  Outcome outcome_ = Outcome::undecided;
};

/// Classification of a finished trajectory from its samples.
Outcome classify(const Model& model, const Trajectory& trajectory, const CaptureRule& rule);

}  // namespace rotcav
