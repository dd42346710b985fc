#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rotcav/dynamics.hpp"
#include "rotcav/params.hpp"

namespace rotcav {

/// Launch conditions for one forward velocity. The particle starts at
/// x0 = -start_waists * w0, y = 0, with z uniform over one wavelength.
struct LaunchDistribution {
  double forward_velocity = 0.5;     // v_x, m/s
  double transverse_spread = 0.05;   // |v_z| <= spread * v_x, uniform
  double rotation_frequency = 1e6;   // Hz; |L| = I * 2 pi * frequency
  double start_waists = 3.0;

  void validate() const;
};

/// Seed of trajectory `trajectory` at grid point `point`, independent of
/// scheduling.
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trajectory);

/// Deterministic initial state: m uniform on the sphere, L perpendicular to m
/// with uniform direction, cavity at the empty-cavity steady state.
SystemState sample_initial(const Model& model, const LaunchDistribution& launch,
                           std::uint64_t seed);

struct CaptureSettings {
  CaptureRule rule;               // hold_time is overwritten per velocity
  double hold_crossings = 10.0;   // in units of w0 / v_x
  double max_transits = 20.0;     // simulated time in units of 6 w0 / v_x
  IntegratorConfig integrator;
};

struct TrajectoryOutcome {
  Outcome outcome = Outcome::undecided;
  bool failed = false;  // integration aborted; counted as undecided
  double end_time = 0.0;
  long steps = 0;
};

/// Run one launch to a terminal condition.
TrajectoryOutcome run_capture(const Model& model, const SystemState& initial,
                              double forward_velocity, const CaptureSettings& settings);

struct EnsembleConfig {
  std::vector<double> velocities;
  int trajectories = 2000;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0: hardware concurrency
  LaunchDistribution launch;
  CaptureSettings capture;
};

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for k successes in n trials at z = 1.959964 (95%).
Interval wilson_interval(long successes, long trials, double z = 1.959963984540054);

struct EnsemblePoint {
  double forward_velocity = 0.0;
  long total = 0, captured = 0, transmitted = 0, undecided = 0, failed = 0;
  double probability = 0.0;
  Interval interval;
  bool undecided_flag = false;  // more than 5% undecided
  std::vector<std::uint64_t> seeds;
  std::vector<Outcome> outcomes;
};

/// Called from worker threads after each finished trajectory.
using ProgressCallback = std::function<void(long done, long total)>;

std::vector<EnsemblePoint> capture_curve(const Model& model, const EnsembleConfig& config,
                                         const ProgressCallback& progress = {});

/// Worker count: explicit request, else ROTCAV_THREADS, else hardware concurrency.
int resolve_threads(int requested);

}  // namespace rotcav
