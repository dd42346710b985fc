#include "rotcav/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace rotcav {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); avoids the implementation-defined
// std::uniform_real_distribution so streams match across standard libraries.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void LaunchDistribution::validate() const {
  if (!(forward_velocity > 0.0)) throw std::invalid_argument("forward velocity must be positive");
  if (!(transverse_spread >= 0.0)) throw std::invalid_argument("transverse spread must be >= 0");
  if (!(rotation_frequency >= 0.0)) throw std::invalid_argument("rotation frequency must be >= 0");
  if (!(start_waists > 0.0)) throw std::invalid_argument("start offset must be positive");
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trajectory) {
  return splitmix64(splitmix64(splitmix64(master) ^ point) ^ trajectory);
}

SystemState sample_initial(const Model& model, const LaunchDistribution& launch,
                           std::uint64_t seed) {
  launch.validate();
  std::mt19937_64 rng(seed);
  const double u_cos = uniform(rng);
  const double u_phi = uniform(rng);
  const double u_psi = uniform(rng);
  const double u_z = uniform(rng);
  const double u_vz = uniform(rng);

  SystemState s;
  const double ct = 2.0 * u_cos - 1.0;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = two_pi * u_phi;
  s.rotor.m = Vec3(st * std::cos(phi), st * std::sin(phi), ct);
  if (model.kind() != ParticleKind::sphere) {
    const Vec3 u = s.rotor.m.unitOrthogonal();
    const Vec3 w = s.rotor.m.cross(u);
    const double psi = two_pi * u_psi;
    const double magnitude = model.inertia() * two_pi * launch.rotation_frequency;
    s.rotor.L = magnitude * (std::cos(psi) * u + std::sin(psi) * w);
  }
  const double vx = launch.forward_velocity;
  const double vz = launch.transverse_spread * vx * (2.0 * u_vz - 1.0);
  s.r = Vec3(-launch.start_waists * model.waist(), 0.0, model.cavity().wavelength * u_z);
  s.p = model.mass() * Vec3(vx, 0.0, vz);
  s.b = empty_cavity_amplitude(model);
  return s;
}

TrajectoryOutcome run_capture(const Model& model, const SystemState& initial,
                              double forward_velocity, const CaptureSettings& settings) {
  const double crossing = model.waist() / forward_velocity;
  CaptureRule rule = settings.rule;
  rule.hold_time = settings.hold_crossings * crossing;
  CaptureMonitor monitor(model, rule);
  const double t_end = initial.t + settings.max_transits * 6.0 * crossing;

  TrajectoryOutcome out;
  try {
    const Trajectory tr = integrate(model, initial, t_end, settings.integrator,
                                    [&](const SystemState& s, double energy) {
                                      return monitor.update(s, energy) == Outcome::undecided;
                                    });
    out.outcome = monitor.outcome();
    out.end_time = tr.final_state.t;
    out.steps = tr.accepted_steps;
  } catch (const IntegrationError& e) {
    out.failed = true;
    out.outcome = Outcome::undecided;
    out.end_time = e.state().t;
  }
  return out;
}

Interval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // exact endpoints at k = 0 and k = n
  const double low = successes <= 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes >= trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ROTCAV_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<EnsemblePoint> capture_curve(const Model& model, const EnsembleConfig& config,
                                         const ProgressCallback& progress) {
  if (config.velocities.empty()) throw std::invalid_argument("velocity grid is empty");
  if (config.trajectories < 1) throw std::invalid_argument("need at least one trajectory per point");
  config.capture.integrator.validate();

  const std::size_t points = config.velocities.size();
  const std::size_t per_point = static_cast<std::size_t>(config.trajectories);
  const std::size_t total = points * per_point;

  std::vector<EnsemblePoint> result(points);
  for (std::size_t i = 0; i < points; ++i) {
    auto& pt = result[i];
    pt.forward_velocity = config.velocities[i];
    pt.total = config.trajectories;
    pt.seeds.resize(per_point);
    pt.outcomes.assign(per_point, Outcome::undecided);
    for (std::size_t j = 0; j < per_point; ++j)
      pt.seeds[j] = trajectory_seed(config.master_seed, i, j);
  }
  std::vector<char> failed(total, 0);

  std::atomic<std::size_t> next{0};
  std::atomic<long> done{0};
  auto worker = [&]() {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t i = job / per_point;
      const std::size_t j = job % per_point;
      LaunchDistribution launch = config.launch;
      launch.forward_velocity = config.velocities[i];
      const SystemState s0 = sample_initial(model, launch, result[i].seeds[j]);
      const TrajectoryOutcome o = run_capture(model, s0, launch.forward_velocity, config.capture);
      result[i].outcomes[j] = o.outcome;
      failed[job] = o.failed ? 1 : 0;
      const long d = ++done;
      if (progress) progress(d, static_cast<long>(total));
    }
  };

  const int n_threads = std::min<int>(resolve_threads(config.threads), static_cast<int>(total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < points; ++i) {
    auto& pt = result[i];
    for (std::size_t j = 0; j < per_point; ++j) {
      switch (pt.outcomes[j]) {
        case Outcome::captured: ++pt.captured; break;
        case Outcome::transmitted: ++pt.transmitted; break;
        case Outcome::undecided: ++pt.undecided; break;
      }
      pt.failed += failed[i * per_point + j];
    }
    pt.probability = static_cast<double>(pt.captured) / static_cast<double>(pt.total);
    pt.interval = wilson_interval(pt.captured, pt.total);
    pt.undecided_flag = pt.undecided > 0.05 * static_cast<double>(pt.total);
  }
  return result;
}

}  // namespace rotcav
