#include "rotcav/cli.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotcav/config.hpp"
#include "rotcav/cooling.hpp"
#include "rotcav/dynamics.hpp"
#include "rotcav/ensemble.hpp"
#include "rotcav/optics.hpp"
#include "rotcav/output.hpp"
#include "rotcav/params.hpp"
#include "rotcav/rotor.hpp"

namespace rotcav {
namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
  bool json = false;
  std::string detail;  // ensemble: per-trajectory CSV
  bool progress = false;
};

double nan_if_empty(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

SystemState trajectory_start(const Model& model, const TrajectorySettings& t) {
  SystemState s;
  s.r = Vec3(-t.start_waists * model.waist(), t.y0, t.z0);
  s.p = model.mass() * Vec3(t.vx, t.vy, t.vz);
  s.rotor.m = m_from_euler(t.alpha, t.beta);
  if (model.kind() != ParticleKind::sphere && t.rotation_frequency > 0.0) {
    Vec3 axis = s.rotor.m.cross(e_z);
    if (axis.norm() < 1e-9) axis = s.rotor.m.cross(e_x);
    s.rotor.L = model.inertia() * two_pi * t.rotation_frequency * axis.normalized();
  }
  s.b = empty_cavity_amplitude(model);
  return s;
}

int cmd_validate(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  const Model model = cfg.model();
  const ValidityReport v = validity_report(cfg.particle, model.cavity());
  OutputSink sink(opt.out, out);
  auto& os = sink.stream();
  if (opt.json) {
    nlohmann::json j;
    j["version"] = version_string;
    j["config_hash"] = cfg.hash();
    j["particle"] = std::string(to_string(cfg.particle.kind));
    j["derived"] = derived_json(model);
    j["validity"] = {{"criterion", v.criterion}, {"value", v.value}, {"threshold", v.threshold},
                     {"passes", v.passes}, {"warnings", v.warnings}};
    j["defaulted"] = cfg.defaulted;
    os << j.dump(2) << '\n';
  } else {
    os << "config        " << cfg.source << " (hash " << cfg.hash() << ")\n"
       << "particle      " << to_string(cfg.particle.kind) << ", mass " << format_number(model.mass())
       << " kg\n"
       << "kappa         " << format_number(model.kappa()) << " rad/s\n"
       << "detuning      " << format_number(model.detuning()) << " rad/s ("
       << format_number(model.detuning() / model.kappa()) << " kappa)\n"
       << "U0            " << format_number(model.U0()) << " rad/s ("
       << format_number(model.U0() / model.kappa()) << " kappa)\n"
       << "gamma0        " << format_number(model.gamma0()) << " 1/s\n"
       << "eta           " << format_number(model.eta()) << " 1/s\n"
       << "mode volume   " << format_number(model.derived().mode_volume) << " m^3\n"
       << "validity      " << v.criterion << " = " << format_number(v.value) << " (threshold "
       << format_number(v.threshold) << ") " << (v.passes ? "ok" : "FAILS") << '\n';
    for (const auto& w : v.warnings) os << "warning       " << w << '\n';
    if (!cfg.defaulted.empty()) os << "defaulted     " << cfg.defaulted.size() << " keys\n";
  }
  sink.close();
  return exit_code::ok;
}

int cmd_potential_map(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  const Model model = cfg.model();
  const auto& m = cfg.maps;
  const SteadyState ss = steady_state_b0(model);
  const double photons = std::norm(ss.b0);
  auto meta = run_metadata(cfg, "potential-map");
  meta["photons"] = photons;
  meta["plane"] = {{"x", m.x}, {"y", m.y}, {"beta", m.beta}};

  OutputSink sink(opt.out, out);
  CsvWriter csv(sink.stream(), meta, {"z_m", "alpha_rad", "v", "energy_J"});
  const double scale = hbar * model.U0() * photons;
  for (double z : linspace(m.z_min, m.z_max, m.z_points)) {
    for (double a : linspace(0.0, pi, m.alpha_points)) {
      const double v = dimensionless_potential(model, Vec3(m.x, m.y, z), m_from_euler(a, m.beta));
      csv.row(std::vector<double>{z, a, v, scale * v});
    }
  }
  sink.close();
  return exit_code::ok;
}

int cmd_intensity_map(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  const Model model = cfg.model();
  const auto& m = cfg.maps;
  const Vec3 r(m.x, m.y, m.z);
  const Vec3 axis = m_from_euler(m.alpha, m.beta);
  const double photons = std::norm(adiabatic_amplitude(model, r, axis));
  auto meta = run_metadata(cfg, "intensity-map");
  meta["photons"] = photons;
  meta["detector_distance_m"] = m.detector_distance;
  meta["near_field"] = m.detector_distance < 100.0 * model.cavity().wavelength;

  OutputSink sink(opt.out, out);
  CsvWriter csv(sink.stream(), meta,
                {"theta_rad", "phi_rad", "intensity_W_m2", "intensity_theta", "intensity_phi"});
  for (double th : linspace(0.0, pi, m.theta_points)) {
    for (int j = 0; j < m.phi_points; ++j) {
      const double ph = two_pi * j / m.phi_points;
      const Vec3 n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      const DetectorReading d = detector_intensity(model, n, m.detector_distance, r, axis, photons);
      csv.row(std::vector<double>{th, ph, d.total, d.theta, d.phi});
    }
  }
  sink.close();
  return exit_code::ok;
}

int cmd_trajectory(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const Model model = cfg.model();
  const auto& t = cfg.trajectory;
  if (!(t.vx > 0.0)) throw ConfigError("'trajectory.vx' must be positive");
  const double crossing = model.waist() / t.vx;
  const double duration = t.duration > 0.0 ? t.duration
                                            : cfg.ensemble.capture.max_transits * 6.0 * crossing;
  IntegratorConfig ic = cfg.integrator;
  ic.output_interval = t.output_interval > 0.0 ? t.output_interval : duration / 2000.0;

  CaptureRule rule = cfg.ensemble.capture.rule;
  rule.hold_time = cfg.ensemble.capture.hold_crossings * crossing;
  CaptureMonitor monitor(model, rule);

  const SystemState s0 = trajectory_start(model, t);
  const double e0 = total_energy(model, s0);
  Trajectory tr;
  std::optional<std::string> failure;
  try {
    tr = integrate(model, s0, s0.t + duration, ic, [&](const SystemState& s, double energy) {
      return monitor.update(s, energy) != Outcome::transmitted;
    });
  } catch (const IntegrationError& e) {
    failure = e.what();
  }

  auto meta = run_metadata(cfg, "trajectory");
  meta["outcome"] = failure ? "failed" : std::string(to_string(monitor.outcome()));
  meta["capture_threshold_J"] = monitor.threshold();
  meta["initial_energy_J"] = e0;
  meta["initial_kinetic_J"] = kinetic_energy(model, s0);
  meta["duration_s"] = duration;
  if (failure) meta["error"] = *failure;
  if (!tr.samples.empty()) meta["final_energy_J"] = tr.samples.back().energy;

  OutputSink sink(opt.out, out);
  CsvWriter csv(sink.stream(), meta,
                {"t", "x", "y", "z", "px", "py", "pz", "mx", "my", "mz", "Lx", "Ly", "Lz",
                 "re_b", "im_b", "E", "gamma_sc"});
  for (const auto& s : tr.samples) {
    const auto& st = s.state;
    csv.row(std::vector<double>{st.t, st.r.x(), st.r.y(), st.r.z(), st.p.x(), st.p.y(), st.p.z(),
                                st.rotor.m.x(), st.rotor.m.y(), st.rotor.m.z(), st.rotor.L.x(),
                                st.rotor.L.y(), st.rotor.L.z(), st.b.real(), st.b.imag(), s.energy,
                                s.scattering});
  }
  sink.close();
  if (failure) {
    err << "numerical failure: " << *failure << '\n';
    return exit_code::numerical;
  }
  return exit_code::ok;
}

int cmd_ensemble(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const Model model = cfg.model();
  EnsembleConfig ec = cfg.ensemble;
  if (opt.threads > 0) ec.threads = opt.threads;
  if (ec.trajectories < 100)
    err << "warning: " << ec.trajectories << " trajectories per point gives coarse statistics\n";

  ProgressCallback progress;
  if (opt.progress) {
    progress = [&err](long done, long total) {
      if (done % 100 == 0 || done == total) err << "\r" << done << "/" << total << std::flush;
    };
  }
  const auto points = capture_curve(model, ec, progress);
  if (opt.progress) err << '\n';

  auto meta = run_metadata(cfg, "ensemble");
  meta["master_seed"] = ec.master_seed;
  meta["seed_scheme"] = "splitmix64(splitmix64(splitmix64(master) ^ point) ^ trajectory)";
  meta["trajectories_per_point"] = ec.trajectories;
  std::vector<double> flagged;
  for (const auto& p : points)
    if (p.undecided_flag) flagged.push_back(p.forward_velocity);
  meta["undecided_flagged"] = flagged;

  OutputSink sink(opt.out, out);
  CsvWriter csv(sink.stream(), meta,
                {"v_x", "p_capture", "ci_low", "ci_high", "n_total", "n_captured", "n_transmitted",
                 "n_undecided", "n_failed"});
  for (const auto& p : points) {
    csv.row(std::vector<std::string>{
        format_number(p.forward_velocity), format_number(p.probability),
        format_number(p.interval.low), format_number(p.interval.high), std::to_string(p.total),
        std::to_string(p.captured), std::to_string(p.transmitted), std::to_string(p.undecided),
        std::to_string(p.failed)});
  }
  sink.close();

  if (!opt.detail.empty()) {
    std::ostringstream unused;
    OutputSink dsink(opt.detail, unused);
    CsvWriter dcsv(dsink.stream(), run_metadata(cfg, "ensemble-trajectories"),
                   {"point", "v_x", "index", "seed", "outcome"});
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = 0; j < points[i].outcomes.size(); ++j)
        dcsv.row(std::vector<std::string>{std::to_string(i), format_number(points[i].forward_velocity),
                                          std::to_string(j), std::to_string(points[i].seeds[j]),
                                          std::string(to_string(points[i].outcomes[j]))});
    dsink.close();
  }
  if (!flagged.empty()) {
    err << "warning: more than 5% undecided at " << flagged.size()
        << " velocity point(s); raise ensemble.max_transits\n";
    return exit_code::partial;
  }
  return exit_code::ok;
}

int cmd_cooling(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  const Model model = cfg.model();
  const Vec3 m0 = trapped_orientation(model.kind());
  const CoolingReport base = cooling_report(model, Vec3::Zero(), m0, cfg.cooling.degree);

  auto meta = run_metadata(cfg, "cooling-limits");
  meta["result"] = {
      {"T_z_K", base.temperature.z},
      {"T_alpha_K", base.temperature.alpha},
      {"T_beta_K", base.temperature.beta},
      {"n_z", nan_if_empty(base.n_z)},
      {"n_alpha", nan_if_empty(base.n_alpha)},
      {"n_beta", nan_if_empty(base.n_beta)},
      {"bose_n_z", nan_if_empty(base.bose_z)},
      {"bose_n_alpha", nan_if_empty(base.bose_alpha)},
      {"bose_n_beta", nan_if_empty(base.bose_beta)},
      {"omega_z_rad_s", base.omega.z},
      {"omega_alpha_rad_s", base.omega.alpha},
      {"omega_beta_rad_s", base.omega.beta},
      {"photons", std::norm(base.b0)},
      {"gamma_sc0_per_s", base.gamma_sc0},
      {"kappa_eff_rad_s", base.kappa_eff},
  };
  // NaN is not valid JSON; nlohmann writes null for it.

  OutputSink sink(opt.out, out);
  CsvWriter csv(sink.stream(), meta,
                {"detuning_kappa", "power_W", "T_z_K", "T_alpha_K", "T_beta_K", "n_z", "n_alpha",
                 "n_beta", "omega_z", "omega_alpha", "omega_beta", "photons"});
  for (double d : cfg.cooling.detunings) {
    for (double p : cfg.cooling.powers) {
      CavityConfig cav = model.cavity();
      cav.detuning = d * cav.linewidth;
      cav.pump_power = p;
      cav.mode_volume = model.derived().mode_volume;
      const Model sweep(cfg.particle, cav);
      const CoolingReport r = cooling_report(sweep, Vec3::Zero(), m0, cfg.cooling.degree);
      csv.row(std::vector<double>{d, p, r.temperature.z, r.temperature.alpha, r.temperature.beta,
                                  nan_if_empty(r.n_z), nan_if_empty(r.n_alpha), nan_if_empty(r.n_beta),
                                  r.omega.z, r.omega.alpha, r.omega.beta, std::norm(r.b0)});
    }
  }
  sink.close();
  return exit_code::ok;
}

void print_version(std::ostream& out, bool json) {
  if (!json) {
    out << "rotcav " << version_string << '\n';
    return;
  }
  nlohmann::json j{{"name", "rotcav"},
                   {"version", version_string},
                   {"compiler", __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                 "." + std::to_string(EIGEN_MINOR_VERSION)},
                   {"output_format", "rotcav-csv"}};
  out << j.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid dielectric rotors in a driven optical cavity", "rotcav"};
  app.fallthrough();
  Options opt;
  bool version = false;
  app.add_flag("--version", version, "Print the version and exit");
  app.add_flag("--json", opt.json, "Machine-readable output for --version and validate");
  app.add_option("--config", opt.config_path, "Run configuration (INI)")->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "Override [run] seed");
  app.add_option("--out", opt.out, "Output file (default stdout)");
  app.add_option("--threads", opt.threads, "Worker threads for ensemble (default ROTCAV_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Check a config and print derived parameters"},
      {"potential-map", "Optical potential over the z-alpha plane"},
      {"trajectory", "Integrate one launch and write the time series"},
      {"ensemble", "Capture probability against forward velocity"},
      {"cooling-limits", "Trap frequencies, recoil temperatures and occupations"},
      {"intensity-map", "Scattered far-field intensity over the detector sphere"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) subs[name] = app.add_subcommand(name, help);
  subs["ensemble"]->add_option("--detail", opt.detail, "Also write per-trajectory seeds and outcomes");
  subs["ensemble"]->add_flag("--progress", opt.progress, "Report progress on stderr");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  }

  if (version) {
    print_version(out, opt.json);
    return exit_code::ok;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return exit_code::config;
  }
  const std::string command = chosen.front()->get_name();
  if (opt.config_path.empty()) {
    err << "error: " << command << " needs --config\n";
    return exit_code::config;
  }

  try {
    RunConfig cfg = parse_config_file(opt.config_path);
    if (opt.seed) {
      cfg.seed = *opt.seed;
      cfg.ensemble.master_seed = *opt.seed;
      cfg.resolved["run.seed"] = std::to_string(*opt.seed);
      std::erase(cfg.defaulted, std::string("run.seed"));
    }
    if (command == "validate") return cmd_validate(cfg, opt, out);
    if (command == "potential-map") return cmd_potential_map(cfg, opt, out);
    if (command == "trajectory") return cmd_trajectory(cfg, opt, out, err);
    if (command == "ensemble") return cmd_ensemble(cfg, opt, out, err);
    if (command == "cooling-limits") return cmd_cooling(cfg, opt, out);
    if (command == "intensity-map") return cmd_intensity_map(cfg, opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << opt.config_path << ": " << e.what() << '\n';
    return exit_code::config;
  } catch (const IntegrationError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_code::numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  return exit_code::failure;
}

}  // namespace rotcav
