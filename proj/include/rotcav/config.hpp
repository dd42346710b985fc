#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotcav/dynamics.hpp"
#include "rotcav/ensemble.hpp"
#include "rotcav/params.hpp"

namespace rotcav {

/// Parse failure with a 1-based source position (0 when not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct TrajectorySettings {
  double start_waists = 3.0;         // x0 = -start_waists * w0
  double y0 = 0.0;                   // m
  double z0 = 0.0;                   // m
  double vx = 0.5, vy = 0.0, vz = -0.3;  // m/s
  double alpha = 0.0, beta = pi / 2;     // rad, m = e_x by default
  double rotation_frequency = 0.0;   // Hz, about the axis m x e_z (or e_x at the poles)
  double duration = 0.0;             // s; 0 means max_transits * 6 w0 / vx
  double output_interval = 0.0;      // s; 0 means duration / 2000
};

struct MapSettings {
  // potential-map: z-alpha plane at x = y = 0 with beta = 90 deg
  double z_min = -0.78e-6, z_max = 0.78e-6;
  int z_points = 101;
  int alpha_points = 91;
  // intensity-map
  double detector_distance = 0.1;  // m
  int theta_points = 91;
  int phi_points = 180;
  double x = 0.0, y = 0.0, z = 0.0;  // particle position for the intensity map, m
  double alpha = 0.0, beta = pi / 2;  // particle orientation, rad
};

struct CoolingSweep {
  std::vector<double> detunings;  // in units of kappa
  std::vector<double> powers;     // W
  int degree = 40;
};

/// Fully resolved run configuration.
struct RunConfig {
  ParticleSpec particle;
  CavityConfig cavity;
  std::optional<double> coupling_ratio;  // |U0|/kappa target when mode_volume is not given
  IntegratorConfig integrator;
  EnsembleConfig ensemble;
  TrajectorySettings trajectory;
  MapSettings maps;
  CoolingSweep cooling;
  std::uint64_t seed = 1;

  std::vector<std::string> defaulted;            // "section.key" filled from defaults
  std::map<std::string, std::string> resolved;   // canonical "section.key" -> value text
  std::string source;                            // path or "<string>"

  /// Model with V_c resolved (calibrated when only coupling_ratio is given).
  Model model() const;
  /// FNV-1a 64 of the canonical resolved values, as 16 hex digits.
  std::string hash() const;
};

RunConfig parse_config_string(const std::string& text, const std::string& source = "<string>");
RunConfig parse_config_file(const std::string& path);

/// Levenshtein distance, used for key suggestions.
std::size_t edit_distance(const std::string& a, const std::string& b);

}  // namespace rotcav
