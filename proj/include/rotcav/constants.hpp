#pragma once

#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rotcav {

using Vec3 = Eigen::Vector3d;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018, exact where the SI defines them
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

inline const Vec3 e_x{1.0, 0.0, 0.0};
inline const Vec3 e_y{0.0, 1.0, 0.0};
inline const Vec3 e_z{0.0, 0.0, 1.0};

}  // namespace rotcav
