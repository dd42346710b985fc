#include "rotcav/rotor.hpp"

#include <cmath>

#include "rotcav/bessel.hpp"

namespace rotcav {

Vec3 m_from_euler(double alpha, double beta) {
  const double sb = std::sin(beta);
  Vec3 m{std::cos(alpha) * sb, std::sin(alpha) * sb, std::cos(beta)};
  return m.normalized();
}

Orientation euler_from_m(const Vec3& m_in) {
  const Vec3 m = m_in.normalized();
  Orientation o;
  const double rho = std::hypot(m.x(), m.y());
  o.beta = std::atan2(rho, m.z());
  if (rho > 0.0) {
    o.alpha = std::atan2(m.y(), m.x());
    if (o.alpha < 0.0) o.alpha += two_pi;
  }
  return o;
}

Vec3 dm_dalpha(double alpha, double beta) {
  const double sb = std::sin(beta);
  return {-std::sin(alpha) * sb, std::cos(alpha) * sb, 0.0};
}

Vec3 dm_dbeta(double alpha, double beta) {
  const double cb = std::cos(beta);
  return {std::cos(alpha) * cb, std::sin(alpha) * cb, -std::sin(beta)};
}

double rotational_energy(const RotorState& rotor, double inertia, double axial_inertia) {
  double e = inertia > 0.0 ? rotor.L.squaredNorm() / (2.0 * inertia) : 0.0;
  if (axial_inertia > 0.0) e += rotor.spin * rotor.spin / (2.0 * axial_inertia);
  return e;
}

void project(RotorState& rotor) {
  rotor.m.normalize();
  rotor.L -= rotor.m.dot(rotor.L) * rotor.m;
}

EulerRates euler_rates_from_state(const RotorState& rotor, double inertia) {
  EulerRates out;
  const Orientation o = euler_from_m(rotor.m);
  out.alpha = o.alpha;
  out.beta = o.beta;
  if (!(inertia > 0.0)) return out;
  const Vec3 mdot = (rotor.L / inertia).cross(rotor.m);
  const double sb = std::sin(o.beta);
  out.beta_dot = mdot.dot(dm_dbeta(o.alpha, o.beta));
  out.p_beta = inertia * out.beta_dot;
  if (sb < 1e-6) {
    out.near_pole = true;
    return out;
  }
  const Vec3 e_phi{-std::sin(o.alpha), std::cos(o.alpha), 0.0};
  out.alpha_dot = mdot.dot(e_phi) / sb;
  out.p_alpha = inertia * sb * sb * out.alpha_dot;
  return out;
}

double sinc(double x) {
  if (std::abs(x) < 0.05) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return std::sin(x) / x;
}

double sinc_derivative(double x) {
  if (std::abs(x) < 0.05) {
    // sum_k (-1)^k 2k x^(2k-1) / (2k+1)!
    const double x2 = x * x;
    return x * (-1.0 / 3.0 + x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 / 45360.0)));
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}

namespace {

// sum_k (-1)^k y^(2k) / (k! (k+1)!)
double disk_series(double y) {
  const double y2 = y * y;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -y2 / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

// sum_{k>=1} (-1)^k 2k y^(2k-2) / (k! (k+1)!)
double disk_slope_series(double y) {
  const double y2 = y * y;
  double base = -0.5;  // (-1)^k y^(2k-2) / (k! (k+1)!) at k = 1
  double sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    const double term = 2.0 * k * base;
    sum += term;
    if (std::abs(term) < 1e-18 && k > 1) break;
    base *= -y2 / (static_cast<double>(k + 1) * (k + 2));
  }
  return sum;
}

}  // namespace

double disk_form(double y) {
  if (std::abs(y) < 1.0) return disk_series(y);
  return bessel_j1(2.0 * y) / y;
}

double disk_form_slope_over_y(double y) {
  if (std::abs(y) < 1.0) return disk_slope_series(y);
  const double x = 2.0 * y;
  return 2.0 * (y * bessel_j0(x) - bessel_j1(x)) / (y * y * y);
}

double shape(ParticleKind kind, double scale, const Vec3& m, const Vec3& n) {
  switch (kind) {
    case ParticleKind::rod: return sinc(scale * m.dot(n));
    case ParticleKind::disk: return disk_form(scale * m.cross(n).norm());
    case ParticleKind::sphere: return 1.0;
  }
  return 1.0;
}

Vec3 shape_gradient(ParticleKind kind, double scale, const Vec3& m, const Vec3& n) {
  switch (kind) {
    case ParticleKind::rod: return sinc_derivative(scale * m.dot(n)) * scale * n;
    case ParticleKind::disk: {
      const double y = scale * m.cross(n).norm();
      // grad_m |m x n| = (m |n|^2 - (m.n) n) / |m x n|
      return disk_form_slope_over_y(y) * scale * scale * (m * n.squaredNorm() - m.dot(n) * n);
    }
    case ParticleKind::sphere: return Vec3::Zero();
  }
  return Vec3::Zero();
}

}  // namespace rotcav
