#include "rotcav/optics.hpp"

#include <cmath>
#include <stdexcept>

#include "rotcav/rotor.hpp"

namespace rotcav {
namespace {

constexpr Complex I1{0.0, 1.0};
const double amplitude_norm = std::sqrt(3.0 / 8.0);

double imag_conj_product(const Complex& a, const Complex& b) {
  // Im(conj(a) * b)
  return a.real() * b.imag() - a.imag() * b.real();
}

}  // namespace

Vec3 trapped_orientation(ParticleKind kind) {
  return kind == ParticleKind::disk ? e_z : e_x;
}

double mode_envelope(double waist, const Vec3& r) {
  return std::exp(-(r.x() * r.x() + r.y() * r.y()) / (waist * waist));
}

double dimensionless_potential(const Model& model, const Vec3& r, const Vec3& m) {
  const auto& chi = model.chi();
  const double f = mode_envelope(model.waist(), r);
  const double bracket = (chi.perpendicular + chi.anisotropy * m.x() * m.x()) / chi.maximal;
  const double s = shape(model.kind(), model.shape_scale(), m, e_z);
  return f * f * bracket * (0.5 + 0.5 * std::cos(2.0 * model.k() * r.z()) * s);
}

PotentialJet potential_jet(const Model& model, const Vec3& r, const Vec3& m) {
  const auto& chi = model.chi();
  const double w2 = model.waist() * model.waist();
  const double f2 = std::exp(-2.0 * (r.x() * r.x() + r.y() * r.y()) / w2);
  const double q = (chi.perpendicular + chi.anisotropy * m.x() * m.x()) / chi.maximal;
  const Vec3 grad_q = 2.0 * chi.anisotropy / chi.maximal * m.x() * e_x;
  const double s = shape(model.kind(), model.shape_scale(), m, e_z);
  const Vec3 grad_s = shape_gradient(model.kind(), model.shape_scale(), m, e_z);
  const double kz2 = 2.0 * model.k() * r.z();
  const double c2 = std::cos(kz2), s2 = std::sin(kz2);
  const double h = 0.5 + 0.5 * c2 * s;

  PotentialJet jet;
  jet.value = f2 * q * h;
  jet.grad_r = {-4.0 * r.x() / w2 * jet.value, -4.0 * r.y() / w2 * jet.value,
                -f2 * q * model.k() * s2 * s};
  jet.grad_m = f2 * (h * grad_q + 0.5 * q * c2 * grad_s);
  return jet;
}

PotentialValue optical_potential(const Model& model, const Vec3& r, const Vec3& m,
                                 double photons) {
  const PotentialJet jet = potential_jet(model, r, m);
  const double scale = hbar * model.U0() * photons;
  PotentialValue out;
  out.energy = scale * jet.value;
  out.gradient_r = scale * jet.grad_r;
  out.torque = (scale * jet.grad_m).cross(m);
  return out;
}

Vec3 polarization_direction(const Model& model, const Vec3& m) {
  const auto& chi = model.chi();
  return chi.perpendicular / chi.maximal * e_x + chi.anisotropy / chi.maximal * m.x() * m;
}

std::pair<Vec3, Vec3> polarization_basis(const Vec3& n) {
  const double rho = std::hypot(n.x(), n.y());
  if (rho < 1e-15) {
    return {n.z() >= 0.0 ? e_x : Vec3(-e_x), e_y};
  }
  const double cp = n.x() / rho, sp = n.y() / rho;
  const double ct = n.z(), st = rho;
  return {Vec3(ct * cp, ct * sp, -st), Vec3(-sp, cp, 0.0)};
}

std::array<AmplitudeJet, 2> scattering_amplitudes(const Model& model, const Vec3& n,
                                                  const Vec3& eps1, const Vec3& eps2,
                                                  const Vec3& r, const Vec3& m) {
  const auto& chi = model.chi();
  const double k = model.k();
  const double w2 = model.waist() * model.waist();
  const double f = mode_envelope(model.waist(), r);
  const Vec3 grad_f{-2.0 * r.x() / w2 * f, -2.0 * r.y() / w2 * f, 0.0};

  const Vec3 minus = 0.5 * (e_z - n);
  const Vec3 plus = 0.5 * (e_z + n);
  const double s_minus = shape(model.kind(), model.shape_scale(), m, minus);
  const double s_plus = shape(model.kind(), model.shape_scale(), m, plus);
  const Vec3 gs_minus = shape_gradient(model.kind(), model.shape_scale(), m, minus);
  const Vec3 gs_plus = shape_gradient(model.kind(), model.shape_scale(), m, plus);

  const Complex phase = std::polar(1.0, -k * n.dot(r));
  const Complex up = std::polar(1.0, k * r.z());
  const Complex down = std::conj(up);
  const Complex c = up * s_minus + down * s_plus;
  const Complex d = up * s_minus - down * s_plus;

  const Vec3 b = polarization_direction(model, m);
  const double dchi = chi.anisotropy / chi.maximal;

  std::array<AmplitudeJet, 2> out;
  const std::array<const Vec3*, 2> eps{&eps1, &eps2};
  for (int s = 0; s < 2; ++s) {
    const Vec3& e = *eps[s];
    const double p = e.dot(b);
    const Vec3 grad_p = dchi * (e.dot(m) * e_x + m.x() * e);
    const Complex pre = amplitude_norm * phase;
    AmplitudeJet& jet = out[s];
    jet.value = pre * f * p * c;
    for (int i = 0; i < 3; ++i) {
      jet.d_r[i] = pre * p * (grad_f[i] * c + f * (-I1 * k * n[i] * c + (i == 2 ? I1 * k * d : 0.0)));
      jet.d_m[i] = pre * f * (grad_p[i] * c + p * (up * gs_minus[i] + down * gs_plus[i]));
    }
  }
  return out;
}

AmplitudeJet scattering_amplitude(const Model& model, const Vec3& n, int polarization,
                                  const Vec3& r, const Vec3& m) {
  if (polarization != 1 && polarization != 2)
    throw std::invalid_argument("polarization index must be 1 or 2");
  const auto [eps1, eps2] = polarization_basis(n);
  return scattering_amplitudes(model, n, eps1, eps2, r, m)[polarization - 1];
}

double scattering_rate(const Model& model, const Vec3& r, const Vec3& m,
                       const SphereQuadrature& quadrature) {
  const double f = mode_envelope(model.waist(), r);
  if (f == 0.0) return 0.0;
  const double c2 = std::cos(2.0 * model.k() * r.z());
  const Vec3 b = polarization_direction(model, m);
  const double b2 = b.squaredNorm();
  double sum = 0.0;
  for (std::size_t i = 0; i < quadrature.size(); ++i) {
    const Vec3& n = quadrature.nodes[i];
    const double s_minus = shape(model.kind(), model.shape_scale(), m, 0.5 * (e_z - n));
    const double s_plus = shape(model.kind(), model.shape_scale(), m, 0.5 * (e_z + n));
    const double nb = n.dot(b);
    const double polar = b2 - nb * nb;  // sum over both polarizations of (eps.B)^2
    const double c_sq = s_minus * s_minus + s_plus * s_plus + 2.0 * c2 * s_minus * s_plus;
    sum += quadrature.weights[i] * polar * c_sq;
  }
  return model.gamma0() * f * f * 3.0 / 8.0 * sum;
}

ScatteringRate scattering_rate_checked(const Model& model, const Vec3& r, const Vec3& m,
                                       int degree) {
  ScatteringRate out;
  out.rate = scattering_rate(model, r, m, cached_quadrature(degree));
  const double lower = scattering_rate(model, r, m, cached_quadrature(degree - 1));
  const double scale = std::max(std::abs(out.rate), 1e-300);
  out.relative_change = std::abs(out.rate - lower) / scale;
  out.converged = out.rate == 0.0 || out.relative_change <= 1e-8;
  return out;
}

ScatteringRateEvaluator::ScatteringRateEvaluator(const Model& model, int disk_degree)
    : model_(&model), disk_degree_(disk_degree) {
  if (model.kind() == ParticleKind::disk) {
    cached_quadrature(disk_degree_);  // validates and warms the cache
    return;
  }
  if (model.kind() != ParticleKind::rod) return;
  half_scale_ = 0.5 * model.shape_scale();
  const int n = 20 + static_cast<int>(std::ceil(2.0 * model.shape_scale()));
  const GaussLegendre gl = gauss_legendre(n);
  t_ = gl.nodes;
  w_ = gl.weights;
  for (double t : t_) {
    t2_.push_back(t * t);
    at_.push_back(half_scale_ * t);
    sin_at_.push_back(std::sin(half_scale_ * t));
    cos_at_.push_back(std::cos(half_scale_ * t));
  }
}

std::pair<double, double> ScatteringRateEvaluator::orientation_factors(const Vec3& m) const {
  const Model& model = *model_;
  const auto& chi = model.chi();
  switch (model.kind()) {
    case ParticleKind::sphere: {
      const double ratio = chi.perpendicular / chi.maximal;
      return {0.5 * ratio * ratio, 0.5 * ratio * ratio};
    }
    case ParticleKind::disk: {
      const auto& q = cached_quadrature(disk_degree_);
      const double g0 = scattering_rate(model, Vec3(0.0, 0.0, pi / (4.0 * model.k())), m, q);
      const double g01 = scattering_rate(model, Vec3::Zero(), m, q);
      return {g0 / model.gamma0(), (g01 - g0) / model.gamma0()};
    }
    case ParticleKind::rod: break;
  }

  // Polar axis along m: n = t m + sqrt(1 - t^2) w(phi). Azimuthal average of
  // |B|^2 - (n.B)^2 is a0 + a2 t^2.
  const Vec3 b = polarization_direction(model, m);
  const double b2 = b.squaredNorm();
  const double bm = m.dot(b);
  const double b_perp2 = b2 - bm * bm;
  const double a0 = b2 - 0.5 * b_perp2;
  const double a2 = 0.5 * b_perp2 - bm * bm;

  const double u0 = half_scale_ * m.z();
  const double su = std::sin(u0), cu = std::cos(u0);
  double i0 = 0.0, i2 = 0.0, j0 = 0.0, j2 = 0.0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    // S_-/+ = sinc(kl (m_z -/+ t) / 2)
    const double um = u0 - at_[i];
    const double up = u0 + at_[i];
    const double sm = std::abs(um) < 0.05 ? sinc(um) : (su * cos_at_[i] - cu * sin_at_[i]) / um;
    const double sp = std::abs(up) < 0.05 ? sinc(up) : (su * cos_at_[i] + cu * sin_at_[i]) / up;
    const double even = 0.5 * (sm * sm + sp * sp);
    const double cross = sm * sp;
    i0 += w_[i] * even;
    i2 += w_[i] * t2_[i] * even;
    j0 += w_[i] * cross;
    j2 += w_[i] * t2_[i] * cross;
  }
  // d^2n/4pi = (dt/2)(dphi/2pi); the 1/2 is absorbed by the symmetrised sums
  return {3.0 / 8.0 * (a0 * i0 + a2 * i2), 3.0 / 8.0 * (a0 * j0 + a2 * j2)};
}

double ScatteringRateEvaluator::operator()(const Vec3& r, const Vec3& m) const {
  const Model& model = *model_;
  const double f = mode_envelope(model.waist(), r);
  if (f == 0.0) return 0.0;
  if (model.kind() == ParticleKind::disk)
    return scattering_rate(model, r, m, cached_quadrature(disk_degree_));
  const auto [g0, g1] = orientation_factors(m);
  return model.gamma0() * f * f * (g0 + std::cos(2.0 * model.k() * r.z()) * g1);
}

GeneralizedForce radiation_pressure(const Model& model, const Vec3& r, const Vec3& m,
                                    double photons, int degree) {
  auto accumulate = [&](const SphereQuadrature& q, Vec3& force, Vec3& gen) {
    force.setZero();
    gen.setZero();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto jets = scattering_amplitudes(model, q.nodes[i], q.theta_hat[i], q.phi_hat[i], r, m);
      for (const auto& jet : jets) {
        for (int c = 0; c < 3; ++c) {
          force[c] += q.weights[i] * imag_conj_product(jet.value, jet.d_r[c]);
          gen[c] += q.weights[i] * imag_conj_product(jet.value, jet.d_m[c]);
        }
      }
    }
  };
  GeneralizedForce out;
  if (photons == 0.0) return out;
  const double scale = hbar * model.gamma0() * photons;
  Vec3 force, gen, force_lo, gen_lo;
  accumulate(cached_quadrature(degree), force, gen);
  accumulate(cached_quadrature(degree - 1), force_lo, gen_lo);
  out.force = scale * force;
  out.torque = m.cross(scale * gen);
  // Integrands scale like k f^2; torques additionally carry the rod length.
  const double f = mode_envelope(model.waist(), r);
  const double change = std::max((force - force_lo).norm(), (gen - gen_lo).norm() / model.k());
  out.converged = change <= 1e-8 * model.k() * std::max(f * f, 1e-300);
  return out;
}

DetectorReading detector_intensity(const Model& model, const Vec3& n, double distance,
                                   const Vec3& r, const Vec3& m, double photons) {
  if (!(distance > 0.0)) throw std::invalid_argument("detector distance must be positive");
  const auto [eps1, eps2] = polarization_basis(n);
  const auto jets = scattering_amplitudes(model, n, eps1, eps2, r, m);
  const double pre = hbar * model.cavity().pump_frequency() * model.gamma0() * photons /
                     (4.0 * pi * distance * distance);
  DetectorReading out;
  out.theta = pre * std::norm(jets[0].value);
  out.phi = pre * std::norm(jets[1].value);
  out.total = out.theta + out.phi;
  out.near_field = distance < 100.0 * model.cavity().wavelength;
  return out;
}

}  // namespace rotcav
