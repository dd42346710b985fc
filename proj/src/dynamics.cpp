#include "rotcav/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace rotcav {
namespace {

constexpr std::size_t N = 14;
using Vector = std::array<double, N>;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// Dimensionless variables: positions times k, time times kappa, momenta in
// M kappa / k, angular momenta in I kappa, cavity amplitude in eta / kappa.
// Layout: r(0..2) p(3..5) m(6..8) L(9..11) Re b, Im b (12, 13).
class Scaled {
 public:
  Scaled(const Model& model, CavityMode mode, bool pressure)
      : model_(model), mode_(mode), pressure_(pressure), gamma_(model) {
    k_ = model.k();
    kappa_ = model.kappa();
    b_unit_ = model.eta() > 0.0 ? model.eta() / kappa_ : 1.0;
    p_unit_ = model.mass() * kappa_ / k_;
    rotates_ = model.kind() != ParticleKind::sphere;
    l_unit_ = rotates_ ? model.inertia() * kappa_ : 1.0;
    const double e = hbar * model.U0() * b_unit_ * b_unit_;
    force_coeff_ = e * k_ * k_ / (kappa_ * kappa_ * model.mass());
    torque_coeff_ = rotates_ ? e / (model.inertia() * kappa_ * kappa_) : 0.0;
  }

  Vector pack(const SystemState& s) const {
    Vector y{};
    for (int i = 0; i < 3; ++i) {
      y[i] = s.r[i] * k_;
      y[3 + i] = s.p[i] / p_unit_;
      y[6 + i] = s.rotor.m[i];
      y[9 + i] = rotates_ ? s.rotor.L[i] / l_unit_ : 0.0;
    }
    y[12] = s.b.real() / b_unit_;
    y[13] = s.b.imag() / b_unit_;
    return y;
  }

  SystemState unpack(const Vector& y, double tau, const RotorState& like) const {
    SystemState s;
    for (int i = 0; i < 3; ++i) {
      s.r[i] = y[i] / k_;
      s.p[i] = y[3 + i] * p_unit_;
      s.rotor.m[i] = y[6 + i];
      s.rotor.L[i] = rotates_ ? y[9 + i] * l_unit_ : like.L[i];
    }
    s.rotor.spin = like.spin;
    s.b = Complex(y[12], y[13]) * b_unit_;
    s.t = tau / kappa_;
    return s;
  }

  double time(double t) const { return t * kappa_; }

  /// Slaved amplitude at the configuration stored in y, dimensionless.
  Complex slaved(const Vector& y) const {
    const Vec3 r(y[0] / k_, y[1] / k_, y[2] / k_);
    const Vec3 m(y[6], y[7], y[8]);
    return adiabatic_amplitude(model_, r, m) / b_unit_;
  }

  void eval(const Vector& y, Vector& dy) const {
    const Vec3 r(y[0] / k_, y[1] / k_, y[2] / k_);
    const Vec3 m(y[6], y[7], y[8]);
    const Vec3 L(y[9], y[10], y[11]);
    const PotentialJet jet = potential_jet(model_, r, m);

    Complex b(y[12], y[13]);
    Complex db{};
    if (mode_ != CavityMode::frozen) {
      const double gamma = gamma_(r, m);
      const Complex rate(1.0 + 0.5 * gamma / kappa_,
                         -(model_.detuning() - model_.U0() * jet.value) / kappa_);
      if (mode_ == CavityMode::adiabatic) {
        b = (model_.eta() / (kappa_ * b_unit_)) / rate;
      } else {
        db = -rate * b + model_.eta() / (kappa_ * b_unit_);
      }
    }
    const double n = std::norm(b);

    Vec3 force = -force_coeff_ * n * jet.grad_r / k_;
    Vec3 torque = rotates_ ? Vec3(torque_coeff_ * n * jet.grad_m.cross(m)) : Vec3::Zero();
    if (pressure_ && n > 0.0) {
      const GeneralizedForce rp =
          radiation_pressure(model_, r, m, n * b_unit_ * b_unit_);
      force += rp.force * k_ / (model_.mass() * kappa_ * kappa_);
      if (rotates_) torque += rp.torque / (model_.inertia() * kappa_ * kappa_);
    }
    const Vec3 m_dot = rotates_ ? Vec3(L.cross(m)) : Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
      dy[i] = y[3 + i];
      dy[3 + i] = force[i];
      dy[6 + i] = m_dot[i];
      dy[9 + i] = torque[i];
    }
    dy[12] = db.real();
    dy[13] = db.imag();
  }

  void project(Vector& y) const {
    Vec3 m(y[6], y[7], y[8]);
    m.normalize();
    Vec3 L(y[9], y[10], y[11]);
    L -= L.dot(m) * m;
    for (int i = 0; i < 3; ++i) {
      y[6 + i] = m[i];
      y[9 + i] = L[i];
    }
    if (mode_ == CavityMode::adiabatic) {
      const Complex b = slaved(y);
      y[12] = b.real();
      y[13] = b.imag();
    }
  }

 private:
  const Model& model_;
  CavityMode mode_;
  bool pressure_;
  ScatteringRateEvaluator gamma_;
  double k_ = 0, kappa_ = 0, b_unit_ = 0, p_unit_ = 0, l_unit_ = 0;
  double force_coeff_ = 0, torque_coeff_ = 0;
  bool rotates_ = true;
};

bool all_finite(const Vector& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

std::string describe(const SystemState& s) {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << s.t << " r=(" << s.r.transpose() << ") p=(" << s.p.transpose() << ") m=("
     << s.rotor.m.transpose() << ") L=(" << s.rotor.L.transpose() << ") b=" << s.b;
  return os.str();
}

}  // namespace

bool SystemState::finite() const {
  return r.allFinite() && p.allFinite() && rotor.m.allFinite() && rotor.L.allFinite() &&
         std::isfinite(rotor.spin) && std::isfinite(b.real()) && std::isfinite(b.imag()) &&
         std::isfinite(t);
}

std::string_view to_string(CavityMode mode) {
  switch (mode) {
    case CavityMode::dynamic: return "dynamic";
    case CavityMode::adiabatic: return "adiabatic";
    case CavityMode::frozen: return "frozen";
  }
  return "dynamic";
}

CavityMode cavity_mode_from_string(std::string_view name) {
  if (name == "dynamic") return CavityMode::dynamic;
  if (name == "adiabatic") return CavityMode::adiabatic;
  if (name == "frozen") return CavityMode::frozen;
  throw std::invalid_argument("unknown cavity mode '" + std::string(name) +
                              "' (expected dynamic, adiabatic or frozen)");
}

void IntegratorConfig::validate() const {
  auto in_range = [](double v) { return v >= 1e-12 && v <= 1e-4; };
  if (!in_range(rel_tol)) throw std::invalid_argument("rel_tol must lie in [1e-12, 1e-4]");
  if (!in_range(abs_tol)) throw std::invalid_argument("abs_tol must lie in [1e-12, 1e-4]");
  if (max_step < 0.0) throw std::invalid_argument("max_step must be non-negative");
  if (output_interval < 0.0) throw std::invalid_argument("output_interval must be non-negative");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

Complex empty_cavity_amplitude(const Model& model) {
  return model.eta() / Complex(model.kappa(), -model.detuning());
}

Complex adiabatic_amplitude(const Model& model, const Vec3& r, const Vec3& m) {
  const double v = dimensionless_potential(model, r, m);
  const double gamma = ScatteringRateEvaluator(model)(r, m);
  return model.eta() /
         Complex(model.kappa() + 0.5 * gamma, -(model.detuning() - model.U0() * v));
}

StateDerivative derivative(const Model& model, const SystemState& state, CavityMode mode,
                           bool radiation_pressure) {
  Scaled scaled(model, mode, radiation_pressure);
  Vector y = scaled.pack(state), dy{};
  scaled.eval(y, dy);
  if (!all_finite(dy)) throw IntegrationError("non-finite derivative at " + describe(state), state);
  // convert back to SI rates
  const double kappa = model.kappa();
  const SystemState rate = scaled.unpack(dy, 0.0, state.rotor);
  StateDerivative d;
  d.r_dot = rate.r * kappa;
  d.p_dot = rate.p * kappa;
  d.m_dot = rate.rotor.m * kappa;
  d.L_dot = model.kind() == ParticleKind::sphere ? Vec3::Zero() : Vec3(rate.rotor.L * kappa);
  d.b_dot = rate.b * kappa;
  return d;
}

double kinetic_energy(const Model& model, const SystemState& state) {
  double e = state.p.squaredNorm() / (2.0 * model.mass());
  if (model.kind() != ParticleKind::sphere) {
    e += rotational_energy(state.rotor, model.inertia(), model.axial_inertia());
  }
  return e;
}

double total_energy(const Model& model, const SystemState& state) {
  const double v = dimensionless_potential(model, state.r, state.rotor.m);
  return kinetic_energy(model, state) + hbar * model.U0() * std::norm(state.b) * v;
}

Trajectory integrate(const Model& model, const SystemState& initial, double t_end,
                     const IntegratorConfig& config, const StepObserver& observer) {
  config.validate();
  if (!(t_end > initial.t)) throw std::invalid_argument("t_end must exceed the initial time");
  if (!initial.finite()) throw std::invalid_argument("initial state is not finite");

  const Scaled sys(model, config.cavity_mode, config.radiation_pressure);
  const ScatteringRateEvaluator gamma_sc(model);
  const RotorState rotor0 = initial.rotor;

  Trajectory out;
  Vector y = sys.pack(initial);
  sys.project(y);
  double tau = sys.time(initial.t);
  const double tau_end = sys.time(t_end);
  const double h_max = config.max_step > 0.0 ? sys.time(config.max_step) : tau_end - tau;
  const double out_step = sys.time(config.output_interval);
  long next_sample = 0;

  const double kinetic0 = kinetic_energy(model, initial);
  const double depth = hbar * std::abs(model.U0()) * std::norm(empty_cavity_amplitude(model));
  const double blow_up = 10.0 * std::max(kinetic0, depth);

  auto state_at = [&](const Vector& v, double t) { return sys.unpack(v, t, rotor0); };
  auto record = [&](const Vector& v, double t) {
    TrajectorySample sample;
    sample.state = state_at(v, t);
    sample.energy = total_energy(model, sample.state);
    sample.photons = std::norm(sample.state.b);
    sample.scattering = gamma_sc(sample.state.r, sample.state.rotor.m);
    out.samples.push_back(std::move(sample));
  };
  auto fail = [&](const std::string& why, const Vector& v, double t) {
    const SystemState s = state_at(v, t);
    throw IntegrationError(why + " at " + describe(s), s);
  };

  if (out_step > 0.0) {
    record(y, tau);
    next_sample = 1;
  }

  Vector k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, y1{};
  sys.eval(y, k1);
  if (!all_finite(k1)) fail("non-finite derivative", y, tau);

  double h = std::min(0.01, h_max);
  double fac_old = 1e-4;
  bool last_rejected = false;
  long steps = 0;

  while (tau < tau_end) {
    if (++steps > config.max_steps) fail("step budget exhausted", y, tau);
    if (tau + h > tau_end) h = tau_end - tau;
    if (h < 1e-14 * std::max(1.0, std::abs(tau))) fail("step size underflow", y, tau);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    sys.eval(tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    sys.eval(tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    sys.eval(tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    sys.eval(tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    sys.eval(tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    sys.eval(y1, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) {
      // treat as a failed step with a hard shrink
      h *= 0.1;
      last_rejected = true;
      ++out.rejected_steps;
      continue;
    }

    // PI controller
    const double fac11 = std::pow(err, 0.17);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(fac_old, 0.04);
      fac = std::clamp(fac / 0.9, 0.2, 10.0);
      double h_new = std::min(h / fac, h_max);
      if (last_rejected) h_new = std::min(h_new, h);
      fac_old = std::max(err, 1e-4);

      // dense output over [tau, tau + h]
      if (out_step > 0.0) {
        const double t0 = sys.time(initial.t);
        while (true) {
          const double ts = t0 + next_sample * out_step;
          if (ts > tau + h || ts > tau_end) break;
          const double theta = (ts - tau) / h;
          Vector ys{};
          for (std::size_t i = 0; i < N; ++i) {
            const double r1 = y[i];
            const double r2 = y1[i] - y[i];
            const double r3 = h * k1[i] - r2;
            const double r4 = r2 - h * k7[i] - r3;
            const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
            ys[i] = r1 + theta * (r2 + (1.0 - theta) * (r3 + theta * (r4 + (1.0 - theta) * r5)));
          }
          sys.project(ys);
          record(ys, ts);
          ++next_sample;
        }
      }

      tau = (tau_end - (tau + h) < 1e-12 * std::abs(tau_end)) ? tau_end : tau + h;
      y = y1;
      sys.project(y);
      if (!all_finite(y)) fail("non-finite state", y, tau);
      sys.eval(y, k1);
      if (!all_finite(k1)) fail("non-finite derivative", y, tau);
      ++out.accepted_steps;
      last_rejected = false;
      h = h_new;

      const SystemState current = state_at(y, tau);
      const double energy = total_energy(model, current);
      if (energy > blow_up) fail("energy blow-up", y, tau);
      if (observer && !observer(current, energy)) {
        out.stopped_early = true;
        break;
      }
    } else {
      h /= std::min(10.0, fac11 / 0.9);
      last_rejected = true;
      ++out.rejected_steps;
    }
  }
  out.final_state = state_at(y, tau);
  return out;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::captured: return "captured";
    case Outcome::transmitted: return "transmitted";
    case Outcome::undecided: return "undecided";
  }
  return "undecided";
}

CaptureMonitor::CaptureMonitor(const Model& model, CaptureRule rule)
    : waist_(model.waist()), rule_(rule) {
  const Complex b_ss = adiabatic_amplitude(model, Vec3::Zero(), trapped_orientation(model.kind()));
  threshold_ = -rule.depth_fraction * hbar * std::abs(model.U0()) * std::norm(b_ss);
}

Outcome CaptureMonitor::update(const SystemState& state, double energy) {
  if (outcome_ != Outcome::undecided) return outcome_;
  const double x = state.r.x();
  if (energy < threshold_ && std::abs(x) < waist_) {
    if (bound_since_ < 0.0) bound_since_ = state.t;
    if (state.t - bound_since_ >= rule_.hold_time) outcome_ = Outcome::captured;
  } else {
    bound_since_ = -1.0;
    if (std::abs(x) > rule_.exit_waists * waist_ && energy > 0.0 && x * state.p.x() > 0.0)
      outcome_ = Outcome::transmitted;
  }
  return outcome_;
}

Outcome classify(const Model& model, const Trajectory& trajectory, const CaptureRule& rule) {
  CaptureMonitor monitor(model, rule);
  for (const auto& s : trajectory.samples) monitor.update(s.state, s.energy);
  if (monitor.outcome() == Outcome::undecided && trajectory.samples.empty())
    monitor.update(trajectory.final_state, total_energy(model, trajectory.final_state));
  return monitor.outcome();
}

}  // namespace rotcav
