#include "seholo/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "seholo/errors.hpp"

namespace seholo {

namespace {

constexpr Complex kI{0.0, 1.0};

int idx(Spin s, int n) { return BasisLabel{s, n}.index(); }

// Adds omega * (c31 e^{i d13 t} |s,3><s,1| + c32 e^{i d23 t} |s,3><s,2| + h.c.).
// A zero phase rate is a resonant drive.
void add_lambda_drive(Operator& h, Spin s, const GateParams& g, double omega, double d13,
                      double d23, double t) {
  if (omega == 0.0) return;
  const Complex c31 = std::sin(g.theta() / 2.0) * std::exp(kI * g.phi());
  const Complex c32 = -std::cos(g.theta() / 2.0);
  const auto add = [&](int lower, Complex amp, double detuning) {
    if (std::abs(detuning) > kMaxResolvedDetuning) return;
    const Complex v = omega * amp * std::exp(kI * detuning * t);
    h(idx(s, 3), idx(s, lower)) += v;
    h(idx(s, lower), idx(s, 3)) += std::conj(v);
  };
  add(1, c31, d13);
  add(2, c32, d23);
}

void add_spin_flip(Operator& h, int n, double half_rabi, double detuning, double t) {
  if (std::abs(detuning) > kMaxResolvedDetuning) return;
  const Complex v = half_rabi * std::exp(kI * detuning * t);
  h(idx(Spin::up, n), idx(Spin::down, n)) += v;
  h(idx(Spin::down, n), idx(Spin::up, n)) += std::conj(v);
}

void require_pi_pulse(const GaussianPulse& p) {
  if (!has_area(p, std::numbers::pi)) {
    std::ostringstream os;
    os << "drive pulse must carry area pi (got " << p.total_area() << ")";
    throw InvalidArgument(os.str());
  }
}

std::string time_tag(double t) {
  std::ostringstream os;
  os << "at t = " << t << " ns";
  return os.str();
}

}  // namespace

double DriveScheme::end_time() const {
  return std::visit(
      [this](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ControlledU>) {
          return pulse.end();
        } else if constexpr (std::is_same_v<V, SingleQubitFourDrive>) {
          return pulse.end() + v.lag;
        } else {
          return v.duration;
        }
      },
      variant);
}

LindbladChannel::LindbladChannel(BasisLabel from, BasisLabel to, double rate)
    : from_(from), to_(to), rate_(rate) {
  from.index();
  to.index();
  if (from.spin != to.spin) throw InvalidArgument("decay channels must preserve spin");
  if (to.rydberg >= from.rydberg) {
    throw InvalidArgument("decay channels must lower the Rydberg index");
  }
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("decay rate must be finite and nonnegative");
  }
}

Operator LindbladChannel::collapse_operator() const {
  return outer(kCompositeDim, to_.index(), from_.index());
}

std::vector<LindbladChannel> rydberg_decay_channels(double k12, double k13, double k23) {
  std::vector<LindbladChannel> out;
  for (Spin s : {Spin::down, Spin::up}) {
    out.emplace_back(BasisLabel{s, 3}, BasisLabel{s, 1}, k13);
    out.emplace_back(BasisLabel{s, 3}, BasisLabel{s, 2}, k23);
    out.emplace_back(BasisLabel{s, 2}, BasisLabel{s, 1}, k12);
  }
  return out;
}

Operator build_hamiltonian(const DriveScheme& scheme, const DetuningSet& det, double t) {
  Operator h = Operator::Zero(kCompositeDim, kCompositeDim);
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ControlledU>) {
          require_pi_pulse(scheme.pulse);
          const double omega = scheme.pulse.envelope(t);
          add_lambda_drive(h, Spin::up, v.gate, omega, 0.0, 0.0, t);
          if (scheme.crosstalk) {
            add_lambda_drive(h, Spin::down, v.gate, omega, det.delta13, det.delta23, t);
          }
        } else if constexpr (std::is_same_v<V, SingleQubitFourDrive>) {
          require_pi_pulse(scheme.pulse);
          if (v.lag < 0.0 || v.lag > scheme.pulse.duration()) {
            throw InvalidArgument("four-drive lag must lie in [0, T]");
          }
          const double omega_up = scheme.pulse.envelope(t);
          const double omega_dn = scheme.pulse.shifted(v.lag).envelope(t);
          add_lambda_drive(h, Spin::up, v.gate, omega_up, 0.0, 0.0, t);
          add_lambda_drive(h, Spin::down, v.gate, omega_dn, 0.0, 0.0, t);
          if (scheme.crosstalk) {
            add_lambda_drive(h, Spin::down, v.gate, omega_up, det.delta13, det.delta23, t);
            add_lambda_drive(h, Spin::up, v.gate, omega_dn, -det.delta13, -det.delta23, t);
          }
        } else {
          if (t < 0.0 || t > v.duration) return;
          const double half = 0.5 * v.rabi;
          add_spin_flip(h, 2, half, 0.0, t);
          add_spin_flip(h, 1, half, det.delta12, t);
          add_spin_flip(h, 3, half, -det.delta23, t);
        }
      },
      scheme.variant);
  return h;
}

Operator lindblad_rhs(const Operator& rho, const Operator& h,
                      std::span<const LindbladChannel> channels) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw DimensionError("lindblad_rhs: rho and H differ in shape");
  }
  Operator d = -kI * (h * rho - rho * h);
  // C = |m><n| reduces the dissipator to row/column updates:
  //   C rho C^dag = rho_nn |m><m|,  {C^dag C, rho} = |n><n| rho + rho |n><n|.
  for (const auto& ch : channels) {
    if (ch.rate() == 0.0) continue;
    const int n = ch.from().index();
    const int m = ch.to().index();
    if (n >= rho.rows()) throw DimensionError("lindblad_rhs: channel outside Hilbert space");
    const double k = ch.rate();
    d(m, m) += k * rho(n, n);
    d.row(n) -= 0.5 * k * rho.row(n);
    d.col(n) -= 0.5 * k * rho.col(n);
  }
  return d;
}

Trajectory evolve(const DensityMatrix& rho0, const DriveScheme& scheme, const DetuningSet& det,
                  std::span<const LindbladChannel> channels, const EvolveOptions& options) {
  if (!(options.step > 0.0)) throw InvalidArgument("evolve: step must be positive");
  if (rho0.dim() != kCompositeDim) throw DimensionError("evolve: expected a 6x6 state");
  const double t0 = options.t_start;
  const double t1 = options.t_end.value_or(scheme.end_time());
  if (!(t1 > t0)) throw InvalidArgument("evolve: empty time span");
  const long steps = std::max(1L, std::lround((t1 - t0) / options.step));
  const double dt = (t1 - t0) / static_cast<double>(steps);
  const int stride = std::max(1, options.sample_stride);

  Trajectory traj;
  const auto record = [&](double t, const Operator& rho) {
    try {
      DensityMatrix state(rho, options.tolerances);
      const double drift = std::abs(state.trace() - 1.0);
      if (drift > options.max_trace_drift) {
        throw InvariantViolation("trace drift", std::to_string(drift));
      }
      if (options.target) traj.fidelities.push_back(state_fidelity(state, *options.target));
      traj.times.push_back(t);
      traj.states.push_back(std::move(state));
    } catch (const InvariantViolation& e) {
      throw InvariantViolation(e.invariant(), std::string(e.what()) + " " + time_tag(t));
    }
  };

  Operator rho = rho0.matrix();
  record(t0, rho);
  Operator h_start = build_hamiltonian(scheme, det, t0);
  for (long i = 1; i <= steps; ++i) {
    const double t = t0 + static_cast<double>(i - 1) * dt;
    const Operator h_mid = build_hamiltonian(scheme, det, t + 0.5 * dt);
    const Operator h_end = build_hamiltonian(scheme, det, t + dt);
    const Operator k1 = lindblad_rhs(rho, h_start, channels);
    const Operator k2 = lindblad_rhs(rho + 0.5 * dt * k1, h_mid, channels);
    const Operator k3 = lindblad_rhs(rho + 0.5 * dt * k2, h_mid, channels);
    const Operator k4 = lindblad_rhs(rho + dt * k3, h_end, channels);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_start = h_end;
    if (!is_finite(rho)) {
      throw InvariantViolation("finite", "state diverged " + time_tag(t + dt));
    }
    if (i % stride == 0 || i == steps) record(t0 + static_cast<double>(i) * dt, rho);
  }
  return traj;
}

Operator propagate_unitary(const DriveScheme& scheme, const DetuningSet& det, double t_start,
                           double t_end, double step) {
  if (!(step > 0.0) || !(t_end > t_start)) {
    throw InvalidArgument("propagate_unitary: need step > 0 and t_end > t_start");
  }
  const long steps = std::max(1L, std::lround((t_end - t_start) / step));
  const double dt = (t_end - t_start) / static_cast<double>(steps);
  Operator u = Operator::Identity(kCompositeDim, kCompositeDim);
  const auto f = [](const Operator& h, const Operator& x) -> Operator { return -kI * (h * x); };
  Operator h_start = build_hamiltonian(scheme, det, t_start);
  for (long i = 0; i < steps; ++i) {
    const double t = t_start + static_cast<double>(i) * dt;
    const Operator h_mid = build_hamiltonian(scheme, det, t + 0.5 * dt);
    const Operator h_end = build_hamiltonian(scheme, det, t + dt);
    const Operator k1 = f(h_start, u);
    const Operator k2 = f(h_mid, u + 0.5 * dt * k1);
    const Operator k3 = f(h_mid, u + 0.5 * dt * k2);
    const Operator k4 = f(h_end, u + dt * k3);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_start = h_end;
  }
  return u;
}

void PhysicalityReport::merge(const PhysicalityReport& other) {
  max_trace_drift = std::max(max_trace_drift, other.max_trace_drift);
  max_hermiticity = std::max(max_hermiticity, other.max_hermiticity);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
  max_purity_drift = std::max(max_purity_drift, other.max_purity_drift);
}

PhysicalityReport physicality(const Trajectory& traj) {
  PhysicalityReport r;
  if (traj.states.empty()) return r;
  const double purity0 = traj.states.front().purity();
  for (const auto& s : traj.states) {
    r.max_trace_drift = std::max(r.max_trace_drift, std::abs(s.trace() - 1.0));
    r.max_hermiticity = std::max(r.max_hermiticity, hermiticity_error(s.matrix()));
    r.min_eigenvalue = std::min(r.min_eigenvalue, s.min_eigenvalue());
    r.max_purity_drift = std::max(r.max_purity_drift, std::abs(s.purity() - purity0));
  }
  return r;
}

Operator computational_block(const Operator& op) {
  if (op.rows() != kCompositeDim || op.cols() != kCompositeDim) {
    throw DimensionError("computational_block: expected a 6x6 operator");
  }
  constexpr int keep[4] = {0, 1, 3, 4};
  Operator out(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = op(keep[i], keep[j]);
  }
  return out;
}

}  // namespace seholo
