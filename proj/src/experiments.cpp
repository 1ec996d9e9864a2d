#include "seholo/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "seholo/errors.hpp"

namespace seholo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector ket(std::initializer_list<std::pair<BasisLabel, Complex>> terms) {
  Ket v = Ket::Zero(kCompositeDim);
  for (const auto& [label, amp] : terms) v(label.index()) += amp;
  return StateVector(std::move(v));
}

constexpr BasisLabel dn1{Spin::down, 1};
constexpr BasisLabel dn2{Spin::down, 2};
constexpr BasisLabel up1{Spin::up, 1};
constexpr BasisLabel up2{Spin::up, 2};

struct RunResult {
  double fidelity = 0.0;
  PhysicalityReport physicality;
};

RunResult run_case(const DriveScheme& scheme, const OperatingPoint& op, const StateVector& input,
                   const StateVector& ideal) {
  EvolveOptions opts;
  opts.step = op.step;
  opts.target = ideal.projector();
  const Trajectory traj = evolve(input.projector(), scheme, op.detunings, op.channels, opts);
  return {traj.fidelities.back(), physicality(traj)};
}

}  // namespace

double field_gradient(const ModelConfig& cfg) {
  const auto ref = helium::solve_vertical_states(cfg.reference_field, cfg.grid, 3, cfg.constants,
                                                 {.check_refinement = false});
  return helium::gradient_for_delta13(ref, cfg.delta13_reference, cfg.constants);
}

OperatingPoint make_operating_point(const ModelConfig& cfg, std::optional<double> gradient) {
  if (!(cfg.kappa_scale >= 0.0)) throw InvalidArgument("kappa_scale must be nonnegative");
  OperatingPoint op;
  op.e_perp = cfg.e_perp;
  op.pulse = GaussianPulse::with_area(cfg.pulse_duration, cfg.resolved_sigma());
  op.step = cfg.resolved_step();
  op.crosstalk = cfg.crosstalk;
  op.field_gradient = gradient ? *gradient : field_gradient(cfg);

  const auto sol = helium::solve_vertical_states(cfg.e_perp, cfg.grid, 3, cfg.constants);
  op.expected_z_nm = sol.expected_z_nm;
  op.detunings = helium::transition_detunings(sol, op.field_gradient, cfg.constants);
  if (cfg.delta13_override) op.detunings.delta13 = *cfg.delta13_override;
  if (cfg.delta23_override) op.detunings.delta23 = *cfg.delta23_override;
  if (cfg.delta12_override) op.detunings.delta12 = *cfg.delta12_override;
  op.rates = helium::decay_rates(sol, cfg.constants).scaled(cfg.kappa_scale);
  op.channels = rydberg_decay_channels(op.rates.k12, op.rates.k13, op.rates.k23);
  return op;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  if (n <= 0) return;
  const int workers = std::clamp(jobs, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int first_error_index = n;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<GateCase> cnot_cases() {
  return {
      {"|down,1>", "|down,1>", StateVector::basis(dn1), StateVector::basis(dn1)},
      {"|down,2>", "|down,2>", StateVector::basis(dn2), StateVector::basis(dn2)},
      {"|up,1>", "|up,2>", StateVector::basis(up1), StateVector::basis(up2)},
      {"|up,2>", "|up,1>", StateVector::basis(up2), StateVector::basis(up1)},
      entangling_case(),
  };
}

GateCase entangling_case() {
  return {"(|down>+|up>)|1>/sqrt2", "(|down,1>+|up,2>)/sqrt2", ket({{dn1, 1.0}, {up1, 1.0}}),
          ket({{dn1, 1.0}, {up2, 1.0}})};
}

DriveScheme cnot_scheme(const OperatingPoint& op) {
  return {ControlledU{GateParams::not_gate()}, op.pulse, op.crosstalk};
}

std::vector<CnotRow> run_cnot_table(const OperatingPoint& op, int jobs) {
  const auto cases = cnot_cases();
  const DriveScheme scheme = cnot_scheme(op);
  std::vector<CnotRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), jobs, [&](int i) {
    const auto r = run_case(scheme, op, cases[i].input, cases[i].ideal);
    rows[i] = {cases[i].input_label, cases[i].ideal_label, r.fidelity, r.physicality};
  });
  return rows;
}

Trajectory run_entangling_trajectory(const OperatingPoint& op, int sample_stride) {
  const GateCase c = entangling_case();
  EvolveOptions opts;
  opts.step = op.step;
  opts.sample_stride = sample_stride;
  opts.target = c.ideal.projector();
  return evolve(c.input.projector(), cnot_scheme(op), op.detunings, op.channels, opts);
}

std::vector<Ket> single_qubit_inputs() {
  const Complex i{0.0, 1.0};
  std::vector<Ket> out(6, Ket::Zero(2));
  out[0] << 1.0, 0.0;
  out[1] << 0.0, 1.0;
  out[2] << kInvSqrt2, kInvSqrt2;
  out[3] << kInvSqrt2, -kInvSqrt2;
  out[4] << kInvSqrt2, i * kInvSqrt2;
  out[5] << kInvSqrt2, -i * kInvSqrt2;
  return out;
}

SingleQubitResult run_single_qubit_average(const GateParams& g, double lag,
                                           const OperatingPoint& op, int jobs) {
  const DriveScheme scheme{SingleQubitFourDrive{g, lag}, op.pulse, op.crosstalk};
  const Operator u = holonomic_unitary(g);
  Ket spin(2);
  spin << kInvSqrt2, kInvSqrt2;
  const auto inputs = single_qubit_inputs();

  SingleQubitResult result;
  result.per_input.resize(inputs.size());
  std::vector<PhysicalityReport> reports(inputs.size());
  parallel_for(static_cast<int>(inputs.size()), jobs, [&](int k) {
    Ket rydberg = Ket::Zero(kRydbergDim);
    rydberg.head(2) = inputs[k];
    Ket ideal = Ket::Zero(kRydbergDim);
    ideal.head(2) = u * inputs[k];

    const Ket psi0 = tensor_product(spin, rydberg);
    EvolveOptions opts;
    opts.step = op.step;
    const Trajectory traj =
        evolve(StateVector(psi0).projector(), scheme, op.detunings, op.channels, opts);
    const DensityMatrix reduced = partial_trace_spin(traj.final_state());
    result.per_input[k] = state_fidelity(reduced, StateVector(ideal).projector());
    reports[k] = physicality(traj);
  });
  double sum = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    sum += result.per_input[k];
    result.physicality.merge(reports[k]);
  }
  result.average = sum / static_cast<double>(inputs.size());
  return result;
}

RydbergControlReport run_rydberg_control_gate(double rabi, double duration,
                                              const OperatingPoint& op) {
  if (!(rabi > 0.0) || !(duration > 0.0)) {
    throw InvalidArgument("rydberg control gate needs rabi > 0 and duration > 0");
  }
  const DriveScheme scheme{RydbergControlSpinRabi{rabi, duration}, op.pulse, true};
  RydbergControlReport report{rabi, duration, op.detunings.delta12, 0.0, 0.0};
  report.flip_fidelity =
      run_case(scheme, op, StateVector::basis(dn2), StateVector::basis(up2)).fidelity;
  report.idle_fidelity =
      run_case(scheme, op, StateVector::basis(dn1), StateVector::basis(dn1)).fidelity;
  return report;
}

std::vector<FieldPoint> decay_rate_sweep(const ModelConfig& cfg, const std::vector<double>& fields,
                                         int jobs) {
  const double gradient = field_gradient(cfg);
  std::vector<FieldPoint> out(fields.size());
  parallel_for(static_cast<int>(fields.size()), jobs, [&](int i) {
    ModelConfig local = cfg;
    local.e_perp = fields[i];
    const OperatingPoint op = make_operating_point(local, gradient);
    out[i] = {fields[i], op.rates.total2(), op.rates.total3(), 0.0, {}};
  });
  return out;
}

std::vector<FieldPoint> fidelity_vs_field(const ModelConfig& cfg, const std::vector<double>& fields,
                                          int jobs) {
  const double gradient = field_gradient(cfg);
  const GateCase c = entangling_case();
  std::vector<FieldPoint> out(fields.size());
  parallel_for(static_cast<int>(fields.size()), jobs, [&](int i) {
    ModelConfig local = cfg;
    local.e_perp = fields[i];
    const OperatingPoint op = make_operating_point(local, gradient);
    const auto r = run_case(cnot_scheme(op), op, c.input, c.ideal);
    out[i] = {fields[i], op.rates.total2(), op.rates.total3(), r.fidelity, r.physicality};
  });
  return out;
}

std::vector<double> linspace(double first, double last, int n) {
  if (n < 1) throw InvalidArgument("linspace: need at least one point");
  if (n == 1) return {first};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = first + (last - first) * i / (n - 1);
  return out;
}

}  // namespace seholo
