#pragma once

// Experiment drivers: the operating point derived from the helium model and
// the gate benchmarks built on top of evolve().

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "seholo/dynamics.hpp"
#include "seholo/helium.hpp"

namespace seholo {

/// Everything needed to turn a holding field into pulses, detunings and
/// decay channels. Defaults are the 100 V/cm, T = 25 ns operating point.
struct ModelConfig {
  double e_perp = 100.0;          // V/cm
  double pulse_duration = 25.0;   // ns
  double sigma = 0.0;             // ns; <= 0 means pulse_duration / 8
  double step = 0.0;              // ns; <= 0 means pulse_duration / 5000
  double kappa_scale = 1.0;
  bool crosstalk = false;
  /// delta_13 at the reference field; fixes the field gradient (rad/ns).
  double delta13_reference = 0.88;
  double reference_field = 100.0;  // V/cm
  std::optional<double> delta13_override;
  std::optional<double> delta23_override;
  std::optional<double> delta12_override;
  helium::PhysicalConstants constants;
  helium::Grid grid;

  double resolved_sigma() const { return sigma > 0.0 ? sigma : pulse_duration / 8.0; }
  double resolved_step() const { return step > 0.0 ? step : pulse_duration / 5000.0; }
};

struct OperatingPoint {
  double e_perp = 0.0;
  GaussianPulse pulse = GaussianPulse::with_area(25.0);
  double step = 25.0 / 5000.0;
  bool crosstalk = false;
  double field_gradient = 0.0;  // T/m
  DetuningSet detunings;
  helium::DecayRates rates;     // already multiplied by kappa_scale
  std::vector<LindbladChannel> channels;
  std::vector<double> expected_z_nm;
};

/// Magnet gradient implied by `cfg` (calibrated at the reference field).
double field_gradient(const ModelConfig& cfg);

/// Solves the vertical problem at cfg.e_perp and assembles the operating point.
/// `gradient` skips the reference solve when already known.
OperatingPoint make_operating_point(const ModelConfig& cfg,
                                    std::optional<double> gradient = std::nullopt);

/// Runs `n` independent jobs on up to `jobs` threads; results keep index order.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

// --- Controlled-NOT on five inputs -------------------------------------------

struct GateCase {
  std::string input_label;
  std::string ideal_label;
  StateVector input;
  StateVector ideal;
};

/// The five inputs of the CNOT benchmark and their ideal outputs.
std::vector<GateCase> cnot_cases();

/// (|dn> + |up>) (x) |1> / sqrt 2 and its CNOT image (|dn,1> + |up,2>) / sqrt 2.
GateCase entangling_case();

struct CnotRow {
  std::string input_label;
  std::string ideal_label;
  double fidelity = 0.0;
  PhysicalityReport physicality;
};

DriveScheme cnot_scheme(const OperatingPoint& op);

std::vector<CnotRow> run_cnot_table(const OperatingPoint& op, int jobs = 1);

/// Fidelity trajectory of the entangling input under the CNOT.
Trajectory run_entangling_trajectory(const OperatingPoint& op, int sample_stride = 50);

// --- Single-qubit gates with four drives ------------------------------------

/// The six Rydberg inputs |1>, |2>, (|1> +- |2>)/sqrt 2, (|1> +- i|2>)/sqrt 2.
std::vector<Ket> single_qubit_inputs();

struct SingleQubitResult {
  double average = 0.0;
  std::vector<double> per_input;
  PhysicalityReport physicality;
};

SingleQubitResult run_single_qubit_average(const GateParams& g, double lag,
                                           const OperatingPoint& op, int jobs = 1);

// --- Rydberg state as control, spin as target --------------------------------

struct RydbergControlReport {
  double rabi = 0.0;
  double duration = 0.0;
  double delta12 = 0.0;
  double flip_fidelity = 0.0;  // |dn,2> -> |up,2>
  double idle_fidelity = 0.0;  // |dn,1> -> |dn,1>
};

RydbergControlReport run_rydberg_control_gate(double rabi, double duration,
                                              const OperatingPoint& op);

// --- Field dependence ---------------------------------------------------------

struct FieldPoint {
  double e_perp = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  double fidelity = 0.0;
  PhysicalityReport physicality;
};

/// Decay rates per field without running any dynamics.
std::vector<FieldPoint> decay_rate_sweep(const ModelConfig& cfg,
                                         const std::vector<double>& fields, int jobs = 1);

/// Entangling-input CNOT fidelity per field; rates and detunings are
/// recomputed at every point with a fixed magnet gradient.
std::vector<FieldPoint> fidelity_vs_field(const ModelConfig& cfg,
                                          const std::vector<double>& fields, int jobs = 1);

std::vector<double> linspace(double first, double last, int n);

}  // namespace seholo
