#pragma once

// Driven spin (x) Rydberg dynamics in the interaction picture of the bare
// level energies.
//
// In this frame a drive resonant with a transition gives a static coupling,
// and a drive that misses a transition by delta picks up the phase
// e^{+-i delta t}. Ideal gate targets are therefore compared directly in the
// computational basis without any frame correction at the end of a run.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "seholo/detuning.hpp"
#include "seholo/holonomy.hpp"
#include "seholo/pulses.hpp"
#include "seholo/quantum_core.hpp"

namespace seholo {

/// Detuned couplings beyond this value (rad/ns) are dropped from the
/// Hamiltonian; their residual effect is of order Omega^2 / delta.
inline constexpr double kMaxResolvedDetuning = 1e3;

/// Two state-selective pulses resonant with the spin-up Lambda system.
struct ControlledU {
  GateParams gate;
};

/// Resonant Lambda drives on both spin blocks; the spin-down pair starts
/// `lag` ns after the spin-up pair.
struct SingleQubitFourDrive {
  GateParams gate;
  double lag = 0.0;
};

/// Square spin-flip drive at the n_z = 2 electron-spin-resonance frequency.
/// H = (rabi / 2) (|up,2><dn,2| + h.c.) + the same term on n_z = 1 detuned by delta12.
struct RydbergControlSpinRabi {
  double rabi = 0.0;      // rad/ns
  double duration = 0.0;  // ns
};

struct DriveScheme {
  std::variant<ControlledU, SingleQubitFourDrive, RydbergControlSpinRabi> variant;
  GaussianPulse pulse = GaussianPulse::with_area(25.0);
  /// Include each Lambda drive's off-resonant action on the opposite spin
  /// block. Rydberg-control always includes its detuned n_z = 1 coupling.
  bool crosstalk = false;

  /// Time at which every drive has finished.
  double end_time() const;
};

/// Spontaneous emission |spin, from> -> |spin, to>, rate in 1/ns.
class LindbladChannel {
 public:
  /// Throws InvalidArgument unless the spin is preserved, to < from, rate >= 0.
  LindbladChannel(BasisLabel from, BasisLabel to, double rate);

  BasisLabel from() const { return from_; }
  BasisLabel to() const { return to_; }
  double rate() const { return rate_; }
  /// C = |to><from| in the composite basis.
  Operator collapse_operator() const;

 private:
  BasisLabel from_;
  BasisLabel to_;
  double rate_;
};

/// 3->1, 3->2 and 2->1 in both spin blocks.
std::vector<LindbladChannel> rydberg_decay_channels(double k12, double k13, double k23);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  /// Filled when a target was supplied to evolve().
  std::vector<double> fidelities;

  const DensityMatrix& final_state() const { return states.back(); }
};

/// Worst-case deviations from a physical state along a trajectory.
struct PhysicalityReport {
  double max_trace_drift = 0.0;
  double max_hermiticity = 0.0;
  double min_eigenvalue = 1.0;
  double max_purity_drift = 0.0;  // |Tr rho^2 - Tr rho0^2|; conserved only without decay

  void merge(const PhysicalityReport& other);
};

PhysicalityReport physicality(const Trajectory& traj);

/// 6x6 rotating-frame Hamiltonian (hbar = 1, rad/ns) at time t. Throws
/// InvalidArgument when a Lambda pulse does not carry area pi.
Operator build_hamiltonian(const DriveScheme& scheme, const DetuningSet& det, double t);

/// -i[H, rho] + sum_k kappa_k (C rho C^dag - 1/2 {C^dag C, rho}).
Operator lindblad_rhs(const Operator& rho, const Operator& h,
                      std::span<const LindbladChannel> channels);

struct EvolveOptions {
  double t_start = 0.0;
  std::optional<double> t_end;  // defaults to scheme.end_time()
  double step = 25.0 / 5000.0;  // ns; rounded so that an integer number of steps fits
  int sample_stride = 50;       // record every n-th step (plus first and last)
  std::optional<DensityMatrix> target;
  StateTolerances tolerances;
  double max_trace_drift = 1e-8;
};

/// Fixed-step RK4 integration of the master equation. Throws InvariantViolation
/// naming the invariant and time when a sampled state is unphysical.
Trajectory evolve(const DensityMatrix& rho0, const DriveScheme& scheme, const DetuningSet& det,
                  std::span<const LindbladChannel> channels, const EvolveOptions& options = {});

/// Closed-system propagator U(t_end, t_start) by RK4 on dU/dt = -i H U.
Operator propagate_unitary(const DriveScheme& scheme, const DetuningSet& det, double t_start,
                           double t_end, double step);

/// Rows/columns {dn,1, dn,2, up,1, up,2} of a 6x6 operator.
Operator computational_block(const Operator& op);

}  // namespace seholo
