#pragma once

// Vertical bound states of an electron above liquid helium and their
// two-ripplon decay rates.
//
// The confining potential is V(z) = -Lambda e^2 / (4 pi eps0 z) + e E z for
// z > 0 with a hard wall at the surface. The eigenproblem is discretized on
// a uniform grid with second-order central differences and solved in meV/nm
// units. Decay rates are evaluated in SI and converted once to 1/ns.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seholo/detuning.hpp"

namespace seholo::helium {

/// SI constants (CODATA 2018) plus liquid-helium material parameters.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;       // J s
  double planck = 6.62607015e-34;      // J s
  double electron_mass = 9.1093837015e-31;  // kg
  double elementary_charge = 1.602176634e-19;  // C
  double vacuum_permittivity = 8.8541878128e-12;  // F/m
  double bohr_magneton = 9.2740100783e-24;  // J/T
  double g_factor = 2.0;
  double epsilon = 1.057;              // dielectric constant of liquid 4He
  double surface_tension = 3.78e-4;    // N/m
  double density = 145.0;              // kg/m^3
  /// Penetration-depth parameter of the two-ripplon rate, 1/m. Calibrated so
  /// that the first excited level decays at 3.5e-4 /ns at 100 V/cm on the
  /// default grid (see calibrate_penetration_depth).
  double kappa_0 = 2.33947e9;

  /// Lambda = (eps - 1) / [4 (eps + 1)].
  double image_strength() const { return (epsilon - 1.0) / (4.0 * (epsilon + 1.0)); }
  /// Lambda e^2 / (4 pi eps0), J m.
  double image_coefficient() const;
  /// Effective Bohr radius hbar^2 / (m Lambda e^2) in the SI form, m.
  double effective_bohr_radius() const;
  /// Lambda^2 Ry, the binding energy of the hydrogen-like ground state, J.
  double effective_rydberg() const;
};

/// Uniform grid on [z_min, z_max] in nm. The end points carry the Dirichlet
/// boundary condition.
struct Grid {
  double z_min_nm = 0.01;
  double z_max_nm = 300.0;
  int n_points = 6000;

  double spacing_nm() const { return (z_max_nm - z_min_nm) / (n_points - 1); }
  /// Same interval with the spacing halved (2 n - 1 points).
  Grid refined() const { return {z_min_nm, z_max_nm, 2 * n_points - 1}; }
  void validate() const;
};

struct EigenSolution {
  double e_perp_v_per_cm = 0.0;
  Grid grid;
  Eigen::VectorXd z_nm;
  /// Eigenenergies in meV, ascending.
  std::vector<double> energies_mev;
  /// One column per level, normalized so that sum_trapz |psi|^2 dz[nm] = 1.
  Eigen::MatrixXd wavefunctions;
  std::vector<double> expected_z_nm;
  /// Diagonal matrix elements (dV/dz)_nn, meV/nm.
  std::vector<double> grad_elements;
  /// Set when the spectrum moves by more than 0.1% under grid refinement.
  std::optional<std::string> warning;

  int n_states() const { return static_cast<int>(energies_mev.size()); }
  /// E_n / h in GHz; `level` is 1-based.
  double energy_ghz(int level, const PhysicalConstants& c = {}) const;
};

/// Potential energy in meV at height z (nm). Throws InvalidArgument for z <= 0.
double vertical_potential(double z_nm, double e_perp_v_per_cm, const PhysicalConstants& c = {});

/// dV/dz in meV/nm.
double vertical_potential_gradient(double z_nm, double e_perp_v_per_cm,
                                   const PhysicalConstants& c = {});

struct SolveOptions {
  bool check_refinement = true;
  double refinement_tolerance = 1e-3;
};

/// Lowest `n_states` (<= 5) eigenpairs of the vertical Hamiltonian.
EigenSolution solve_vertical_states(double e_perp_v_per_cm, const Grid& grid = {},
                                    int n_states = 3, const PhysicalConstants& c = {},
                                    const SolveOptions& options = {});

/// (dV/dz)_nn in meV/nm by trapezoidal quadrature; `level` is 1-based.
double gradient_matrix_element(const EigenSolution& sol, int level,
                               const PhysicalConstants& c = {});

/// kappa_mn in 1/ns for the spontaneous transition n -> m (m < n, 1-based).
double two_ripplon_decay_rate(int m, int n, const EigenSolution& sol,
                              const PhysicalConstants& c = {});

/// sum_{m < n} kappa_mn in 1/ns.
double total_decay_rate(int n, const EigenSolution& sol, const PhysicalConstants& c = {});

/// Partial rates between the three lowest levels, 1/ns.
struct DecayRates {
  double k12 = 0.0;  // 2 -> 1
  double k13 = 0.0;  // 3 -> 1
  double k23 = 0.0;  // 3 -> 2

  double total2() const { return k12; }
  double total3() const { return k13 + k23; }
  DecayRates scaled(double factor) const { return {k12 * factor, k13 * factor, k23 * factor}; }
};

DecayRates decay_rates(const EigenSolution& sol, const PhysicalConstants& c = {});

/// Value of kappa_0 (1/m) for which kappa_12 equals `target_rate_per_ns` at
/// `e_perp_v_per_cm`. The rate scales as kappa_0^2.
double calibrate_penetration_depth(double target_rate_per_ns, double e_perp_v_per_cm,
                                   const Grid& grid = {}, PhysicalConstants c = {});

/// Linear field model B(z) = B0 + G z: detunings from the level positions.
/// `gradient_t_per_m` is dB/dz in T/m (negative when the field decays upward).
DetuningSet transition_detunings(const EigenSolution& sol, double gradient_t_per_m,
                                 const PhysicalConstants& c = {});

/// Gradient (T/m) that yields `delta13_rad_per_ns` for the given level positions.
double gradient_for_delta13(const EigenSolution& sol, double delta13_rad_per_ns,
                            const PhysicalConstants& c = {});

/// Conversion factor applied to an SI rate (1/s) to express it in 1/ns.
inline constexpr double kPerSecondToPerNs = 1e-9;

}  // namespace seholo::helium
