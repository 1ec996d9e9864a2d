#include "seholo/helium.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <lapacke.h>

#include "seholo/errors.hpp"

namespace seholo::helium {

namespace {

double mev_in_joule(const PhysicalConstants& c) { return 1e-3 * c.elementary_charge; }

// hbar^2 / (2 m) in meV nm^2.
double kinetic_coefficient(const PhysicalConstants& c) {
  return c.hbar * c.hbar / (2.0 * c.electron_mass) / mev_in_joule(c) / 1e-18;
}

// Lambda e^2 / (4 pi eps0) in meV nm.
double image_coefficient_mev_nm(const PhysicalConstants& c) {
  return c.image_coefficient() / mev_in_joule(c) / 1e-9;
}

// e E in meV/nm for E in V/cm.
double field_force_mev_per_nm(double e_perp_v_per_cm, const PhysicalConstants& c) {
  return c.elementary_charge * e_perp_v_per_cm * 100.0 * 1e-9 / mev_in_joule(c);
}

double trapezoid(const Eigen::VectorXd& f, double h) {
  const Eigen::Index n = f.size();
  if (n < 2) return 0.0;
  return h * (f.sum() - 0.5 * (f(0) + f(n - 1)));
}

struct RawSpectrum {
  std::vector<double> energies;
  Eigen::MatrixXd vectors;  // interior points only
};

RawSpectrum lowest_eigenpairs(double e_perp, const Grid& grid, int n_states,
                              const PhysicalConstants& c) {
  const int n = grid.n_points - 2;
  const double h = grid.spacing_nm();
  const double t = kinetic_coefficient(c) / (h * h);
  std::vector<double> diag(n);
  std::vector<double> off(std::max(n - 1, 1), -t);
  for (int i = 0; i < n; ++i) {
    const double z = grid.z_min_nm + (i + 1) * h;
    diag[i] = 2.0 * t + vertical_potential(z, e_perp, c);
  }
  std::vector<double> w(n);
  std::vector<double> z(static_cast<std::size_t>(n) * n_states);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n_states));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                     n_states, 0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != n_states) {
    throw ConvergenceError("tridiagonal eigensolver failed (info = " + std::to_string(info) +
                           ")");
  }
  RawSpectrum out;
  out.energies.assign(w.begin(), w.begin() + n_states);
  out.vectors = Eigen::Map<Eigen::MatrixXd>(z.data(), n, n_states);
  return out;
}

}  // namespace

double PhysicalConstants::image_coefficient() const {
  return image_strength() * elementary_charge * elementary_charge /
         (4.0 * std::numbers::pi * vacuum_permittivity);
}

double PhysicalConstants::effective_bohr_radius() const {
  return hbar * hbar / (electron_mass * image_coefficient());
}

double PhysicalConstants::effective_rydberg() const {
  const double k = image_coefficient();
  return electron_mass * k * k / (2.0 * hbar * hbar);
}

void Grid::validate() const {
  if (!(z_min_nm > 0.0) || !(z_max_nm > z_min_nm) || n_points < 10) {
    throw InvalidArgument("grid requires 0 < z_min < z_max and at least 10 points");
  }
}

double EigenSolution::energy_ghz(int level, const PhysicalConstants& c) const {
  if (level < 1 || level > n_states()) throw InvalidArgument("level out of range");
  return energies_mev[level - 1] * mev_in_joule(c) / c.planck * 1e-9;
}

double vertical_potential(double z_nm, double e_perp_v_per_cm, const PhysicalConstants& c) {
  if (!(z_nm > 0.0)) {
    throw InvalidArgument("vertical_potential: z must be positive (hard wall at z <= 0)");
  }
  return -image_coefficient_mev_nm(c) / z_nm + field_force_mev_per_nm(e_perp_v_per_cm, c) * z_nm;
}

double vertical_potential_gradient(double z_nm, double e_perp_v_per_cm,
                                   const PhysicalConstants& c) {
  if (!(z_nm > 0.0)) throw InvalidArgument("vertical_potential_gradient: z must be positive");
  return image_coefficient_mev_nm(c) / (z_nm * z_nm) +
         field_force_mev_per_nm(e_perp_v_per_cm, c);
}

EigenSolution solve_vertical_states(double e_perp_v_per_cm, const Grid& grid, int n_states,
                                    const PhysicalConstants& c, const SolveOptions& options) {
  grid.validate();
  if (n_states < 1 || n_states > 5) {
    throw InvalidArgument("solve_vertical_states: n_states must be in [1, 5]");
  }
  const RawSpectrum raw = lowest_eigenpairs(e_perp_v_per_cm, grid, n_states, c);
  const double h = grid.spacing_nm();

  EigenSolution sol;
  sol.e_perp_v_per_cm = e_perp_v_per_cm;
  sol.grid = grid;
  sol.z_nm = Eigen::VectorXd::LinSpaced(grid.n_points, grid.z_min_nm, grid.z_max_nm);
  sol.energies_mev = raw.energies;
  sol.wavefunctions = Eigen::MatrixXd::Zero(grid.n_points, n_states);
  sol.wavefunctions.middleRows(1, grid.n_points - 2) = raw.vectors;

  for (int k = 0; k < n_states; ++k) {
    auto psi = sol.wavefunctions.col(k);
    psi /= std::sqrt(trapezoid(psi.array().square().matrix(), h));
    // Sign convention: positive lobe nearest the surface.
    Eigen::Index first = 0;
    const double peak = psi.cwiseAbs().maxCoeff();
    while (first < psi.size() && std::abs(psi(first)) < 1e-3 * peak) ++first;
    if (first < psi.size() && psi(first) < 0.0) psi = -psi;
    sol.expected_z_nm.push_back(
        trapezoid((psi.array().square() * sol.z_nm.array()).matrix(), h));
  }
  for (int k = 1; k <= n_states; ++k) {
    sol.grad_elements.push_back(gradient_matrix_element(sol, k, c));
  }

  if (options.check_refinement) {
    const RawSpectrum fine = lowest_eigenpairs(e_perp_v_per_cm, grid.refined(), n_states, c);
    const double scale_floor = std::abs(raw.energies.front());
    for (int k = 0; k < n_states; ++k) {
      const double shift = std::abs(fine.energies[k] - raw.energies[k]);
      const double scale = std::max(std::abs(raw.energies[k]), scale_floor);
      if (shift > options.refinement_tolerance * scale) {
        std::ostringstream os;
        os << "grid too coarse: level " << k + 1 << " moves by " << shift
           << " meV under 2x refinement";
        sol.warning = os.str();
        break;
      }
    }
  }
  return sol;
}

double gradient_matrix_element(const EigenSolution& sol, int level, const PhysicalConstants& c) {
  if (level < 1 || level > sol.wavefunctions.cols()) {
    throw InvalidArgument("gradient_matrix_element: level out of range");
  }
  const auto psi = sol.wavefunctions.col(level - 1);
  Eigen::VectorXd integrand(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    integrand(i) =
        psi(i) * psi(i) * vertical_potential_gradient(sol.z_nm(i), sol.e_perp_v_per_cm, c);
  }
  return trapezoid(integrand, sol.grid.spacing_nm());
}

double two_ripplon_decay_rate(int m, int n, const EigenSolution& sol,
                              const PhysicalConstants& c) {
  if (m >= n) throw InvalidArgument("two_ripplon_decay_rate: requires m < n (emission only)");
  if (m < 1 || n > sol.n_states()) {
    throw InvalidArgument("two_ripplon_decay_rate: level out of range");
  }
  const double to_newton = mev_in_joule(c) / 1e-9;  // meV/nm -> J/m
  const double grad_m = sol.grad_elements[m - 1] * to_newton;
  const double grad_n = sol.grad_elements[n - 1] * to_newton;
  const double gap = (sol.energies_mev[n - 1] - sol.energies_mev[m - 1]) * mev_in_joule(c);
  if (gap <= 0.0) return 0.0;

  const double alpha = c.surface_tension;
  const double rho = c.density;
  const double prefactor = c.electron_mass * c.kappa_0 * c.kappa_0 /
                           (4.0 * std::numbers::pi * c.hbar * alpha * rho) *
                           std::cbrt(rho / (4.0 * c.hbar * c.hbar * alpha));
  const double rate_si = prefactor * grad_m * grad_n * std::pow(gap, 2.0 / 3.0);
  return rate_si * kPerSecondToPerNs;
}

double total_decay_rate(int n, const EigenSolution& sol, const PhysicalConstants& c) {
  if (n < 1) throw InvalidArgument("total_decay_rate: level must be >= 1");
  double sum = 0.0;
  for (int m = 1; m < n; ++m) sum += two_ripplon_decay_rate(m, n, sol, c);
  return sum;
}

DecayRates decay_rates(const EigenSolution& sol, const PhysicalConstants& c) {
  if (sol.n_states() < 3) throw InvalidArgument("decay_rates: need three solved levels");
  return {two_ripplon_decay_rate(1, 2, sol, c), two_ripplon_decay_rate(1, 3, sol, c),
          two_ripplon_decay_rate(2, 3, sol, c)};
}

double calibrate_penetration_depth(double target_rate_per_ns, double e_perp_v_per_cm,
                                   const Grid& grid, PhysicalConstants c) {
  if (!(target_rate_per_ns > 0.0)) throw InvalidArgument("calibration target must be positive");
  c.kappa_0 = 1.0;
  const EigenSolution sol = solve_vertical_states(e_perp_v_per_cm, grid, 2, c, {false});
  return std::sqrt(target_rate_per_ns / two_ripplon_decay_rate(1, 2, sol, c));
}

DetuningSet transition_detunings(const EigenSolution& sol, double gradient_t_per_m,
                                 const PhysicalConstants& c) {
  if (sol.expected_z_nm.size() < 3) {
    throw InvalidArgument("transition_detunings: need three solved levels");
  }
  const auto delta = [&](int i, int j) {
    const double dz_m = (sol.expected_z_nm[i - 1] - sol.expected_z_nm[j - 1]) * 1e-9;
    return c.g_factor * c.bohr_magneton * gradient_t_per_m * dz_m / c.hbar * 1e-9;
  };
  return {delta(1, 3), delta(2, 3), delta(1, 2)};
}

double gradient_for_delta13(const EigenSolution& sol, double delta13_rad_per_ns,
                            const PhysicalConstants& c) {
  if (sol.expected_z_nm.size() < 3) {
    throw InvalidArgument("gradient_for_delta13: need three solved levels");
  }
  const double dz_m = (sol.expected_z_nm[0] - sol.expected_z_nm[2]) * 1e-9;
  return delta13_rad_per_ns * 1e9 * c.hbar / (c.g_factor * c.bohr_magneton * dz_m);
}

}  // namespace seholo::helium
