#pragma once

// Dense complex linear algebra over the spin (x) Rydberg Hilbert space.
//
// The composite basis is spin-major with the Rydberg index ascending:
//   |dn,1>, |dn,2>, |dn,3>, |up,1>, |up,2>, |up,3>
// Every 6x6 operator in the library uses this ordering.

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

namespace seholo {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

inline constexpr int kSpinDim = 2;
inline constexpr int kRydbergDim = 3;
inline constexpr int kCompositeDim = kSpinDim * kRydbergDim;

enum class Spin { down = 0, up = 1 };

struct BasisLabel {
  Spin spin;
  int rydberg;  // n_z in {1, 2, 3}

  /// Position in the composite basis; throws InvalidArgument when n_z is out of range.
  int index() const;
  static BasisLabel from_index(int index);
  std::string str() const;  // e.g. "up,2"

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Tolerances used when validating states. Defaults are the module constants;
/// callers may pass looser or tighter values.
struct StateTolerances {
  double hermiticity = 1e-9;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
  double norm = 1e-12;
};

class DensityMatrix;

/// Normalized pure state.
class StateVector {
 public:
  /// Normalizes `amplitudes`; throws InvalidArgument for a zero or non-finite vector.
  explicit StateVector(Ket amplitudes);

  static StateVector basis(int dim, int index);
  static StateVector basis(BasisLabel label);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Ket& amplitudes() const { return amplitudes_; }
  DensityMatrix projector() const;

 private:
  Ket amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator. Construction
/// validates all three and throws InvariantViolation on failure.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator rho, const StateTolerances& tol = {});

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Operator& matrix() const { return rho_; }

  double trace() const { return rho_.trace().real(); }
  double purity() const { return (rho_ * rho_).trace().real(); }
  double min_eigenvalue() const;
  /// Population of basis state `index`.
  double population(int index) const { return rho_(index, index).real(); }

 private:
  Operator rho_;
};

double hermiticity_error(const Operator& op);
double max_abs(const Operator& op);
bool is_finite(const Operator& op);

/// Kronecker product; the first operand is the slow (outer) index.
Operator tensor_product(const Operator& a, const Operator& b);

/// Traces out the spin factor of a spin-major operator.
Operator partial_trace_spin(const Operator& rho, int spin_dim = kSpinDim);
DensityMatrix partial_trace_spin(const DensityMatrix& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& rho_ideal);

/// Applies `f` to the spectrum of a Hermitian matrix. Throws InvalidArgument
/// when ||h - h^dag||_max exceeds `hermiticity_tol`.
Operator herm_matrix_function(const Operator& h, const std::function<Complex(double)>& f,
                              double hermiticity_tol = 1e-9);

namespace pauli {
Operator identity(int dim = 2);
Operator x();
Operator y();
Operator z();
}  // namespace pauli

/// |a><b| in dimension `dim`.
Operator outer(int dim, int a, int b);

}  // namespace seholo
