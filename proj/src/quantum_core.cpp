#include "seholo/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seholo/errors.hpp"

namespace seholo {

namespace {

// Eigenvalues this far below zero are treated as integrator noise.
constexpr double kRoundoffEigenvalue = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Eigen::SelfAdjointEigenSolver<Operator> hermitian_eigen(const Operator& h) {
  // Symmetrize so that roundoff asymmetry does not leak into the spectrum.
  const Operator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Hermitian eigendecomposition failed");
  }
  return solver;
}

}  // namespace

int BasisLabel::index() const {
  if (rydberg < 1 || rydberg > kRydbergDim) {
    throw InvalidArgument("rydberg index out of range: " + std::to_string(rydberg));
  }
  return static_cast<int>(spin) * kRydbergDim + (rydberg - 1);
}

BasisLabel BasisLabel::from_index(int index) {
  if (index < 0 || index >= kCompositeDim) {
    throw InvalidArgument("basis index out of range: " + std::to_string(index));
  }
  return {index < kRydbergDim ? Spin::down : Spin::up, index % kRydbergDim + 1};
}

std::string BasisLabel::str() const {
  return std::string(spin == Spin::up ? "up" : "down") + "," + std::to_string(rydberg);
}

StateVector::StateVector(Ket amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0 || !amplitudes_.allFinite()) {
    throw InvalidArgument("state vector must be non-empty and finite");
  }
  const double norm = amplitudes_.norm();
  if (norm == 0.0) throw InvalidArgument("state vector has zero norm");
  amplitudes_ /= norm;
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
  Ket v = Ket::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::basis(BasisLabel label) {
  return basis(kCompositeDim, label.index());
}

DensityMatrix StateVector::projector() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix::DensityMatrix(Operator rho, const StateTolerances& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (!is_finite(rho_)) {
    throw InvariantViolation("finite", "density matrix has NaN/Inf entries");
  }
  const double herm = hermiticity_error(rho_);
  if (herm > tol.hermiticity) {
    throw InvariantViolation("hermiticity", "||rho - rho^dag||_max = " + fmt(herm));
  }
  const double tr_err = std::abs(rho_.trace() - Complex(1.0));
  if (tr_err > tol.trace) {
    throw InvariantViolation("unit trace", "|Tr rho - 1| = " + fmt(tr_err));
  }
  const double lmin = min_eigenvalue();
  if (lmin < tol.min_eigenvalue) {
    throw InvariantViolation("positivity", "min eigenvalue = " + fmt(lmin));
  }
}

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eigen(rho_).eigenvalues().minCoeff();
}

double hermiticity_error(const Operator& op) { return max_abs(op - op.adjoint()); }

double max_abs(const Operator& op) {
  return op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff();
}

bool is_finite(const Operator& op) { return op.allFinite(); }

Operator tensor_product(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator partial_trace_spin(const Operator& rho, int spin_dim) {
  if (rho.rows() != rho.cols() || spin_dim <= 0 || rho.rows() % spin_dim != 0) {
    throw DimensionError("partial_trace_spin: dimension " + std::to_string(rho.rows()) +
                         " is not a multiple of spin dimension " + std::to_string(spin_dim));
  }
  const Eigen::Index n = rho.rows() / spin_dim;
  Operator out = Operator::Zero(n, n);
  for (int s = 0; s < spin_dim; ++s) out += rho.block(s * n, s * n, n, n);
  return out;
}

DensityMatrix partial_trace_spin(const DensityMatrix& rho) {
  return DensityMatrix(partial_trace_spin(rho.matrix()));
}

namespace {

Operator psd_sqrt(const Operator& rho) {
  const auto eig = hermitian_eigen(rho);
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-8) {
    throw InvariantViolation("positivity", "fidelity input has eigenvalue " +
                                               fmt(lambda.minCoeff()));
  }
  // Eigenvalues at rounding level are zeroed: their square roots would add
  // spurious weight of order sqrt(eps).
  for (auto& l : lambda) l = l < kRoundoffEigenvalue ? 0.0 : l;
  const Operator& v = eig.eigenvectors();
  return v * lambda.cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& rho_ideal) {
  if (rho.dim() != rho_ideal.dim()) {
    throw DimensionError("state_fidelity: dimensions differ");
  }
  // Tr sqrt(sqrt(rho) rho_i sqrt(rho)) is the sum of singular values of
  // sqrt(rho) sqrt(rho_i). Taking singular values avoids square roots of
  // rounding noise in the null space of a rank-deficient sandwich.
  const Operator product = psd_sqrt(rho.matrix()) * psd_sqrt(rho_ideal.matrix());
  const double f = Eigen::JacobiSVD<Operator>(product).singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

Operator herm_matrix_function(const Operator& h, const std::function<Complex(double)>& f,
                              double hermiticity_tol) {
  if (h.rows() != h.cols()) throw DimensionError("herm_matrix_function: matrix not square");
  const double herm = hermiticity_error(h);
  if (herm > hermiticity_tol) {
    throw InvalidArgument("herm_matrix_function: matrix is not Hermitian (" + fmt(herm) + ")");
  }
  const auto eig = hermitian_eigen(h);
  Eigen::VectorXcd fl(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl(i) = f(eig.eigenvalues()(i));
  return eig.eigenvectors() * fl.asDiagonal() * eig.eigenvectors().adjoint();
}

namespace pauli {

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator y() {
  Operator m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Operator z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

Operator outer(int dim, int a, int b) {
  Operator m = Operator::Zero(dim, dim);
  m(a, b) = 1.0;
  return m;
}

}  // namespace seholo
