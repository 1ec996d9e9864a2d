#pragma once

// Closed-form holonomic gate constructions for the Lambda system
// {|1>, |2>} -- |3>. Used both to build the drive Hamiltonian and as exact
// oracles for the numerical dynamics.

#include <utility>

#include <Eigen/Dense>

#include "seholo/quantum_core.hpp"

namespace seholo {

/// Bloch angles of the gate axis n = (sin t cos p, sin t sin p, cos t).
/// The drive ratio is Omega_1 / Omega_2 = -tan(theta/2) e^{i phi}.
class GateParams {
 public:
  /// theta must lie in [0, pi]; phi is wrapped into [0, 2 pi).
  GateParams(double theta, double phi);

  static GateParams not_gate();
  static GateParams hadamard();

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  Eigen::Vector3d axis() const;

 private:
  double theta_;
  double phi_;
};

struct LambdaFrame {
  Ket dark;
  Ket bright;
  Ket intermediate;
};

/// M such that H_I(t) = Omega(t) M on {|1>, |2>, |3>}.
Operator coupling_matrix(const GateParams& g);

LambdaFrame lambda_frame(const GateParams& g);

/// U = n . sigma on {|1>, |2>}.
Operator holonomic_unitary(const GateParams& g);

/// K with A(t) = -alpha'(t) K; integrating over alpha: 0 -> pi gives exp(-i pi K) = U.
Operator connection_matrix(const GateParams& g);

/// U(applied_second) U(applied_first) = (n.m) I + i sigma.(n x m) with n, m the two axes.
Operator compose_holonomic(const GateParams& applied_second, const GateParams& applied_first);

/// |dn><dn| (x) I + |up><up| (x) U on {|dn,1>, |dn,2>, |up,1>, |up,2>}.
Operator controlled_unitary(const GateParams& g);

/// The instantaneous basis |xi_1>, |xi_2> after running pulse area `alpha`.
/// Both coincide with |1>, |2> at alpha = 0 and alpha = pi.
std::pair<Ket, Ket> transported_basis(const GateParams& g, double alpha);

/// Multiplies `op` by the phase that makes its first entry with modulus above
/// `threshold` real and positive (row-major scan).
Operator fix_global_phase(const Operator& op, double threshold = 1e-8);

/// max-norm distance between `a` and `b` after fixing both global phases.
double distance_up_to_phase(const Operator& a, const Operator& b);

}  // namespace seholo
