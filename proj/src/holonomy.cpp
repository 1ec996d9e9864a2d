#include "seholo/holonomy.hpp"

#include <cmath>
#include <numbers>

#include "seholo/errors.hpp"

namespace seholo {

namespace {
constexpr Complex kI{0.0, 1.0};
}

GateParams::GateParams(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi) || theta < 0.0 || theta > std::numbers::pi) {
    throw InvalidArgument("GateParams: theta must lie in [0, pi]");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
}

GateParams GateParams::not_gate() { return {std::numbers::pi / 2.0, 0.0}; }

GateParams GateParams::hadamard() { return {std::numbers::pi / 4.0, 0.0}; }

Eigen::Vector3d GateParams::axis() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_),
          std::cos(theta_)};
}

Operator coupling_matrix(const GateParams& g) {
  const Complex c31 = std::sin(g.theta() / 2.0) * std::exp(kI * g.phi());
  const Complex c32 = -std::cos(g.theta() / 2.0);
  Operator m = Operator::Zero(3, 3);
  m(2, 0) = c31;
  m(2, 1) = c32;
  m(0, 2) = std::conj(c31);
  m(1, 2) = std::conj(c32);
  return m;
}

LambdaFrame lambda_frame(const GateParams& g) {
  const double s = std::sin(g.theta() / 2.0);
  const double c = std::cos(g.theta() / 2.0);
  const Complex e = std::exp(kI * g.phi());
  LambdaFrame f{Ket::Zero(3), Ket::Zero(3), Ket::Zero(3)};
  f.dark << c, s * e, 0.0;
  f.bright << s * std::conj(e), -c, 0.0;
  f.intermediate(2) = 1.0;
  return f;
}

Operator holonomic_unitary(const GateParams& g) {
  const Complex e = std::exp(kI * g.phi());
  const double ct = std::cos(g.theta());
  const double st = std::sin(g.theta());
  Operator u(2, 2);
  u << ct, std::conj(e) * st, e * st, -ct;
  return u;
}

Operator connection_matrix(const GateParams& g) {
  const double s = std::sin(g.theta() / 2.0);
  const double c = std::cos(g.theta() / 2.0);
  const Complex e = std::exp(kI * g.phi());
  Operator k(2, 2);
  k << s * s, -s * c * std::conj(e), -s * c * e, c * c;
  return k;
}

Operator compose_holonomic(const GateParams& applied_second, const GateParams& applied_first) {
  return holonomic_unitary(applied_second) * holonomic_unitary(applied_first);
}

Operator controlled_unitary(const GateParams& g) {
  return tensor_product(outer(2, 0, 0), pauli::identity(2)) +
         tensor_product(outer(2, 1, 1), holonomic_unitary(g));
}

std::pair<Ket, Ket> transported_basis(const GateParams& g, double alpha) {
  const LambdaFrame f = lambda_frame(g);
  const double s = std::sin(g.theta() / 2.0);
  const double c = std::cos(g.theta() / 2.0);
  const Complex e = std::exp(kI * g.phi());
  // Bright state after area alpha, with the e^{i alpha} phase that closes the loop.
  const Ket bright_t =
      std::exp(kI * alpha) * (std::cos(alpha) * f.bright - kI * std::sin(alpha) * f.intermediate);
  Ket xi1 = s * e * bright_t + c * f.dark;
  Ket xi2 = -c * bright_t + s * std::conj(e) * f.dark;
  return {std::move(xi1), std::move(xi2)};
}

Operator fix_global_phase(const Operator& op, double threshold) {
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.cols(); ++j) {
      const double mag = std::abs(op(i, j));
      if (mag > threshold) return op * (std::conj(op(i, j)) / mag);
    }
  }
  return op;
}

double distance_up_to_phase(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("distance_up_to_phase: shapes differ");
  }
  // Align b's phase to a's by the overlap Tr(b^dag a); robust when the first
  // large entry of a is nearly degenerate with a second one.
  const Complex overlap = (b.adjoint() * a).trace();
  if (std::abs(overlap) < 1e-300) return max_abs(fix_global_phase(a) - fix_global_phase(b));
  const Operator aligned = b * (overlap / std::abs(overlap));
  return max_abs(a - aligned);
}

}  // namespace seholo
