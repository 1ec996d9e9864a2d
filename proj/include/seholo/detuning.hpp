#pragma once

namespace seholo {

/// Zeeman detunings between spin transitions of different Rydberg levels,
/// in rad/ns. delta_ij = g mu_B [B(z_i) - B(z_j)] / hbar; all nonnegative
/// when the field decays away from the surface.
struct DetuningSet {
  double delta13 = 0.0;
  double delta23 = 0.0;
  double delta12 = 0.0;
};

}  // namespace seholo
