#pragma once

#include "leaksim/linalg.hpp"
#include "leaksim/rng.hpp"

namespace leaksim {

/// Amplitude-damping configuration. T2 = 2 T1 emerges from the damping
/// channel alone; there is no separate dephasing channel (the `dephasing`
/// flag exists only so configs naming it fail loudly).
struct NoiseModel {
  bool enabled = true;
  double t1_us = 40.0;
  bool dephasing = false;  // not implemented; must stay false

  void validate() const;
};

/// Single-qutrit amplitude-damping Kraus set {E1, E2, E3},
/// complete: sum Ek^dag Ek = I within 1e-12.
struct KrausSet {
  Mat3 e1, e2, e3;
};

/// Kraus matrices for relaxation time t1 (microseconds) over an operation of
/// duration dt (nanoseconds): lambda_m = 1 - e^{-m dt / T1}.
KrausSet amplitude_damping_kraus(double t1_us, double dt_ns);

enum class Slot { Ancilla, Data };

/// Stochastic unraveling: embeds each Ek on the chosen qutrit, samples branch
/// k with probability ||Ek psi||^2 (one rng draw), returns the renormalized
/// post-selection state.
TwoQutritState apply_channel_trajectory(const TwoQutritState& state,
                                        const KrausSet& kraus, Slot slot,
                                        Rng& rng);

/// Two-qutrit density matrix; validation oracle for trajectory averages.
struct DensityMatrix {
  Mat9 rho = Mat9::Zero();

  static DensityMatrix from_state(const TwoQutritState& psi);
  /// Hermiticity within 1e-12, unit trace within 1e-10, eigenvalues >= -1e-10.
  void validate() const;
  double trace_real() const { return rho.trace().real(); }
};

/// Exact channel action rho -> sum Ek rho Ek^dag on the chosen qutrit.
DensityMatrix apply_channel_density(const DensityMatrix& rho,
                                    const KrausSet& kraus, Slot slot);

}  // namespace leaksim
