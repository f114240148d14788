#pragma once

#include <array>
#include <numbers>

#include "leaksim/linalg.hpp"

namespace leaksim {

/// Parameters of the (non-)ideal CZ gate. The generator of the ideal gate is
/// diagonal with entries (0,0,xi1,0,pi,xi2,pi,xi3,xi4); the error generator
/// carries the small amplitudes chi, small phases zeta and arbitrary angles
/// phi. theta = xi2 - xi1 is always recomputed, never stored.
struct CzParams {
  std::array<double, 4> xi{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> chi{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> zeta{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> phi{0.0, 0.0, 0.0, 0.0};

  double theta() const { return xi[1] - xi[0]; }

  /// Error-free gate with the given non-computational phases.
  static CzParams ideal(double xi1 = 0.0, double xi2 = 0.0, double xi3 = 0.0,
                        double xi4 = 0.0);
  /// Ideal phases chosen so theta = xi2 - xi1 takes the requested value.
  static CzParams with_theta(double theta, double xi1 = std::numbers::pi);
  /// Simplified error regime used by the closed-form outcome-0 map:
  /// xi = (pi, 0, 0, 0), phi = zeta = 0, chi3 = chi4 = 0.
  static CzParams simplified(double chi1, double chi2);
};

/// Single-qutrit Hadamard acting as the identity on |2>.
Mat3 hadamard();

/// Generator S of the ideal CZ gate (diagonal, Hermitian).
Mat9 ideal_cz_generator(const CzParams& p);

/// Generator S' of the intrinsic gate errors: diagonal zeta on
/// |01>,|10>,|11>,|20> and i*chi_k e^{i phi_k} couplings
/// |01>~|10>, |02>~|11>, |11>~|20>, |12>~|21>.
Mat9 nonideal_generator(const CzParams& p);

/// Full gate e^{iS'} e^{iS} (exact product form).
Mat9 cz_unitary(const CzParams& p);

/// Comparison form e^{i(S+S')}; differs from cz_unitary at O([S,S']).
Mat9 cz_unitary_summed(const CzParams& p);

}  // namespace leaksim
