#pragma once

#include <span>
#include <vector>

#include "leaksim/gates.hpp"
#include "leaksim/linalg.hpp"

namespace leaksim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// GHz (ordinary frequency) -> rad/ns (angular frequency).
constexpr double ghz_to_rad_ns(double f_ghz) { return kTwoPi * f_ghz; }
constexpr double rad_ns_to_ghz(double w) { return w / kTwoPi; }

/// Device parameters of the coupled-qutrit pair. All angular frequencies in
/// rad/ns; qutrit 1 is the ancilla (frequency eps1, tunable), qutrit 2 the
/// data qutrit (eps2, fixed).
struct DeviceParams {
  double eps1 = ghz_to_rad_ns(6.2);
  double eps2 = ghz_to_rad_ns(6.0);
  double eta1 = ghz_to_rad_ns(0.2);
  double eta2 = ghz_to_rad_ns(0.2);
  double g = ghz_to_rad_ns(0.025);

  static DeviceParams from_ghz(double eps1, double eps2, double eta1,
                               double eta2, double g);
  /// Throws std::invalid_argument when any frequency is non-positive.
  void validate() const;
};

/// H = Hq1 (x) I + I (x) Hq2 + g Y (x) Y with Hq = diag(0, eps, 2 eps - eta)
/// and Y the harmonic-oscillator quadrature form with sqrt(2) elements.
Mat9 build_hamiltonian(const DeviceParams& p);

/// One sweep point: nine eigenenergies indexed by adiabatic channel label
/// (label = bare basis index 3a+d assigned at the first grid point and
/// propagated by maximum eigenvector overlap).
struct EnergySweepRow {
  double eps1 = 0.0;                      // rad/ns
  std::array<double, 9> energy{};         // rad/ns, index = channel label
};

/// Full diagonalization on each grid point with adiabatic channel labeling.
/// The grid must be sorted and fine enough that adjacent-point eigenvector
/// overlaps exceed 0.5 (squared); otherwise a labeling-confidence error is
/// thrown. Ties at the seed point are broken by eigenvalue proximity to the
/// bare energy.
std::vector<EnergySweepRow> eigenenergy_sweep(const DeviceParams& base,
                                              std::span<const double> eps1_grid);

struct Anticrossing {
  double eps1 = 0.0;   // rad/ns, grid point of minimal gap
  double gap = 0.0;    // rad/ns
  int grid_index = 0;
};

/// Minimal energy gap between the eigenstates of dominant |a> and |b>
/// character over the grid. Unlike the sweep's adiabatic labels (which follow
/// curves through earlier anticrossings), the per-point dominant-character
/// assignment tracks the bare channels the gate protocol targets.
Anticrossing locate_anticrossing(const DeviceParams& base,
                                 std::span<const double> eps1_grid,
                                 int bare_a, int bare_b);

/// Piecewise-linear ancilla frequency profile eps1(t) over a gate.
/// Times in ns (strictly increasing, starting at 0), values in rad/ns.
struct PulseProfile {
  std::vector<double> t_ns;
  std::vector<double> eps1;

  double t_gate_ns() const { return t_ns.empty() ? 0.0 : t_ns.back(); }
  void validate() const;

  static PulseProfile constant(double eps1, double t_gate_ns);
};

struct DynamicalPhases {
  double xi1 = 0.0, xi2 = 0.0, xi3 = 0.0, xi4 = 0.0;
  double theta = 0.0;  // xi2 - xi1, stored unreduced

  std::array<double, 4> as_array() const { return {xi1, xi2, xi3, xi4}; }
};

enum class PhaseIntegrand {
  BareFrequency,  // integrands written out in bare qutrit frequencies
  Eigenenergy,    // dressed energies of the |02>,|12>,|21>,|22> channels
};

/// Reduce an angle to (-pi, pi].
double reduce_angle(double theta);

/// Dynamical phases of the CZ gate, by trapezoidal integration over the
/// profile (exact for the piecewise-linear table). The bare-frequency form is
/// primary; the eigenenergy mode is a cross-check that evaluates the dressed
/// channel energies on a dense eps1 grid of the given resolution.
DynamicalPhases dynamical_phases(const PulseProfile& profile, const DeviceParams& p,
                                 PhaseIntegrand mode = PhaseIntegrand::BareFrequency,
                                 double eigen_grid_step = ghz_to_rad_ns(0.001));

}  // namespace leaksim
