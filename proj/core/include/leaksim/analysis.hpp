#pragma once

#include <optional>
#include <vector>

#include "leaksim/gates.hpp"
#include "leaksim/protocol.hpp"

namespace leaksim {

/// Pure data-qutrit state a|0> + b|1> + c|2>.
struct DataQutritState {
  Complex a, b, c;

  double norm() const;
  void validate() const;  // unit norm within 1e-12
};

/// Closed-form outcome-0 conditional map in the simplified error regime
/// (CzParams::simplified): the new amplitudes divided by sqrt(N) with N the
/// squared norm of the unnormalized branch. Throws when N vanishes (the
/// outcome-0 branch is impossible for this input).
DataQutritState t0_map(const DataQutritState& psi, double chi1, double chi2);

struct ConditionalBranch {
  double probability = 0.0;
  std::optional<DataQutritState> state;  // nullopt for zero-probability branches
};

/// Conditional maps T0, T1, T2 for arbitrary gate parameters: applies the
/// noiseless cycle unitary H_A U_CZ H_A to |0> (x) psi and partitions by
/// ancilla outcome. Probabilities sum to 1 within 1e-12.
std::array<ConditionalBranch, 3> conditional_maps(const DataQutritState& psi,
                                                  const CzParams& params);

/// csc^2(theta/2); +infinity when theta = 0 (mod 2pi), the paralysis case.
double w_theory(double theta);

struct LeakedPrediction {
  double p1 = 0.0;          // per-cycle probability of reading 1 while leaked
  double w_theory = 0.0;    // csc^2(theta/2); +inf when paralyzed
  double w_star = 0.0;      // 2 T1 / t_cycle
  double theta_star = 0.0;  // 2 csc^-1(sqrt(W*))
  bool paralyzed = false;   // theta = 0 (mod 2pi)
};

/// Analytic behaviour of a leaked data qutrit: per-cycle outcome-1
/// probability sin^2(theta/2), its spacing W = csc^2(theta/2), the
/// decoherence background W* = 2 T1 / t_cycle and the critical angle
/// theta* = 2 csc^-1(sqrt(W*)).
LeakedPrediction leaked_ancilla_prediction(double theta, double t1_us,
                                           double t_cycle_ns);

/// theta mod pi < theta_star: the regime where a leakage event hides below
/// the decoherence background.
bool paralysis_susceptible(double theta, double theta_star);

/// Mean gap, in cycles, between consecutive outcome-1 readouts inside the
/// half-open cycle window [first, last) (whole trace when absent). Fewer than
/// two 1-readouts: not measurable (nullopt). Empty window: throws.
std::optional<double> compute_w(const ReadoutTrace& trace,
                                std::optional<std::pair<int, int>> window = std::nullopt);

struct LeakageWindow {
  int start = 0;  // first cycle inside the window
  int end = 0;    // one past the last cycle
  enum class Source { GroundTruth, Detected } source = Source::GroundTruth;
  double one_frequency = 0.0;

  int length() const { return end - start; }
};

/// Maximal runs of cycles whose logged p_data2 exceeds the threshold.
/// Requires ground-truth populations in the trace.
std::vector<LeakageWindow> detect_windows_ground_truth(const ReadoutTrace& trace,
                                                       double p2_threshold = 0.9);

/// Trace-only sliding-window detector configuration. A window of `window`
/// cycles is "hot" when its 1-frequency exceeds rate_multiple / w_star; a run
/// of hot window positions is reported when it is sustained for at least
/// min_span positions and contains at least min_ones 1-readouts. min_span
/// must exceed `window`, since one isolated 1 makes exactly `window`
/// positions hot.
struct DetectorSettings {
  int window = 200;
  double rate_multiple = 5.0;
  int min_span = 250;
  int min_ones = 3;
  double w_star = 2.0 * 40000.0 / 45.0;

  void validate() const;
};

/// Finds leakage windows from outcomes alone. A paralyzed trace (no
/// 1-readouts) yields no windows by construction.
std::vector<LeakageWindow> detect_windows_trace_only(const ReadoutTrace& trace,
                                                     const DetectorSettings& settings);

/// Ground-truth detection when populations are present, trace-only otherwise.
std::vector<LeakageWindow> detect_leakage_windows(const ReadoutTrace& trace,
                                                  const DetectorSettings& settings,
                                                  double p2_threshold = 0.9);

/// Per-window statistics for a report: measured W inside each window.
struct WindowStats {
  LeakageWindow window;
  std::optional<double> w_measured;
};

std::vector<WindowStats> window_stats(const ReadoutTrace& trace,
                                      const std::vector<LeakageWindow>& windows);

}  // namespace leaksim
