#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "leaksim/gates.hpp"
#include "leaksim/model.hpp"
#include "leaksim/noise.hpp"
#include "leaksim/rng.hpp"

namespace leaksim {

/// Gate durations. Readout and reset are instantaneous, so a cycle lasts
/// 2 t_H + t_CZ.
struct Schedule {
  double t_h_ns = 10.0;
  double t_cz_ns = 25.0;

  double t_cycle_ns() const { return 2.0 * t_h_ns + t_cz_ns; }
  void validate() const;
};

enum class ReadoutMode { Ternary, Binary };

/// CZ gate configuration as it appears in an experiment: phases either set
/// directly (theta sweeps) or derived from a pulse profile; phi angles fixed
/// explicitly or sampled once per experiment from the seed.
struct CzSettings {
  std::optional<PulseProfile> pulse;  // when set, xi comes from dynamical_phases
  double xi1 = std::numbers::pi;
  double theta = std::numbers::pi / 2.0;  // xi2 = xi1 + theta
  double xi3 = 0.0;
  double xi4 = 0.0;
  std::array<double, 4> chi{0.01, 0.01, 0.01, 0.01};
  std::array<double, 4> zeta{0.01, 0.01, 0.01, 0.01};
  std::optional<std::array<double, 4>> phi;  // nullopt: sampled uniform [0, 2pi)
};

struct ExperimentConfig {
  DeviceParams device;
  CzSettings cz;
  NoiseModel noise;
  Schedule schedule;
  int n_cycles = 40000;
  std::uint64_t seed = 0;
  ReadoutMode readout = ReadoutMode::Ternary;
  std::array<Complex, 3> initial_data{Complex(0), Complex(1), Complex(0)};
  bool log_populations = false;

  void validate() const;
};

/// Exact populations read from the pre-measurement state of a cycle.
/// Simulator introspection; not available to trace-only detectors.
struct PopulationRow {
  double p_data0 = 0.0, p_data1 = 0.0, p_data2 = 0.0;
  double p_anc2 = 0.0;
};

struct ReadoutTrace {
  std::vector<std::uint8_t> outcomes;        // one entry per cycle
  std::vector<PopulationRow> populations;    // empty unless logged

  bool has_populations() const { return !populations.empty(); }
  int n_cycles() const { return static_cast<int>(outcomes.size()); }
};

/// Matrices built once per experiment and shared read-only by all cycles.
struct GateSet {
  Mat9 hadamard_anc;  // H on the ancilla index
  Mat9 cz;
  CzParams cz_params;
};

/// Resolves xi (directly or from the pulse profile) and samples phi from the
/// rng when not fixed; builds the embedded gate matrices.
GateSet build_gate_set(const ExperimentConfig& config, Rng& rng);

/// Damping channels for the two gate durations of a cycle.
struct CycleKraus {
  KrausSet hadamard;  // dt = t_H
  KrausSet cz;        // dt = t_CZ
};

CycleKraus make_cycle_kraus(const NoiseModel& noise, const Schedule& schedule);

/// Projective measurement of the ancilla index. Outcome k is sampled with
/// probability sum_d |<kd|psi>|^2 from one rng draw; the returned state is
/// collapsed and renormalized. Binary mode reports outcomes 1 and 2 merged as
/// 1 while collapsing onto the true ternary projector.
std::pair<int, TwoQutritState> measure_ancilla(const TwoQutritState& state,
                                               ReadoutMode mode, Rng& rng);

/// Replaces the ancilla factor by |0>, preserving the data factor exactly.
/// Requires the ancilla to be in a basis state (within 1e-9), i.e. the state
/// must be post-measurement; otherwise throws a protocol-order error.
TwoQutritState reset_ancilla(const TwoQutritState& state);

/// One full cycle: reset, H + damping(t_H), CZ + damping(t_CZ), H +
/// damping(t_H), measure. Damping acts on both qutrits after each gate
/// (ancilla first, then data); `kraus` empty means noise off. When
/// `populations` is non-null it receives the pre-measurement populations.
std::pair<int, TwoQutritState> run_cycle(const TwoQutritState& state,
                                         const GateSet& gates,
                                         const std::optional<CycleKraus>& kraus,
                                         ReadoutMode mode, Rng& rng,
                                         PopulationRow* populations = nullptr);

/// Full experiment: seeds the rng, resolves gates, iterates run_cycle.
/// Deterministic: identical (config, seed) produce identical traces.
ReadoutTrace run_experiment(const ExperimentConfig& config);

/// run_experiment plus the gate parameters actually used (after phi sampling
/// and pulse-profile resolution).
std::pair<ReadoutTrace, CzParams> run_experiment_with_params(const ExperimentConfig& config);

struct TraceSummary {
  std::array<std::int64_t, 3> counts{0, 0, 0};
  std::vector<int> step_locations;  // boundaries between 0- and 1-majority regimes
};

/// Outcome counts plus regime-boundary step locations (majority filter over a
/// centered window of the given half-width).
TraceSummary summarize_trace(const ReadoutTrace& trace, int majority_half_width = 50);

}  // namespace leaksim
