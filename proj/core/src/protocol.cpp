#include "leaksim/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace leaksim {

void Schedule::validate() const {
  if (t_h_ns <= 0.0 || t_cz_ns <= 0.0) {
    throw std::invalid_argument("Schedule: gate durations must be positive");
  }
}

void ExperimentConfig::validate() const {
  device.validate();
  noise.validate();
  schedule.validate();
  if (n_cycles < 1) {
    throw std::invalid_argument("ExperimentConfig: n_cycles must be >= 1");
  }
  double norm_sq = 0.0;
  for (const auto& amp : initial_data) norm_sq += std::norm(amp);
  if (std::abs(norm_sq - 1.0) > 2.0 * kNormTol) {
    throw std::invalid_argument("ExperimentConfig: initial data state not normalized");
  }
  if (cz.pulse) cz.pulse->validate();
}

GateSet build_gate_set(const ExperimentConfig& config, Rng& rng) {
  CzParams params;
  if (config.cz.pulse) {
    const DynamicalPhases phases = dynamical_phases(*config.cz.pulse, config.device);
    params.xi = phases.as_array();
  } else {
    params.xi = {config.cz.xi1, config.cz.xi1 + config.cz.theta, config.cz.xi3,
                 config.cz.xi4};
  }
  params.chi = config.cz.chi;
  params.zeta = config.cz.zeta;
  if (config.cz.phi) {
    params.phi = *config.cz.phi;
  } else {
    for (auto& angle : params.phi) angle = kTwoPi * rng.uniform();
  }

  GateSet gates;
  gates.cz_params = params;
  gates.hadamard_anc = embed_ancilla_gate(hadamard());
  gates.cz = cz_unitary(params);
  return gates;
}

CycleKraus make_cycle_kraus(const NoiseModel& noise, const Schedule& schedule) {
  noise.validate();
  schedule.validate();
  return CycleKraus{amplitude_damping_kraus(noise.t1_us, schedule.t_h_ns),
                    amplitude_damping_kraus(noise.t1_us, schedule.t_cz_ns)};
}

std::pair<int, TwoQutritState> measure_ancilla(const TwoQutritState& state,
                                               ReadoutMode mode, Rng& rng) {
  std::array<double, 3> probs{};
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    probs[static_cast<size_t>(a)] = state.ancilla_population(a);
    total += probs[static_cast<size_t>(a)];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("measure_ancilla: state not normalized");
  }

  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  int outcome = 2;
  for (int a = 0; a < 3; ++a) {
    cumulative += probs[static_cast<size_t>(a)];
    if (u < cumulative) {
      outcome = a;
      break;
    }
  }
  if (probs[static_cast<size_t>(outcome)] <= 0.0) {
    throw std::logic_error("measure_ancilla: sampled a zero-probability branch");
  }

  TwoQutritState post;
  const double scale = 1.0 / std::sqrt(probs[static_cast<size_t>(outcome)]);
  for (int d = 0; d < 3; ++d) {
    post.amps(basis_index(outcome, d)) = state.amps(basis_index(outcome, d)) * scale;
  }

  const int reported = (mode == ReadoutMode::Binary && outcome == 2) ? 1 : outcome;
  return {reported, post};
}

TwoQutritState reset_ancilla(const TwoQutritState& state) {
  int occupied = -1;
  for (int a = 0; a < 3; ++a) {
    const double p = state.ancilla_population(a);
    if (p > 1.0 - 1e-9) occupied = a;
  }
  if (occupied < 0) {
    throw std::logic_error(
        "reset_ancilla: ancilla is not in a basis state; reset is only valid "
        "directly after measurement");
  }

  TwoQutritState out;
  for (int d = 0; d < 3; ++d) {
    out.amps(basis_index(0, d)) = state.amps(basis_index(occupied, d));
  }
  return out;
}

namespace {

void damp_both(TwoQutritState& state, const KrausSet& kraus, Rng& rng) {
  state = apply_channel_trajectory(state, kraus, Slot::Ancilla, rng);
  state = apply_channel_trajectory(state, kraus, Slot::Data, rng);
}

}  // namespace

std::pair<int, TwoQutritState> run_cycle(const TwoQutritState& state,
                                         const GateSet& gates,
                                         const std::optional<CycleKraus>& kraus,
                                         ReadoutMode mode, Rng& rng,
                                         PopulationRow* populations) {
  TwoQutritState psi = reset_ancilla(state);

  psi = psi.applied(gates.hadamard_anc);
  if (kraus) damp_both(psi, kraus->hadamard, rng);

  psi = psi.applied(gates.cz);
  if (kraus) damp_both(psi, kraus->cz, rng);

  psi = psi.applied(gates.hadamard_anc);
  if (kraus) damp_both(psi, kraus->hadamard, rng);

  if (populations) {
    populations->p_data0 = psi.data_population(0);
    populations->p_data1 = psi.data_population(1);
    populations->p_data2 = psi.data_population(2);
    populations->p_anc2 = psi.ancilla_population(2);
  }

  auto [outcome, post] = measure_ancilla(psi, mode, rng);
  if (std::abs(post.norm() - 1.0) > 1e-10) {
    throw std::logic_error("run_cycle: state norm drifted beyond 1e-10");
  }
  return {outcome, post};
}

std::pair<ReadoutTrace, CzParams> run_experiment_with_params(const ExperimentConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const GateSet gates = build_gate_set(config, rng);
  const std::optional<CycleKraus> kraus =
      config.noise.enabled ? std::optional<CycleKraus>(make_cycle_kraus(config.noise, config.schedule))
                           : std::nullopt;

  ReadoutTrace trace;
  trace.outcomes.reserve(static_cast<size_t>(config.n_cycles));
  if (config.log_populations) trace.populations.reserve(static_cast<size_t>(config.n_cycles));

  TwoQutritState state = TwoQutritState::product(0, config.initial_data);
  for (int cycle = 0; cycle < config.n_cycles; ++cycle) {
    PopulationRow row;
    auto [outcome, post] =
        run_cycle(state, gates, kraus, config.readout, rng,
                  config.log_populations ? &row : nullptr);
    trace.outcomes.push_back(static_cast<std::uint8_t>(outcome));
    if (config.log_populations) trace.populations.push_back(row);
    state = post;
  }
  return {std::move(trace), gates.cz_params};
}

ReadoutTrace run_experiment(const ExperimentConfig& config) {
  return run_experiment_with_params(config).first;
}

TraceSummary summarize_trace(const ReadoutTrace& trace, int majority_half_width) {
  TraceSummary summary;
  const int n = trace.n_cycles();
  for (int i = 0; i < n; ++i) {
    summary.counts[static_cast<size_t>(trace.outcomes[static_cast<size_t>(i)])]++;
  }

  // Regime boundaries: majority of non-zero outcomes over a centered window.
  auto regime = [&](int i) {
    const int lo = std::max(0, i - majority_half_width);
    const int hi = std::min(n, i + majority_half_width + 1);
    int ones = 0;
    for (int j = lo; j < hi; ++j) ones += trace.outcomes[static_cast<size_t>(j)] != 0;
    return 2 * ones >= (hi - lo) ? 1 : 0;
  };
  if (n > 0) {
    int current = regime(0);
    for (int i = 1; i < n; ++i) {
      const int r = regime(i);
      if (r != current) {
        summary.step_locations.push_back(i);
        current = r;
      }
    }
  }
  return summary;
}

}  // namespace leaksim
