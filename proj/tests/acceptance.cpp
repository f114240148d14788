// Acceptance suite: each criterion prints one PASS/FAIL line with the
// measured numbers. Run a single criterion with `acceptance <n>` (ctest does
// this) or all of them with `acceptance all`.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "leaksim/analysis.hpp"
#include "leaksim/config.hpp"
#include "leaksim/io.hpp"
#include "leaksim/model.hpp"
#include "leaksim/noise.hpp"
#include "leaksim/protocol.hpp"
#include "oracles.hpp"

using namespace leaksim;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

ExperimentConfig ideal_damped_config() {
  ExperimentConfig config;
  config.cz.chi = {0, 0, 0, 0};
  config.cz.zeta = {0, 0, 0, 0};
  config.cz.phi = std::array<double, 4>{0, 0, 0, 0};
  config.noise.enabled = true;
  config.noise.t1_us = 40.0;
  config.n_cycles = 40000;
  config.log_populations = true;
  return config;
}

// ---------------------------------------------------------------------------
// 1. Background peak spacing: ideal CZ + damping, T1 = 40 us, t_cycle = 45 ns,
//    40,000 cycles x >= 20 seeds; mean 1-peak spacing in the post-step
//    0-plateau required to lie in [1600, 2800].
Outcome criterion1() {
  ExperimentConfig config = ideal_damped_config();
  const int n_seeds = 60;

  long long gap_sum = 0;
  long long gap_count = 0;
  for (int s = 0; s < n_seeds; ++s) {
    config.seed = Rng::derive(101, static_cast<std::uint64_t>(s));
    const ReadoutTrace trace = run_experiment(config);

    int step = -1;
    for (int i = 0; i < trace.n_cycles(); ++i) {
      if (trace.populations[static_cast<size_t>(i)].p_data1 < 0.5) {
        step = i;
        break;
      }
    }
    if (step < 0) continue;  // data never relaxed in this trace

    int previous = -1;
    for (int i = step + 1; i < trace.n_cycles(); ++i) {
      if (trace.outcomes[static_cast<size_t>(i)] != 1) continue;
      if (previous >= 0) {
        gap_sum += i - previous;
        ++gap_count;
      }
      previous = i;
    }
  }

  const double mean = gap_count > 0 ? static_cast<double>(gap_sum) / gap_count : 0.0;
  const bool pass = gap_count > 0 && mean >= 1600.0 && mean <= 2800.0;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "mean 1-peak spacing in the post-step 0-plateau = %.1f cycles "
                "(%lld gaps over %d seeds); required [1600, 2800]. "
                "Pure amplitude-damping trajectories with per-gate durations give "
                "0.5*(1-exp(-35ns/(2 T1)))^-1 = 4572 by direct density-matrix "
                "computation, so the bracket built from the twirl estimate (1778) "
                "and the reported observation (2381) is not reachable by this model.",
                mean, gap_count, n_seeds);
  return {pass, buf};
}

// ---------------------------------------------------------------------------
// 2. W vs theta: data pinned at |2>, no decoherence, ideal phases, 1e4 cycles;
//    W within 5% of csc^2(theta/2) for theta in {pi/8, pi/4, pi/2, pi}.
Outcome criterion2() {
  ExperimentConfig config;
  config.cz.chi = {0, 0, 0, 0};
  config.cz.zeta = {0, 0, 0, 0};
  config.cz.phi = std::array<double, 4>{0, 0, 0, 0};
  config.noise.enabled = false;
  config.initial_data = {Complex(0), Complex(0), Complex(1)};
  config.n_cycles = 10000;

  const std::vector<double> thetas{kPi / 8.0, kPi / 4.0, kPi / 2.0, kPi};
  bool pass = true;
  std::string detail;
  for (size_t i = 0; i < thetas.size(); ++i) {
    config.cz.theta = thetas[i];
    config.seed = Rng::derive(202, i);
    const ReadoutTrace trace = run_experiment(config);
    const auto w = compute_w(trace);
    const double theory = w_theory(thetas[i]);
    const double measured = w ? *w : std::nan("");
    const double rel = std::abs(measured - theory) / theory;
    pass = pass && w.has_value() && rel <= 0.05;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%stheta=%.4f: W=%.3f vs csc^2=%.3f (%.1f%%)",
                  i ? "; " : "", thetas[i], measured, theory, 100.0 * rel);
    detail += buf;
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 3. Paralysis: theta = 0, data |2>, no decoherence -> all 1e4 outcomes are 0.
Outcome criterion3() {
  ExperimentConfig config;
  config.cz.chi = {0, 0, 0, 0};
  config.cz.zeta = {0, 0, 0, 0};
  config.cz.phi = std::array<double, 4>{0, 0, 0, 0};
  config.cz.theta = 0.0;
  config.noise.enabled = false;
  config.initial_data = {Complex(0), Complex(0), Complex(1)};
  config.n_cycles = 10000;
  config.seed = 303;
  const ReadoutTrace trace = run_experiment(config);
  long long nonzero = 0;
  for (auto o : trace.outcomes) nonzero += o != 0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%lld non-zero outcomes out of %d cycles (required 0)",
                nonzero, config.n_cycles);
  return {nonzero == 0, buf};
}

// ---------------------------------------------------------------------------
// 4. theta* from the closed form with T1 = 40 us, t_cycle = 45 ns, required to
//    equal 0.04 within 0.005.
Outcome criterion4() {
  const LeakedPrediction p = leaked_ancilla_prediction(kPi / 2.0, 40.0, 45.0);
  const bool identity_ok = std::abs(w_theory(p.theta_star) - p.w_star) < 1e-12 * p.w_star;
  const bool pass = identity_ok && std::abs(p.theta_star - 0.04) <= 0.005;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "theta* = 2 csc^-1(sqrt(W*)) = %.6f with W* = 2 T1/t_cycle = %.1f "
                "(identity csc^2(theta*/2) = W* holds to %.1e); required 0.040 +/- 0.005. "
                "0.040 corresponds to the observed background W* = 2381 "
                "(2 csc^-1(sqrt(2381)) = 0.0410), not to W* = 1778, which gives 0.0474.",
                p.theta_star, p.w_star, std::abs(w_theory(p.theta_star) - p.w_star));
  return {pass, buf};
}

// ---------------------------------------------------------------------------
// 5. T0-map oracle equivalence over 100 random data states plus the
//    T0|1> = |2> limit at chi2 = 1e-4.
Outcome criterion5() {
  Rng rng(505);
  const CzParams params = CzParams::simplified(0.01, 0.01);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Complex a = test::random_complex(rng), b = test::random_complex(rng),
            c = test::random_complex(rng);
    const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
    const DataQutritState psi{a / n, b / n, c / n};
    const auto branches = conditional_maps(psi, params);
    if (!branches[0].state.has_value()) return {false, "outcome-0 branch vanished"};
    const DataQutritState formula = t0_map(psi, 0.01, 0.01);
    worst = std::max(worst, std::abs(branches[0].state->a - formula.a));
    worst = std::max(worst, std::abs(branches[0].state->b - formula.b));
    worst = std::max(worst, std::abs(branches[0].state->c - formula.c));
  }

  const DataQutritState leaked = t0_map({Complex(0), Complex(1), Complex(0)}, 0.0, 1e-4);
  const double p2 = std::norm(leaked.c);

  const bool pass = worst < 1e-10 && p2 > 1.0 - 1e-6;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "max per-amplitude |circuit - formula| = %.2e over 100 random states "
                "(required < 1e-10); T0|1> final |2> population = 1 - %.2e at chi2 = 1e-4 "
                "(required > 1 - 1e-6)",
                worst, 1.0 - p2);
  return {pass, buf};
}

// ---------------------------------------------------------------------------
// 6. Anticrossing: 1 MHz sweep locates the minimal |11>-|20> gap at
//    6.2 GHz +/- 2 grid points with gap 2 sqrt(2) g within 1%, against the
//    2x2 block oracle.
Outcome criterion6() {
  const DeviceParams base = DeviceParams::from_ghz(6.0, 6.0, 0.2, 0.2, 0.025);
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(ghz_to_rad_ns(5.5 + 0.001 * i));
  const Anticrossing ac =
      locate_anticrossing(base, grid, basis_index(1, 1), basis_index(2, 0));

  // 2x2 oracle: block [[E11, sqrt2 g], [sqrt2 g, E20]] -> minimal gap
  // 2 sqrt2 g at eps1 = eps2 + eta1 exactly.
  const double oracle_gap = 2.0 * std::numbers::sqrt2 * base.g;
  const double oracle_eps1_ghz = 6.2;

  const double eps1_ghz = rad_ns_to_ghz(ac.eps1);
  const double gap_rel = std::abs(ac.gap - oracle_gap) / oracle_gap;
  const double offset_points = std::round((eps1_ghz - oracle_eps1_ghz) / 0.001);
  const bool gap_ok = gap_rel <= 0.01;
  const bool location_ok = std::abs(offset_points) <= 2.0;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "minimal gap %.6f GHz (2 sqrt2 g = %.6f, deviation %.2f%%) at "
                "eps1 = %.4f GHz, %+.0f grid points from 6.2 (required within 2). "
                "The |02> level repels the |11> channel by 2 g^2/(eps1-eps2+eta2) "
                "= 3.1 MHz, so the nine-level minimum sits 3 points above the "
                "two-level prediction.",
                rad_ns_to_ghz(ac.gap), 2.0 * std::numbers::sqrt2 * 0.025, 100.0 * gap_rel,
                eps1_ghz, offset_points);
  return {gap_ok && location_ok, buf};
}

// ---------------------------------------------------------------------------
// 7. Channel correctness: completeness for 100 random (T1, dt); ensemble vs
//    density oracle within 3 standard errors; T2 = 2 T1 within 1%.
Outcome criterion7() {
  Rng rng(707);
  double worst_completeness = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double t1 = 1.0 + 99.0 * rng.uniform();
    const double dt = 500.0 * rng.uniform();
    const KrausSet k = amplitude_damping_kraus(t1, dt);
    const Mat3 sum =
        (k.e1.adjoint() * k.e1 + k.e2.adjoint() * k.e2 + k.e3.adjoint() * k.e3).eval();
    worst_completeness = std::max(worst_completeness, max_abs((sum - Mat3::Identity()).eval()));
  }

  // trajectory ensemble vs density oracle
  const double t1 = 40.0, dt = 450.0;
  const int steps = 20;
  const KrausSet k = amplitude_damping_kraus(t1, dt);
  DensityMatrix rho = DensityMatrix::from_state(TwoQutritState::basis(0, 1));
  for (int s = 0; s < steps; ++s) rho = apply_channel_density(rho, k, Slot::Data);
  const double oracle = rho.rho(basis_index(0, 1), basis_index(0, 1)).real();

  const int trajectories = 100000;
  int survived = 0;
  for (int t = 0; t < trajectories; ++t) {
    Rng traj_rng(Rng::derive(717, static_cast<std::uint64_t>(t)));
    TwoQutritState state = TwoQutritState::basis(0, 1);
    for (int s = 0; s < steps; ++s) {
      state = apply_channel_trajectory(state, k, Slot::Data, traj_rng);
    }
    survived += std::abs(state.amps(basis_index(0, 1))) > 0.5;
  }
  const double rate = static_cast<double>(survived) / trajectories;
  const double sigma = std::sqrt(oracle * (1.0 - oracle) / trajectories);
  const double pulls = std::abs(rate - oracle) / sigma;

  // off-diagonal decay on a single-qutrit superposition
  DensityMatrix coh = DensityMatrix::from_state(TwoQutritState::product(
      0, {Complex(1.0 / std::numbers::sqrt2), Complex(1.0 / std::numbers::sqrt2), Complex(0)}));
  const int coh_steps = 400;
  const KrausSet k45 = amplitude_damping_kraus(t1, 45.0);
  for (int s = 0; s < coh_steps; ++s) coh = apply_channel_density(coh, k45, Slot::Data);
  const double coherence = std::abs(coh.rho(basis_index(0, 0), basis_index(0, 1)));
  const double t2 = -coh_steps * 45.0 / std::log(coherence / 0.5);
  const double t2_rel = std::abs(t2 - 2.0 * t1 * 1000.0) / (2.0 * t1 * 1000.0);

  const bool pass = worst_completeness < 1e-12 && pulls <= 3.0 && t2_rel <= 0.01;
  char buf[384];
  std::snprintf(buf, sizeof buf,
                "completeness residual %.2e (required < 1e-12); ensemble survival "
                "%.5f vs density oracle %.5f = %.2f sigma (required <= 3); "
                "T2 = %.1f ns vs 2 T1 = %.1f ns (%.3f%%, required <= 1%%)",
                worst_completeness, rate, oracle, pulls, t2, 2.0 * t1 * 1000.0,
                100.0 * t2_rel);
  return {pass, buf};
}

// ---------------------------------------------------------------------------
// 8. Leakage phenomenology: full non-ideal gate, theta = pi/2, ground-truth
//    logging. Every >= 200-cycle ground-truth window must show in-window
//    1-frequency 0.5 +/- 0.05 and be found by the trace-only detector.
Outcome criterion8() {
  ExperimentConfig config;
  config.cz.theta = kPi / 2.0;      // chi = zeta = 1e-2 and random phi by default
  config.noise.enabled = true;
  config.n_cycles = 40000;
  config.log_populations = true;

  DetectorSettings settings;
  settings.w_star = 2.0 * config.noise.t1_us * 1000.0 / config.schedule.t_cycle_ns();

  int long_windows = 0;
  int freq_failures = 0;
  int detector_misses = 0;
  double worst_freq_dev = 0.0;
  const int n_seeds = 40;
  for (int s = 0; s < n_seeds; ++s) {
    config.seed = Rng::derive(808, static_cast<std::uint64_t>(s));
    const ReadoutTrace trace = run_experiment(config);
    const auto gt_windows = detect_windows_ground_truth(trace, 0.9);

    ReadoutTrace outcomes_only;
    outcomes_only.outcomes = trace.outcomes;
    const auto detected = detect_windows_trace_only(outcomes_only, settings);

    for (const auto& w : gt_windows) {
      if (w.length() < 200) continue;
      ++long_windows;
      worst_freq_dev = std::max(worst_freq_dev, std::abs(w.one_frequency - 0.5));
      if (std::abs(w.one_frequency - 0.5) > 0.05) ++freq_failures;
      bool found = false;
      for (const auto& d : detected) {
        if (d.end > w.start && d.start < w.end) found = true;
      }
      if (!found) ++detector_misses;
    }
  }

  const bool pass = long_windows >= 3 && freq_failures == 0 && detector_misses == 0;
  char buf[384];
  std::snprintf(buf, sizeof buf,
                "%d ground-truth windows of length >= 200 across %d seeds; "
                "worst |f - 0.5| = %.3f (required <= 0.05, %d failures); "
                "trace-only detector missed %d (required 0)",
                long_windows, n_seeds, worst_freq_dev, freq_failures, detector_misses);
  return {pass, buf};
}

// ---------------------------------------------------------------------------
// 9. Determinism: identical (config, seed) -> byte-identical trace CSV.
Outcome criterion9() {
  ExperimentConfig config;
  config.n_cycles = 40000;
  config.seed = 909;
  config.log_populations = true;
  const std::string first = trace_csv(run_experiment(config));
  const std::string second = trace_csv(run_experiment(config));
  const bool pass = first == second;
  char buf[128];
  std::snprintf(buf, sizeof buf, "two runs produced %zu-byte CSVs that %s",
                first.size(), pass ? "match exactly" : "DIFFER");
  return {pass, buf};
}

using CriterionFn = Outcome (*)();

const CriterionFn kCriteria[] = {criterion1, criterion2, criterion3,
                                 criterion4, criterion5, criterion6,
                                 criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  int first = 1, last = 9;
  if (argc > 1 && std::strcmp(argv[1], "all") != 0) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 9) {
      std::fprintf(stderr, "usage: acceptance [1-9|all]\n");
      return 2;
    }
  }

  bool all_pass = true;
  for (int n = first; n <= last; ++n) {
    const Outcome outcome = kCriteria[n - 1]();
    std::printf("criterion %d: %s — %s\n", n, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
