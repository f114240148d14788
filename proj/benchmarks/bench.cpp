#include <benchmark/benchmark.h>

#include <numbers>

#include "leaksim/gates.hpp"
#include "leaksim/model.hpp"
#include "leaksim/protocol.hpp"

using namespace leaksim;

static void BM_HermitianExp9(benchmark::State& state) {
  CzParams p = CzParams::with_theta(std::numbers::pi / 2.0);
  p.chi = {0.01, 0.01, 0.01, 0.01};
  p.zeta = {0.01, 0.01, 0.01, 0.01};
  const Mat9 s = (ideal_cz_generator(p) + nonideal_generator(p)).eval();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_exp(s));
  }
}
BENCHMARK(BM_HermitianExp9);

static void BM_Diagonalization(benchmark::State& state) {
  const DeviceParams params = DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.2, 0.025);
  const Mat9 h = build_hamiltonian(params);
  for (auto _ : state) {
    Eigen::SelfAdjointEigenSolver<Mat9> solver(h);
    benchmark::DoNotOptimize(solver.eigenvalues());
  }
}
BENCHMARK(BM_Diagonalization);

static void BM_CycleNoiseless(benchmark::State& state) {
  ExperimentConfig config;
  config.cz.phi = std::array<double, 4>{0.1, 0.2, 0.3, 0.4};
  Rng rng(1);
  const GateSet gates = build_gate_set(config, rng);
  TwoQutritState psi = TwoQutritState::basis(0, 1);
  for (auto _ : state) {
    auto [outcome, post] = run_cycle(psi, gates, std::nullopt, ReadoutMode::Ternary, rng);
    psi = post;
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_CycleNoiseless);

static void BM_CycleDamped(benchmark::State& state) {
  ExperimentConfig config;
  config.cz.phi = std::array<double, 4>{0.1, 0.2, 0.3, 0.4};
  Rng rng(1);
  const GateSet gates = build_gate_set(config, rng);
  const std::optional<CycleKraus> kraus =
      make_cycle_kraus(config.noise, config.schedule);
  TwoQutritState psi = TwoQutritState::basis(0, 1);
  for (auto _ : state) {
    auto [outcome, post] = run_cycle(psi, gates, kraus, ReadoutMode::Ternary, rng);
    psi = post;
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_CycleDamped);

static void BM_SweepPoint(benchmark::State& state) {
  const DeviceParams params = DeviceParams::from_ghz(6.0, 6.0, 0.2, 0.2, 0.025);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(ghz_to_rad_ns(6.19 + 0.001 * i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenenergy_sweep(params, grid));
  }
}
BENCHMARK(BM_SweepPoint);

BENCHMARK_MAIN();
