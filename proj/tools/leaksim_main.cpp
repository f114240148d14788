// leaksim command-line tool: simulate | sweep | energies | analyze.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "leaksim/analysis.hpp"
#include "leaksim/config.hpp"
#include "leaksim/io.hpp"
#include "leaksim/model.hpp"
#include "leaksim/protocol.hpp"
#include "leaksim/version.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace leaksim;

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ManifestBuilder {
  Json manifest;
  std::vector<std::string> outputs;

  ManifestBuilder(const std::string& command, std::uint64_t seed) {
    manifest["artifact_version"] = kVersion;
    manifest["command"] = command;
    manifest["seed"] = seed;
    manifest["started_at"] = timestamp_utc();
  }

  void add_output(const std::string& path) { outputs.push_back(path); }

  void write(const fs::path& out_dir) {
    manifest["finished_at"] = timestamp_utc();
    manifest["outputs"] = outputs;
    write_text_file((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");
  }
};

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int cycles = 0;
  double theta = 0.0;
  double t1_us = 0.0;
  std::string readout;
  bool log_populations = false;
  bool no_noise = false;
  std::string initial_state;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "experiment configuration file");
  cmd->add_option("--seed", flags->seed, "experiment seed (64-bit)");
  cmd->add_option("--cycles", flags->cycles, "number of measurement cycles");
  cmd->add_option("--theta", flags->theta, "CZ phase difference xi2 - xi1 (rad)");
  cmd->add_option("--t1-us", flags->t1_us, "relaxation time T1 in microseconds");
  cmd->add_option("--readout", flags->readout, "readout mode: ternary or binary")
      ->check(CLI::IsMember({"ternary", "binary"}));
  cmd->add_flag("--log-populations", flags->log_populations,
                "record exact per-cycle populations alongside outcomes");
  cmd->add_flag("--no-noise", flags->no_noise, "disable amplitude damping");
  cmd->add_option("--initial-state", flags->initial_state,
                  "data qutrit start state: 0, 1 or 2")
      ->check(CLI::IsMember({"0", "1", "2"}));
  cmd->add_option("--out-dir", flags->out_dir, "output directory");
}

ExperimentConfig resolve_config(const CLI::App* cmd, const CommonFlags& flags) {
  ExperimentConfig config = flags.config_path.empty()
                                ? parse_config_text("")
                                : parse_config_file(flags.config_path);
  if (cmd->count("--seed")) config.seed = flags.seed;
  if (cmd->count("--cycles")) config.n_cycles = flags.cycles;
  if (cmd->count("--theta")) config.cz.theta = flags.theta;
  if (cmd->count("--t1-us")) config.noise.t1_us = flags.t1_us;
  if (cmd->count("--readout")) {
    config.readout = flags.readout == "binary" ? ReadoutMode::Binary : ReadoutMode::Ternary;
  }
  if (cmd->count("--log-populations")) config.log_populations = true;
  if (cmd->count("--no-noise")) config.noise.enabled = false;
  if (cmd->count("--initial-state")) {
    config.initial_data = {Complex(0), Complex(0), Complex(0)};
    config.initial_data[static_cast<size_t>(flags.initial_state[0] - '0')] = Complex(1);
  }
  config.validate();
  return config;
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");
  return dir;
}

// Pooled mean gap across ground-truth windows when available, otherwise the
// whole-trace W.
std::optional<double> sweep_w_measured(const ReadoutTrace& trace) {
  if (!trace.has_populations()) return compute_w(trace);
  const auto windows = detect_windows_ground_truth(trace, 0.9);
  long long gap_sum = 0;
  long long gap_count = 0;
  for (const auto& w : windows) {
    int previous = -1;
    for (int i = w.start; i < w.end; ++i) {
      if (trace.outcomes[static_cast<size_t>(i)] != 1) continue;
      if (previous >= 0) {
        gap_sum += i - previous;
        ++gap_count;
      }
      previous = i;
    }
  }
  if (gap_count == 0) return std::nullopt;
  return static_cast<double>(gap_sum) / gap_count;
}

int run_simulate(const CLI::App* cmd, const CommonFlags& flags) {
  const ExperimentConfig config = resolve_config(cmd, flags);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  ManifestBuilder manifest("simulate", config.seed);
  const auto [trace, gate_params] = run_experiment_with_params(config);

  const std::string trace_path = (dir / "trace.csv").string();
  write_trace_csv(trace_path, trace);
  manifest.add_output(trace_path);

  const std::string summary_path = (dir / "summary.json").string();
  write_text_file(summary_path, summary_json(config, trace, gate_params));
  manifest.add_output(summary_path);

  const std::string config_path = (dir / "config.echo").string();
  write_text_file(config_path, emit_config(config));
  manifest.add_output(config_path);

  manifest.write(dir);
  std::printf("simulate: %d cycles -> %s\n", trace.n_cycles(), trace_path.c_str());
  return 0;
}

struct SweepTask {
  double value;
  int value_index;
  std::uint64_t seed;
  int seed_index;
};

struct SweepResult {
  double value;
  std::uint64_t seed;
  double theta;
  std::optional<double> w_measured;
  std::string trace_path;
};

int run_sweep(const CLI::App* cmd, const CommonFlags& flags, const std::string& param,
              const std::vector<double>& values, int seeds_per_point, int jobs) {
  if (values.empty()) throw ValidationError("sweep: --values must not be empty");
  if (seeds_per_point < 1) throw ValidationError("sweep: --seeds must be >= 1");

  const ExperimentConfig base = resolve_config(cmd, flags);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  std::vector<SweepTask> tasks;
  for (size_t v = 0; v < values.size(); ++v) {
    for (int s = 0; s < seeds_per_point; ++s) {
      const std::uint64_t task_index = v * static_cast<size_t>(seeds_per_point) + static_cast<size_t>(s);
      tasks.push_back({values[v], static_cast<int>(v),
                       Rng::derive(base.seed, task_index), s});
    }
  }

  std::vector<SweepResult> results(tasks.size());
  std::atomic<size_t> next{0};
  std::mutex io_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const SweepTask& task = tasks[i];

      ExperimentConfig config = base;
      if (param == "theta") {
        config.cz.theta = task.value;
      } else if (param == "t1_us") {
        config.noise.t1_us = task.value;
      } else if (param == "chi") {
        config.cz.chi = {task.value, task.value, task.value, task.value};
      } else if (param == "zeta") {
        config.cz.zeta = {task.value, task.value, task.value, task.value};
      } else {
        throw ValidationError("sweep: unsupported --param '" + param + "'");
      }
      config.seed = task.seed;
      config.validate();

      const auto [trace, gate_params] = run_experiment_with_params(config);

      char name[128];
      std::snprintf(name, sizeof name, "trace_%s_%03d_seed_%02d.csv", param.c_str(),
                    task.value_index, task.seed_index);
      const std::string trace_path = (dir / name).string();
      {
        std::lock_guard<std::mutex> lock(io_mutex);
        write_trace_csv(trace_path, trace);
      }

      results[i] = {task.value, task.seed, gate_params.theta(), sweep_w_measured(trace),
                    trace_path};
    }
  };

  const int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  ManifestBuilder manifest("sweep", base.seed);
  for (const auto& r : results) manifest.add_output(r.trace_path);

  std::ostringstream stats;
  stats << param << ",seed,W_measured,W_theory\n";
  for (const auto& r : results) {
    stats << format_double(r.value) << ',' << r.seed << ',';
    stats << (r.w_measured ? format_double(*r.w_measured) : "nan") << ',';
    const double w = w_theory(r.theta);
    stats << (std::isinf(w) ? "inf" : format_double(w)) << '\n';
  }
  const std::string stats_path = (dir / "sweep_stats.csv").string();
  write_text_file(stats_path, stats.str());
  manifest.add_output(stats_path);

  manifest.write(dir);
  std::printf("sweep: %zu runs -> %s\n", tasks.size(), stats_path.c_str());
  return 0;
}

int run_energies(const CLI::App* cmd, const CommonFlags& flags, double eps1_min_ghz,
                 double eps1_max_ghz, double eps1_step_ghz) {
  if (eps1_step_ghz <= 0.0 || eps1_max_ghz <= eps1_min_ghz) {
    throw ValidationError("energies: need eps1-min < eps1-max and a positive step");
  }
  const ExperimentConfig config = resolve_config(cmd, flags);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  std::vector<double> grid;
  const int n = static_cast<int>(std::round((eps1_max_ghz - eps1_min_ghz) / eps1_step_ghz));
  for (int i = 0; i <= n; ++i) {
    grid.push_back(ghz_to_rad_ns(eps1_min_ghz + i * eps1_step_ghz));
  }

  ManifestBuilder manifest("energies", config.seed);
  const auto rows = eigenenergy_sweep(config.device, grid);
  const std::string csv_path = (dir / "energies.csv").string();
  write_energies_csv(csv_path, rows);
  manifest.add_output(csv_path);

  const Anticrossing ac =
      locate_anticrossing(config.device, grid, basis_index(1, 1), basis_index(2, 0));
  Json summary;
  summary["artifact_version"] = kVersion;
  summary["eps1_min_ghz"] = eps1_min_ghz;
  summary["eps1_max_ghz"] = eps1_max_ghz;
  summary["eps1_step_ghz"] = eps1_step_ghz;
  summary["min_gap_eps1_ghz"] = rad_ns_to_ghz(ac.eps1);
  summary["min_gap_ghz"] = rad_ns_to_ghz(ac.gap);
  summary["two_level_gap_ghz"] =
      2.0 * std::numbers::sqrt2 * rad_ns_to_ghz(config.device.g);
  const std::string summary_path = (dir / "energies_summary.json").string();
  write_text_file(summary_path, summary.dump(2) + "\n");
  manifest.add_output(summary_path);

  manifest.write(dir);
  std::printf("energies: %zu points -> %s (min |11>-|20> gap %.6f GHz at %.4f GHz)\n",
              grid.size(), csv_path.c_str(), rad_ns_to_ghz(ac.gap), rad_ns_to_ghz(ac.eps1));
  return 0;
}

int run_analyze(const CLI::App* cmd, const CommonFlags& flags, const std::string& trace_path,
                const DetectorSettings& detector_in, double p2_threshold) {
  const ExperimentConfig config = resolve_config(cmd, flags);
  const fs::path dir = prepare_out_dir(flags.out_dir);

  const ReadoutTrace trace = read_trace_csv(trace_path);

  DetectorSettings detector = detector_in;
  ManifestBuilder manifest("analyze", config.seed);
  const std::string report_path = (dir / "report.json").string();
  write_text_file(report_path,
                  report_json(trace, config.cz.theta, config.noise.t1_us,
                              config.schedule.t_cycle_ns(), detector, p2_threshold));
  manifest.add_output(report_path);
  manifest.write(dir);
  std::printf("analyze: %d cycles -> %s\n", trace.n_cycles(), report_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qutrit ancilla-assisted measurement simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "run one experiment");
  add_common_flags(simulate, &sim_flags);

  CommonFlags sweep_flags;
  std::string sweep_param = "theta";
  std::vector<double> sweep_values;
  int sweep_seeds = 1;
  int sweep_jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (sweep_jobs < 1) sweep_jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid of experiments");
  add_common_flags(sweep, &sweep_flags);
  sweep->add_option("--param", sweep_param, "swept parameter: theta, t1_us, chi or zeta")
      ->check(CLI::IsMember({"theta", "t1_us", "chi", "zeta"}));
  sweep->add_option("--values", sweep_values, "grid values (comma separated)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "seeds per grid point");
  sweep->add_option("--jobs", sweep_jobs, "worker threads");

  CommonFlags energies_flags;
  double eps1_min = 5.5, eps1_max = 6.5, eps1_step = 0.001;
  CLI::App* energies = app.add_subcommand("energies", "eigenenergy sweep over eps1");
  add_common_flags(energies, &energies_flags);
  energies->add_option("--eps1-min", eps1_min, "sweep start, GHz");
  energies->add_option("--eps1-max", eps1_max, "sweep end, GHz");
  energies->add_option("--eps1-step", eps1_step, "grid step, GHz");

  CommonFlags analyze_flags;
  std::string analyze_trace;
  DetectorSettings detector;
  double p2_threshold = 0.9;
  CLI::App* analyze = app.add_subcommand("analyze", "analyze a trace CSV");
  add_common_flags(analyze, &analyze_flags);
  analyze->add_option("--trace", analyze_trace, "trace CSV produced by simulate/sweep")
      ->required();
  analyze->add_option("--detector-window", detector.window, "sliding window, cycles");
  analyze->add_option("--detector-rate-multiple", detector.rate_multiple,
                      "hot threshold as a multiple of 1/W*");
  analyze->add_option("--detector-min-span", detector.min_span,
                      "minimum sustained hot span, cycles");
  analyze->add_option("--detector-min-ones", detector.min_ones,
                      "minimum 1-readouts inside a window");
  analyze->add_option("--p2-threshold", p2_threshold,
                      "ground-truth |2> population threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(simulate, sim_flags);
    if (sweep->parsed()) {
      return run_sweep(sweep, sweep_flags, sweep_param, sweep_values, sweep_seeds,
                       sweep_jobs);
    }
    if (energies->parsed()) {
      return run_energies(energies, energies_flags, eps1_min, eps1_max, eps1_step);
    }
    if (analyze->parsed()) {
      return run_analyze(analyze, analyze_flags, analyze_trace, detector, p2_threshold);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
