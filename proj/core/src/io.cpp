#include "leaksim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "leaksim/version.hpp"

namespace leaksim {

using Json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string trace_csv(const ReadoutTrace& trace) {
  std::ostringstream out;
  const bool pops = trace.has_populations();
  out << (pops ? "cycle,outcome,p_data_0,p_data_1,p_data_2,p_anc_2\n" : "cycle,outcome\n");
  for (int i = 0; i < trace.n_cycles(); ++i) {
    out << i << ',' << static_cast<int>(trace.outcomes[static_cast<size_t>(i)]);
    if (pops) {
      const PopulationRow& row = trace.populations[static_cast<size_t>(i)];
      out << ',' << format_double(row.p_data0) << ',' << format_double(row.p_data1)
          << ',' << format_double(row.p_data2) << ',' << format_double(row.p_anc2);
    }
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_trace_csv(const std::string& path, const ReadoutTrace& trace) {
  write_text_file(path, trace_csv(trace));
}

ReadoutTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace '" + path + "' is empty");

  const bool pops = line.find("p_data_0") != std::string::npos;
  if (line.rfind("cycle,outcome", 0) != 0) {
    throw std::runtime_error("trace '" + path + "': unrecognized header");
  }

  ReadoutTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    const size_t expected = pops ? 6 : 2;
    if (fields.size() != expected) {
      throw std::runtime_error("trace '" + path + "': malformed row '" + line + "'");
    }
    trace.outcomes.push_back(static_cast<std::uint8_t>(std::stoi(fields[1])));
    if (pops) {
      PopulationRow row;
      row.p_data0 = std::stod(fields[2]);
      row.p_data1 = std::stod(fields[3]);
      row.p_data2 = std::stod(fields[4]);
      row.p_anc2 = std::stod(fields[5]);
      trace.populations.push_back(row);
    }
  }
  return trace;
}

std::string energies_csv(const std::vector<EnergySweepRow>& rows) {
  std::ostringstream out;
  out << "eps1_GHz";
  for (int a = 0; a < 3; ++a) {
    for (int d = 0; d < 3; ++d) out << ",E" << a << d << "_GHz";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << format_double(rad_ns_to_ghz(row.eps1));
    for (double e : row.energy) out << ',' << format_double(rad_ns_to_ghz(e));
    out << '\n';
  }
  return out.str();
}

void write_energies_csv(const std::string& path, const std::vector<EnergySweepRow>& rows) {
  write_text_file(path, energies_csv(rows));
}

namespace {

Json config_json(const ExperimentConfig& config) {
  Json j;
  j["seed"] = config.seed;
  j["cycles"] = config.n_cycles;
  j["readout"] = config.readout == ReadoutMode::Ternary ? "ternary" : "binary";
  j["log_populations"] = config.log_populations;
  Json init = Json::array();
  for (const auto& amp : config.initial_data) {
    init.push_back(amp.real());
    init.push_back(amp.imag());
  }
  j["initial_state"] = init;
  j["eps1_ghz"] = rad_ns_to_ghz(config.device.eps1);
  j["eps2_ghz"] = rad_ns_to_ghz(config.device.eps2);
  j["eta1_ghz"] = rad_ns_to_ghz(config.device.eta1);
  j["eta2_ghz"] = rad_ns_to_ghz(config.device.eta2);
  j["g_ghz"] = rad_ns_to_ghz(config.device.g);
  j["t_h_ns"] = config.schedule.t_h_ns;
  j["t_cz_ns"] = config.schedule.t_cz_ns;
  j["t_cycle_ns"] = config.schedule.t_cycle_ns();
  j["noise_enabled"] = config.noise.enabled;
  j["t1_us"] = config.noise.t1_us;
  j["theta"] = config.cz.theta;
  j["xi1"] = config.cz.xi1;
  j["xi3"] = config.cz.xi3;
  j["xi4"] = config.cz.xi4;
  j["chi"] = config.cz.chi;
  j["zeta"] = config.cz.zeta;
  if (config.cz.phi) j["phi"] = *config.cz.phi;
  if (config.cz.pulse) {
    j["pulse_t_ns"] = config.cz.pulse->t_ns;
    Json eps = Json::array();
    for (double e : config.cz.pulse->eps1) eps.push_back(rad_ns_to_ghz(e));
    j["pulse_eps1_ghz"] = eps;
  }
  return j;
}

}  // namespace

std::string summary_json(const ExperimentConfig& config, const ReadoutTrace& trace,
                         const CzParams& gate_params) {
  const TraceSummary summary = summarize_trace(trace);
  Json j;
  j["artifact_version"] = kVersion;
  j["config"] = config_json(config);
  j["seed"] = config.seed;
  Json gate;
  gate["xi"] = gate_params.xi;
  gate["chi"] = gate_params.chi;
  gate["zeta"] = gate_params.zeta;
  gate["phi"] = gate_params.phi;
  gate["theta"] = gate_params.theta();
  j["gate_params"] = gate;
  Json counts;
  counts["0"] = summary.counts[0];
  counts["1"] = summary.counts[1];
  counts["2"] = summary.counts[2];
  j["outcome_counts"] = counts;
  j["step_locations"] = summary.step_locations;
  return j.dump(2) + "\n";
}

std::string report_json(const ReadoutTrace& trace, double theta, double t1_us,
                        double t_cycle_ns, const DetectorSettings& detector,
                        double p2_threshold) {
  const LeakedPrediction prediction = leaked_ancilla_prediction(theta, t1_us, t_cycle_ns);

  DetectorSettings settings = detector;
  settings.w_star = prediction.w_star;
  const std::vector<LeakageWindow> windows =
      detect_leakage_windows(trace, settings, p2_threshold);
  const std::vector<WindowStats> stats = window_stats(trace, windows);

  Json j;
  j["artifact_version"] = kVersion;
  j["n_cycles"] = trace.n_cycles();
  j["theta"] = theta;
  j["W_theory"] = std::isinf(prediction.w_theory) ? Json("inf") : Json(prediction.w_theory);
  j["W_star"] = prediction.w_star;
  j["theta_star"] = prediction.theta_star;
  j["paralyzed_theta"] = prediction.paralyzed;

  Json det;
  det["mode"] = trace.has_populations() ? "ground_truth" : "trace_only";
  det["window"] = settings.window;
  det["rate_multiple"] = settings.rate_multiple;
  det["min_span"] = settings.min_span;
  det["min_ones"] = settings.min_ones;
  det["p2_threshold"] = p2_threshold;
  j["detector"] = det;

  const auto whole = compute_w(trace);
  j["W_whole_trace"] = whole ? Json(*whole) : Json(nullptr);

  Json win_list = Json::array();
  for (const auto& s : stats) {
    Json w;
    w["start"] = s.window.start;
    w["end"] = s.window.end;
    w["length"] = s.window.length();
    w["source"] = s.window.source == LeakageWindow::Source::GroundTruth ? "ground_truth"
                                                                        : "detected";
    w["one_frequency"] = s.window.one_frequency;
    w["W_measured"] = s.w_measured ? Json(*s.w_measured) : Json(nullptr);
    win_list.push_back(w);
  }
  j["windows"] = win_list;
  return j.dump(2) + "\n";
}

}  // namespace leaksim
