#pragma once

#include <string>
#include <vector>

#include "leaksim/analysis.hpp"
#include "leaksim/model.hpp"
#include "leaksim/protocol.hpp"

namespace leaksim {

/// Formats a double with 17 significant digits ('.' decimal, no locale).
std::string format_double(double value);

/// Trace CSV: header `cycle,outcome[,p_data_0,p_data_1,p_data_2,p_anc_2]`,
/// one row per cycle.
std::string trace_csv(const ReadoutTrace& trace);
void write_trace_csv(const std::string& path, const ReadoutTrace& trace);
ReadoutTrace read_trace_csv(const std::string& path);

/// Energy sweep CSV: columns eps1_GHz, E00_GHz .. E22_GHz (adiabatic channel
/// labels in the header).
std::string energies_csv(const std::vector<EnergySweepRow>& rows);
void write_energies_csv(const std::string& path, const std::vector<EnergySweepRow>& rows);

/// Summary JSON: config echo, seed, outcome counts, step locations.
std::string summary_json(const ExperimentConfig& config, const ReadoutTrace& trace,
                         const CzParams& gate_params);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Analysis report JSON: windows with per-window W, the analytic W(theta),
/// W*, theta*, and detector settings.
std::string report_json(const ReadoutTrace& trace, double theta, double t1_us,
                        double t_cycle_ns, const DetectorSettings& detector,
                        double p2_threshold);

}  // namespace leaksim
