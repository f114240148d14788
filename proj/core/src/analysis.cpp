#include "leaksim/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leaksim {

double DataQutritState::norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
}

void DataQutritState::validate() const {
  if (std::abs(norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("DataQutritState: not normalized");
  }
}

DataQutritState t0_map(const DataQutritState& psi, double chi1, double chi2) {
  const double c1 = std::cos(chi1), s1 = std::sin(chi1);
  const double c2 = std::cos(chi2), s2 = std::sin(chi2);

  const Complex na = psi.a + psi.a * c1 + psi.b * s1;
  const Complex nb = psi.b * c1 - psi.a * s1 - psi.b * c2 - psi.c * s2;
  const Complex nc = psi.c + psi.b * s2 - psi.c * c2;

  const double n = std::norm(na) + std::norm(nb) + std::norm(nc);
  if (n <= 1e-300) {
    throw std::domain_error("t0_map: outcome-0 branch has zero weight for this input");
  }
  const double inv = 1.0 / std::sqrt(n);
  return DataQutritState{na * inv, nb * inv, nc * inv};
}

std::array<ConditionalBranch, 3> conditional_maps(const DataQutritState& psi,
                                                  const CzParams& params) {
  psi.validate();
  const Mat9 h = embed_ancilla_gate(hadamard());
  const Mat9 cycle = h * cz_unitary(params) * h;

  const TwoQutritState input = TwoQutritState::product(0, {psi.a, psi.b, psi.c});
  const Vec9 out = cycle * input.amps;

  std::array<ConditionalBranch, 3> branches;
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    Complex block[3];
    double p = 0.0;
    for (int d = 0; d < 3; ++d) {
      block[d] = out(basis_index(a, d));
      p += std::norm(block[d]);
    }
    branches[static_cast<size_t>(a)].probability = p;
    if (p > 0.0) {
      const double inv = 1.0 / std::sqrt(p);
      branches[static_cast<size_t>(a)].state =
          DataQutritState{block[0] * inv, block[1] * inv, block[2] * inv};
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::logic_error("conditional_maps: branch probabilities do not sum to 1");
  }
  return branches;
}

double w_theory(double theta) {
  if (std::abs(reduce_angle(theta)) < 1e-12) {
    return std::numeric_limits<double>::infinity();
  }
  const double s = std::sin(theta / 2.0);
  return 1.0 / (s * s);
}

LeakedPrediction leaked_ancilla_prediction(double theta, double t1_us,
                                           double t_cycle_ns) {
  if (t1_us <= 0.0 || t_cycle_ns <= 0.0) {
    throw std::invalid_argument("leaked_ancilla_prediction: T1 and t_cycle must be positive");
  }
  LeakedPrediction out;
  const double s = std::sin(theta / 2.0);
  out.p1 = s * s;
  out.w_theory = w_theory(theta);
  out.paralyzed = std::isinf(out.w_theory);
  out.w_star = 2.0 * (t1_us * 1000.0) / t_cycle_ns;
  out.theta_star = 2.0 * std::asin(1.0 / std::sqrt(out.w_star));
  return out;
}

bool paralysis_susceptible(double theta, double theta_star) {
  double r = std::fmod(theta, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  return r < theta_star;
}

std::optional<double> compute_w(const ReadoutTrace& trace,
                                std::optional<std::pair<int, int>> window) {
  const int n = trace.n_cycles();
  const int first = window ? window->first : 0;
  const int last = window ? window->second : n;
  if (first < 0 || last > n || first >= last) {
    throw std::invalid_argument("compute_w: empty or out-of-range window");
  }

  int previous = -1;
  long long gap_sum = 0;
  int gap_count = 0;
  for (int i = first; i < last; ++i) {
    if (trace.outcomes[static_cast<size_t>(i)] != 1) continue;
    if (previous >= 0) {
      gap_sum += i - previous;
      ++gap_count;
    }
    previous = i;
  }
  if (gap_count == 0) return std::nullopt;
  return static_cast<double>(gap_sum) / gap_count;
}

namespace {

double window_one_frequency(const ReadoutTrace& trace, int start, int end) {
  int ones = 0;
  for (int i = start; i < end; ++i) ones += trace.outcomes[static_cast<size_t>(i)] == 1;
  return end > start ? static_cast<double>(ones) / (end - start) : 0.0;
}

}  // namespace

std::vector<LeakageWindow> detect_windows_ground_truth(const ReadoutTrace& trace,
                                                       double p2_threshold) {
  if (!trace.has_populations()) {
    throw std::invalid_argument("detect_windows_ground_truth: trace has no population log");
  }
  std::vector<LeakageWindow> windows;
  const int n = trace.n_cycles();
  int start = -1;
  for (int i = 0; i <= n; ++i) {
    const bool leaked = i < n && trace.populations[static_cast<size_t>(i)].p_data2 > p2_threshold;
    if (leaked && start < 0) start = i;
    if (!leaked && start >= 0) {
      LeakageWindow w;
      w.start = start;
      w.end = i;
      w.source = LeakageWindow::Source::GroundTruth;
      w.one_frequency = window_one_frequency(trace, w.start, w.end);
      windows.push_back(w);
      start = -1;
    }
  }
  return windows;
}

void DetectorSettings::validate() const {
  if (window < 1 || min_span < 1 || min_ones < 1) {
    throw std::invalid_argument("DetectorSettings: window, min_span and min_ones must be positive");
  }
  if (min_span <= window) {
    throw std::invalid_argument(
        "DetectorSettings: min_span must exceed window (an isolated 1-readout "
        "makes exactly `window` positions hot)");
  }
  if (w_star <= 0.0 || rate_multiple <= 0.0) {
    throw std::invalid_argument("DetectorSettings: w_star and rate_multiple must be positive");
  }
}

std::vector<LeakageWindow> detect_windows_trace_only(const ReadoutTrace& trace,
                                                     const DetectorSettings& settings) {
  settings.validate();
  std::vector<LeakageWindow> windows;
  const int n = trace.n_cycles();
  const int w = settings.window;
  if (n < w) return windows;

  std::vector<int> prefix(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    prefix[static_cast<size_t>(i) + 1] =
        prefix[static_cast<size_t>(i)] + (trace.outcomes[static_cast<size_t>(i)] == 1);
  }
  auto ones_in = [&](int a, int b) { return prefix[static_cast<size_t>(b)] - prefix[static_cast<size_t>(a)]; };

  const double threshold = settings.rate_multiple / settings.w_star;
  int run_start = -1;
  const int last_start = n - w;
  for (int i = 0; i <= last_start + 1; ++i) {
    const bool hot = i <= last_start &&
                     static_cast<double>(ones_in(i, i + w)) / w > threshold;
    if (hot && run_start < 0) run_start = i;
    if (!hot && run_start >= 0) {
      const int run_length = i - run_start;
      const int start = run_start;
      const int end = std::min(n, (i - 1) + w);
      if (run_length >= settings.min_span && ones_in(start, end) >= settings.min_ones) {
        LeakageWindow lw;
        lw.start = start;
        lw.end = end;
        lw.source = LeakageWindow::Source::Detected;
        lw.one_frequency = window_one_frequency(trace, start, end);
        windows.push_back(lw);
      }
      run_start = -1;
    }
  }
  return windows;
}

std::vector<LeakageWindow> detect_leakage_windows(const ReadoutTrace& trace,
                                                  const DetectorSettings& settings,
                                                  double p2_threshold) {
  if (trace.has_populations()) {
    return detect_windows_ground_truth(trace, p2_threshold);
  }
  return detect_windows_trace_only(trace, settings);
}

std::vector<WindowStats> window_stats(const ReadoutTrace& trace,
                                      const std::vector<LeakageWindow>& windows) {
  std::vector<WindowStats> stats;
  stats.reserve(windows.size());
  for (const auto& w : windows) {
    stats.push_back({w, compute_w(trace, std::pair<int, int>{w.start, w.end})});
  }
  return stats;
}

}  // namespace leaksim
