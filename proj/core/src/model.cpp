#include "leaksim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leaksim {

namespace {

struct EigenSystem {
  std::array<double, 9> values{};
  Mat9 vectors;  // column k is the eigenvector of values[k]
};

EigenSystem diagonalize(const DeviceParams& p) {
  Eigen::SelfAdjointEigenSolver<Mat9> solver(build_hamiltonian(p));
  EigenSystem out;
  for (int k = 0; k < 9; ++k) out.values[static_cast<size_t>(k)] = solver.eigenvalues()(k);
  out.vectors = solver.eigenvectors();
  return out;
}

double bare_energy(const DeviceParams& p, int index) {
  const int a = ancilla_of(index);
  const int d = data_of(index);
  auto level = [](double eps, double eta, int n) {
    if (n == 0) return 0.0;
    if (n == 1) return eps;
    return 2.0 * eps - eta;
  };
  return level(p.eps1, p.eta1, a) + level(p.eps2, p.eta2, d);
}

struct MatchCandidate {
  double overlap_sq;
  double energy_distance;
  int label;
  int eig;
};

// Greedy best-overlap assignment of labels to eigenvectors; ties broken by
// eigenvalue proximity, then by label and eigenvector index.
std::array<int, 9> assign_labels(const std::array<std::array<double, 9>, 9>& overlap_sq,
                                 const std::array<std::array<double, 9>, 9>& energy_dist) {
  std::vector<MatchCandidate> candidates;
  candidates.reserve(81);
  for (int l = 0; l < 9; ++l) {
    for (int k = 0; k < 9; ++k) {
      candidates.push_back({overlap_sq[static_cast<size_t>(l)][static_cast<size_t>(k)],
                            energy_dist[static_cast<size_t>(l)][static_cast<size_t>(k)], l, k});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const MatchCandidate& x, const MatchCandidate& y) {
    if (x.overlap_sq != y.overlap_sq) return x.overlap_sq > y.overlap_sq;
    if (x.energy_distance != y.energy_distance) return x.energy_distance < y.energy_distance;
    if (x.label != y.label) return x.label < y.label;
    return x.eig < y.eig;
  });

  std::array<int, 9> eig_of_label;
  eig_of_label.fill(-1);
  std::array<bool, 9> eig_taken{};
  int assigned = 0;
  for (const auto& c : candidates) {
    if (eig_of_label[static_cast<size_t>(c.label)] != -1 || eig_taken[static_cast<size_t>(c.eig)]) continue;
    eig_of_label[static_cast<size_t>(c.label)] = c.eig;
    eig_taken[static_cast<size_t>(c.eig)] = true;
    if (++assigned == 9) break;
  }
  return eig_of_label;
}

double trapezoid(std::span<const double> t, std::span<const double> f) {
  double sum = 0.0;
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    sum += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
  }
  return sum;
}

// Per-point dominant-character energies of the four leaked channels
// |02>, |12>, |21>, |22>, tabulated over a dense eps1 grid.
struct ChannelTable {
  std::vector<double> eps1;
  std::array<std::vector<double>, 4> energy;

  double interpolate(int channel, double e) const {
    const auto& xs = eps1;
    const auto& ys = energy[static_cast<size_t>(channel)];
    if (e <= xs.front()) return ys.front();
    if (e >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), e);
    const size_t hi = static_cast<size_t>(it - xs.begin());
    const size_t lo = hi - 1;
    const double w = (e - xs[lo]) / (xs[hi] - xs[lo]);
    return (1.0 - w) * ys[lo] + w * ys[hi];
  }
};

ChannelTable build_channel_table(const DeviceParams& base, double eps_min,
                                 double eps_max, double step) {
  static constexpr std::array<int, 4> kChannels{basis_index(0, 2), basis_index(1, 2),
                                                basis_index(2, 1), basis_index(2, 2)};
  ChannelTable table;
  const int n = std::max(2, static_cast<int>(std::ceil((eps_max - eps_min) / step)) + 1);
  for (int i = 0; i < n; ++i) {
    const double e = eps_min + (eps_max - eps_min) * i / (n - 1);
    DeviceParams p = base;
    p.eps1 = e;
    const EigenSystem sys = diagonalize(p);

    // Greedy distinct assignment of the four channels by dominant character.
    std::array<int, 4> pick;
    pick.fill(-1);
    std::array<bool, 9> taken{};
    for (int round = 0; round < 4; ++round) {
      double best = -1.0;
      int best_c = -1, best_k = -1;
      for (int c = 0; c < 4; ++c) {
        if (pick[static_cast<size_t>(c)] != -1) continue;
        for (int k = 0; k < 9; ++k) {
          if (taken[static_cast<size_t>(k)]) continue;
          const double ov = std::norm(sys.vectors(kChannels[static_cast<size_t>(c)], k));
          if (ov > best) {
            best = ov;
            best_c = c;
            best_k = k;
          }
        }
      }
      pick[static_cast<size_t>(best_c)] = best_k;
      taken[static_cast<size_t>(best_k)] = true;
    }

    table.eps1.push_back(e);
    for (int c = 0; c < 4; ++c) {
      table.energy[static_cast<size_t>(c)].push_back(sys.values[static_cast<size_t>(pick[static_cast<size_t>(c)])]);
    }
  }
  return table;
}

}  // namespace

DeviceParams DeviceParams::from_ghz(double eps1, double eps2, double eta1,
                                    double eta2, double g) {
  DeviceParams p;
  p.eps1 = ghz_to_rad_ns(eps1);
  p.eps2 = ghz_to_rad_ns(eps2);
  p.eta1 = ghz_to_rad_ns(eta1);
  p.eta2 = ghz_to_rad_ns(eta2);
  p.g = ghz_to_rad_ns(g);
  p.validate();
  return p;
}

void DeviceParams::validate() const {
  if (eps1 <= 0.0 || eps2 <= 0.0) {
    throw std::invalid_argument("DeviceParams: qutrit frequencies must be positive");
  }
  if (eta1 <= 0.0 || eta2 <= 0.0) {
    throw std::invalid_argument("DeviceParams: anharmonicities must be positive");
  }
  if (g <= 0.0) {
    throw std::invalid_argument("DeviceParams: coupling must be positive");
  }
}

Mat9 build_hamiltonian(const DeviceParams& p) {
  p.validate();
  Mat3 h1 = Mat3::Zero();
  h1(1, 1) = p.eps1;
  h1(2, 2) = 2.0 * p.eps1 - p.eta1;
  Mat3 h2 = Mat3::Zero();
  h2(1, 1) = p.eps2;
  h2(2, 2) = 2.0 * p.eps2 - p.eta2;

  const Complex i(0.0, 1.0);
  const double r2 = std::numbers::sqrt2;
  Mat3 y = Mat3::Zero();
  y(0, 1) = -i;
  y(1, 0) = i;
  y(1, 2) = -i * r2;
  y(2, 1) = i * r2;

  const Mat3 eye = Mat3::Identity();
  return kron3(h1, eye) + kron3(eye, h2) + p.g * kron3(y, y);
}

std::vector<EnergySweepRow> eigenenergy_sweep(const DeviceParams& base,
                                              std::span<const double> eps1_grid) {
  if (eps1_grid.empty()) {
    throw std::invalid_argument("eigenenergy_sweep: empty grid");
  }
  if (!std::is_sorted(eps1_grid.begin(), eps1_grid.end())) {
    throw std::invalid_argument("eigenenergy_sweep: grid must be sorted");
  }

  std::vector<EnergySweepRow> rows;
  rows.reserve(eps1_grid.size());

  Mat9 prev_vectors;                // column l = eigenvector labeled l at prev point
  std::array<double, 9> prev_energy{};
  bool seeded = false;

  for (const double eps1 : eps1_grid) {
    DeviceParams p = base;
    p.eps1 = eps1;
    const EigenSystem sys = diagonalize(p);

    std::array<std::array<double, 9>, 9> overlap_sq{};
    std::array<std::array<double, 9>, 9> energy_dist{};
    for (int l = 0; l < 9; ++l) {
      for (int k = 0; k < 9; ++k) {
        if (!seeded) {
          // Seed labels by bare-state character.
          overlap_sq[static_cast<size_t>(l)][static_cast<size_t>(k)] = std::norm(sys.vectors(l, k));
          energy_dist[static_cast<size_t>(l)][static_cast<size_t>(k)] =
              std::abs(sys.values[static_cast<size_t>(k)] - bare_energy(p, l));
        } else {
          overlap_sq[static_cast<size_t>(l)][static_cast<size_t>(k)] =
              std::norm(prev_vectors.col(l).dot(sys.vectors.col(k)));
          energy_dist[static_cast<size_t>(l)][static_cast<size_t>(k)] =
              std::abs(sys.values[static_cast<size_t>(k)] - prev_energy[static_cast<size_t>(l)]);
        }
      }
    }

    const std::array<int, 9> eig_of_label = assign_labels(overlap_sq, energy_dist);

    if (seeded) {
      for (int l = 0; l < 9; ++l) {
        const double ov = overlap_sq[static_cast<size_t>(l)][static_cast<size_t>(eig_of_label[static_cast<size_t>(l)])];
        if (ov <= 0.5) {
          throw std::runtime_error(
              "eigenenergy_sweep: adjacent-point eigenvector overlap <= 0.5; "
              "grid too coarse for adiabatic labeling");
        }
      }
    }

    EnergySweepRow row;
    row.eps1 = eps1;
    Mat9 labeled_vectors;
    for (int l = 0; l < 9; ++l) {
      const int k = eig_of_label[static_cast<size_t>(l)];
      row.energy[static_cast<size_t>(l)] = sys.values[static_cast<size_t>(k)];
      labeled_vectors.col(l) = sys.vectors.col(k);
    }
    rows.push_back(row);
    prev_vectors = labeled_vectors;
    prev_energy = row.energy;
    seeded = true;
  }
  return rows;
}

Anticrossing locate_anticrossing(const DeviceParams& base,
                                 std::span<const double> eps1_grid,
                                 int bare_a, int bare_b) {
  if (eps1_grid.empty()) {
    throw std::invalid_argument("locate_anticrossing: empty grid");
  }
  if (bare_a == bare_b || bare_a < 0 || bare_a > 8 || bare_b < 0 || bare_b > 8) {
    throw std::invalid_argument("locate_anticrossing: bad channel indices");
  }

  Anticrossing best;
  bool have = false;
  for (size_t i = 0; i < eps1_grid.size(); ++i) {
    DeviceParams p = base;
    p.eps1 = eps1_grid[i];
    const EigenSystem sys = diagonalize(p);

    int ia = 0;
    for (int k = 1; k < 9; ++k) {
      if (std::norm(sys.vectors(bare_a, k)) > std::norm(sys.vectors(bare_a, ia))) ia = k;
    }
    int ib = -1;
    for (int k = 0; k < 9; ++k) {
      if (k == ia) continue;
      if (ib < 0 || std::norm(sys.vectors(bare_b, k)) > std::norm(sys.vectors(bare_b, ib))) ib = k;
    }

    const double gap = std::abs(sys.values[static_cast<size_t>(ia)] - sys.values[static_cast<size_t>(ib)]);
    if (!have || gap < best.gap) {
      best.eps1 = eps1_grid[i];
      best.gap = gap;
      best.grid_index = static_cast<int>(i);
      have = true;
    }
  }
  return best;
}

void PulseProfile::validate() const {
  if (t_ns.size() < 2 || t_ns.size() != eps1.size()) {
    throw std::invalid_argument("PulseProfile: need matching time/frequency tables with >= 2 samples");
  }
  if (t_ns.front() != 0.0) {
    throw std::invalid_argument("PulseProfile: first sample must be at t = 0");
  }
  for (size_t i = 0; i + 1 < t_ns.size(); ++i) {
    if (t_ns[i + 1] <= t_ns[i]) {
      throw std::invalid_argument("PulseProfile: times must be strictly increasing");
    }
  }
}

PulseProfile PulseProfile::constant(double eps1, double t_gate_ns) {
  PulseProfile p;
  p.t_ns = {0.0, t_gate_ns};
  p.eps1 = {eps1, eps1};
  return p;
}

double reduce_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

DynamicalPhases dynamical_phases(const PulseProfile& profile, const DeviceParams& p,
                                 PhaseIntegrand mode, double eigen_grid_step) {
  profile.validate();
  const double tg = profile.t_gate_ns();

  DynamicalPhases out;
  if (mode == PhaseIntegrand::BareFrequency) {
    const double int_eps1 = trapezoid(profile.t_ns, profile.eps1);
    out.xi1 = -(2.0 * p.eps2 - p.eta2) * tg;
    out.xi2 = out.xi1 - int_eps1;
    out.xi3 = -p.eps2 * tg - (2.0 * int_eps1 - p.eta1 * tg);
    out.xi4 = out.xi1 - (2.0 * int_eps1 - p.eta1 * tg);
  } else {
    const auto [lo_it, hi_it] = std::minmax_element(profile.eps1.begin(), profile.eps1.end());
    const double pad = std::max(eigen_grid_step, 1e-6);
    const ChannelTable table =
        build_channel_table(p, *lo_it - pad, *hi_it + pad, eigen_grid_step);

    // Refine each profile segment so the dressed energies are sampled finely
    // even when the table knots are sparse in time.
    std::array<double, 4> integrals{};
    constexpr int kSub = 64;
    for (size_t i = 0; i + 1 < profile.t_ns.size(); ++i) {
      const double t0 = profile.t_ns[i], t1 = profile.t_ns[i + 1];
      const double e0 = profile.eps1[i], e1 = profile.eps1[i + 1];
      for (int s = 0; s < kSub; ++s) {
        const double ua = static_cast<double>(s) / kSub;
        const double ub = static_cast<double>(s + 1) / kSub;
        const double dt = (t1 - t0) / kSub;
        for (int c = 0; c < 4; ++c) {
          const double fa = table.interpolate(c, e0 + (e1 - e0) * ua);
          const double fb = table.interpolate(c, e0 + (e1 - e0) * ub);
          integrals[static_cast<size_t>(c)] += 0.5 * (fa + fb) * dt;
        }
      }
    }
    out.xi1 = -integrals[0];
    out.xi2 = -integrals[1];
    out.xi3 = -integrals[2];
    out.xi4 = -integrals[3];
  }
  out.theta = out.xi2 - out.xi1;
  return out;
}

}  // namespace leaksim
