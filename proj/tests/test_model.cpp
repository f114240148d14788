#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "leaksim/model.hpp"
#include "oracles.hpp"

using namespace leaksim;

namespace {

std::vector<double> ghz_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const int n = static_cast<int>(std::round((hi - lo) / step));
  for (int i = 0; i <= n; ++i) grid.push_back(ghz_to_rad_ns(lo + i * step));
  return grid;
}

// Brute-force tensor-product construction, kept separate from kron3.
Mat9 hamiltonian_oracle(const DeviceParams& p) {
  auto level = [](double eps, double eta, int n) {
    return n == 0 ? 0.0 : (n == 1 ? eps : 2.0 * eps - eta);
  };
  const Complex i(0, 1);
  Mat3 y = Mat3::Zero();
  y(0, 1) = -i;
  y(1, 0) = i;
  y(1, 2) = -i * std::numbers::sqrt2;
  y(2, 1) = i * std::numbers::sqrt2;

  Mat9 h = Mat9::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int d = 0; d < 3; ++d) {
      const int row = basis_index(a, d);
      h(row, row) += level(p.eps1, p.eta1, a) + level(p.eps2, p.eta2, d);
      for (int ap = 0; ap < 3; ++ap) {
        for (int dp = 0; dp < 3; ++dp) {
          h(basis_index(ap, dp), row) += p.g * y(ap, a) * y(dp, d);
        }
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("uncoupled Hamiltonian is diagonal with eps1+eps2 at |11>") {
  DeviceParams p;
  p.g = 1e-300;  // effectively zero while passing validation
  const Mat9 h = build_hamiltonian(p);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      if (r != c) CHECK(std::abs(h(r, c)) < 1e-290);
    }
  }
  CHECK(h(basis_index(1, 1), basis_index(1, 1)).real() ==
        doctest::Approx(p.eps1 + p.eps2));
}

TEST_CASE("Y matrix carries the sqrt(2) elements") {
  // isolate g Y(x)Y by subtracting the uncoupled part
  DeviceParams p;
  const Mat9 h = build_hamiltonian(p);
  DeviceParams p0 = p;
  p0.g = 1e-300;
  const Mat9 coupling = h - build_hamiltonian(p0);
  // <01| g YxY |10> = g * Y(0,1)*Y(1,0) = g * (-i)(i) = g
  CHECK(coupling(basis_index(0, 1), basis_index(1, 0)).real() == doctest::Approx(p.g));
  // <11| g YxY |02> = g * Y(1,0)*Y(1,2) -> check the sqrt2 magnitude via |02>~|11>
  CHECK(std::abs(coupling(basis_index(0, 2), basis_index(1, 1))) ==
        doctest::Approx(std::numbers::sqrt2 * p.g));
}

TEST_CASE("build_hamiltonian matches the brute-force tensor oracle") {
  const DeviceParams p = DeviceParams::from_ghz(6.13, 6.0, 0.2, 0.21, 0.025);
  const Mat9 h = build_hamiltonian(p);
  CHECK(max_abs((h - hamiltonian_oracle(p)).eval()) < 1e-12);
  CHECK(is_hermitian(h, 1e-14));
  // The |11>~|20> coupling element comes out as sqrt(2) g.
  CHECK(std::abs(h(basis_index(1, 1), basis_index(2, 0))) ==
        doctest::Approx(std::numbers::sqrt2 * p.g));
}

TEST_CASE("eigenvalue sum equals the trace") {
  const DeviceParams p = DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.2, 0.025);
  const Mat9 h = build_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Mat9> solver(h);
  CHECK(solver.eigenvalues().sum() ==
        doctest::Approx(h.trace().real()).epsilon(1e-9));
}

TEST_CASE("far-detuned E11 matches second-order perturbation theory") {
  const DeviceParams base = DeviceParams::from_ghz(5.0, 6.0, 0.2, 0.2, 0.025);
  const std::vector<double> grid{ghz_to_rad_ns(5.0)};
  const auto rows = eigenenergy_sweep(base, grid);
  const double e11 = rows[0].energy[basis_index(1, 1)];

  const Mat9 h = hamiltonian_oracle(base);
  const int k11 = basis_index(1, 1);
  double shift = 0.0;
  for (int j = 0; j < 9; ++j) {
    if (j == k11) continue;
    const double coupling_sq = std::norm(h(j, k11));
    if (coupling_sq == 0.0) continue;
    shift += coupling_sq / (h(k11, k11).real() - h(j, j).real());
  }
  const double bare = base.eps1 + base.eps2;
  CHECK(e11 - bare == doctest::Approx(shift).epsilon(0.1));
}

TEST_CASE("sweep locates the |11>-|20> anticrossing at 6.2 GHz with gap 2 sqrt(2) g") {
  const DeviceParams base = DeviceParams::from_ghz(6.0, 6.0, 0.2, 0.2, 0.025);
  const std::vector<double> grid = ghz_grid(6.0, 6.4, 0.001);
  const Anticrossing ac =
      locate_anticrossing(base, grid, basis_index(1, 1), basis_index(2, 0));

  // 2x2 block oracle: [[E11, sqrt(2) g], [sqrt(2) g, E20]] has minimal gap
  // 2 sqrt(2) g exactly at the bare resonance eps1 = eps2 + eta1.
  const double oracle_gap = 2.0 * std::numbers::sqrt2 * base.g;
  const double oracle_eps1 = ghz_to_rad_ns(6.2);

  CHECK(std::abs(ac.gap - oracle_gap) / oracle_gap < 0.01);
  // The full nine-level model shifts the resonance a few MHz above the 2x2
  // prediction through the |02> repulsion of the |11> channel.
  CHECK(std::abs(ac.eps1 - oracle_eps1) < ghz_to_rad_ns(0.005));
}

TEST_CASE("sweep labels stay on adiabatic curves and rows stay complete") {
  const DeviceParams base = DeviceParams::from_ghz(6.0, 6.0, 0.2, 0.2, 0.025);
  const std::vector<double> grid = ghz_grid(5.5, 6.5, 0.001);
  const auto rows = eigenenergy_sweep(base, grid);
  REQUIRE(rows.size() == grid.size());
  for (const auto& row : rows) {
    // each row carries nine finite energies
    for (double e : row.energy) CHECK(std::isfinite(e));
  }
  // adiabatic curves never cross: energies labeled at the seed keep their
  // vertical order only piecewise, but each labeled curve must be continuous
  const auto& first = rows.front();
  for (size_t i = 1; i < rows.size(); ++i) {
    for (int l = 0; l < 9; ++l) {
      CHECK(std::abs(rows[i].energy[static_cast<size_t>(l)] -
                     rows[i - 1].energy[static_cast<size_t>(l)]) <
            ghz_to_rad_ns(0.02));
    }
  }
  // dressed ground state sits a coupling-squared shift below zero
  CHECK(std::abs(first.energy[basis_index(0, 0)]) < ghz_to_rad_ns(1e-4));
}

TEST_CASE("sweep rejects empty, unsorted and too-coarse grids") {
  const DeviceParams base = DeviceParams::from_ghz(6.0, 6.0, 0.2, 0.2, 0.025);
  CHECK_THROWS_AS(eigenenergy_sweep(base, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(eigenenergy_sweep(base, std::vector<double>{ghz_to_rad_ns(6.2), ghz_to_rad_ns(6.0)}),
                  std::invalid_argument);
  // stepping straight onto the anticrossing center leaves the second hybrid
  // with overlap below 1/2; labeling confidence must fail
  const std::vector<double> coarse{ghz_to_rad_ns(6.0), ghz_to_rad_ns(6.2), ghz_to_rad_ns(6.4)};
  CHECK_THROWS_AS(eigenenergy_sweep(base, coarse), std::runtime_error);
}

TEST_CASE("dynamical phases of a constant profile") {
  const DeviceParams p = DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.2, 0.025);
  const double tg = 25.0;
  const PulseProfile profile = PulseProfile::constant(ghz_to_rad_ns(6.2), tg);
  const DynamicalPhases phases = dynamical_phases(profile, p);

  CHECK(phases.theta == doctest::Approx(-ghz_to_rad_ns(6.2) * tg).epsilon(1e-12));
  CHECK(phases.xi1 == doctest::Approx(-(2.0 * p.eps2 - p.eta2) * tg).epsilon(1e-12));
  CHECK(phases.theta == doctest::Approx(phases.xi2 - phases.xi1));
}

TEST_CASE("linear ramp integrates exactly") {
  const DeviceParams p = DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.2, 0.025);
  PulseProfile profile;
  profile.t_ns = {0.0, 25.0};
  profile.eps1 = {ghz_to_rad_ns(6.0), ghz_to_rad_ns(6.4)};
  const DynamicalPhases phases = dynamical_phases(profile, p);
  const double expected = -0.5 * (ghz_to_rad_ns(6.0) + ghz_to_rad_ns(6.4)) * 25.0;
  CHECK(phases.theta == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("xi identities forced by the integrand definitions") {
  const DeviceParams p = DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.21, 0.025);
  PulseProfile profile;
  profile.t_ns = {0.0, 5.0, 12.0, 25.0};
  profile.eps1 = {ghz_to_rad_ns(6.0), ghz_to_rad_ns(6.2), ghz_to_rad_ns(6.2), ghz_to_rad_ns(6.05)};
  const DynamicalPhases ph = dynamical_phases(profile, p);

  double int_eps1 = 0.0;
  for (size_t i = 0; i + 1 < profile.t_ns.size(); ++i) {
    int_eps1 += 0.5 * (profile.eps1[i] + profile.eps1[i + 1]) *
                (profile.t_ns[i + 1] - profile.t_ns[i]);
  }
  const double tg = profile.t_gate_ns();
  CHECK(ph.theta == doctest::Approx(-int_eps1).epsilon(1e-12));
  CHECK(ph.xi2 - ph.xi1 == doctest::Approx(-int_eps1).epsilon(1e-12));
  CHECK(ph.xi4 - ph.xi2 ==
        doctest::Approx(-(2.0 * int_eps1 - p.eta1 * tg) + int_eps1).epsilon(1e-12));
}

TEST_CASE("eigenenergy integrand mode agrees with the bare mode far from anticrossings") {
  const DeviceParams p = DeviceParams::from_ghz(5.0, 6.0, 0.2, 0.2, 0.025);
  const PulseProfile profile = PulseProfile::constant(ghz_to_rad_ns(5.0), 25.0);
  const DynamicalPhases bare = dynamical_phases(profile, p, PhaseIntegrand::BareFrequency);
  const DynamicalPhases dressed = dynamical_phases(profile, p, PhaseIntegrand::Eigenenergy);
  CHECK(dressed.xi1 == doctest::Approx(bare.xi1).epsilon(1e-3));
  CHECK(dressed.xi2 == doctest::Approx(bare.xi2).epsilon(1e-3));
  CHECK(dressed.xi3 == doctest::Approx(bare.xi3).epsilon(1e-3));
  CHECK(dressed.xi4 == doctest::Approx(bare.xi4).epsilon(1e-3));
}

TEST_CASE("pulse profile validation") {
  PulseProfile bad;
  bad.t_ns = {0.0, 10.0, 10.0};
  bad.eps1 = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.t_ns = {1.0, 10.0};
  bad.eps1 = {1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("device parameter validation") {
  DeviceParams p;
  p.eta1 = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(DeviceParams::from_ghz(6.2, 6.0, 0.2, 0.2, 0.0), std::invalid_argument);
}

TEST_CASE("reduce_angle maps into (-pi, pi]") {
  CHECK(reduce_angle(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(reduce_angle(-0.5) == doctest::Approx(-0.5));
  CHECK(reduce_angle(kTwoPi) == doctest::Approx(0.0));
  CHECK(reduce_angle(-973.8937226128359) ==
        doctest::Approx(std::remainder(-973.8937226128359, kTwoPi)));
}
