#include "leaksim/gates.hpp"

namespace leaksim {

namespace {
constexpr double kPi = std::numbers::pi;
}

CzParams CzParams::ideal(double xi1, double xi2, double xi3, double xi4) {
  CzParams p;
  p.xi = {xi1, xi2, xi3, xi4};
  return p;
}

CzParams CzParams::with_theta(double theta, double xi1) {
  return ideal(xi1, xi1 + theta);
}

CzParams CzParams::simplified(double chi1, double chi2) {
  CzParams p;
  p.xi = {kPi, 0.0, 0.0, 0.0};
  p.chi = {chi1, chi2, 0.0, 0.0};
  return p;
}

Mat3 hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  Mat3 h;
  h << r, r, 0.0,
       r, -r, 0.0,
       0.0, 0.0, 1.0;
  return h;
}

Mat9 ideal_cz_generator(const CzParams& p) {
  Mat9 s = Mat9::Zero();
  s(basis_index(0, 2), basis_index(0, 2)) = p.xi[0];
  s(basis_index(1, 1), basis_index(1, 1)) = kPi;
  s(basis_index(1, 2), basis_index(1, 2)) = p.xi[1];
  s(basis_index(2, 0), basis_index(2, 0)) = kPi;
  s(basis_index(2, 1), basis_index(2, 1)) = p.xi[2];
  s(basis_index(2, 2), basis_index(2, 2)) = p.xi[3];
  return s;
}

Mat9 nonideal_generator(const CzParams& p) {
  Mat9 s = Mat9::Zero();
  s(basis_index(0, 1), basis_index(0, 1)) = p.zeta[0];
  s(basis_index(1, 0), basis_index(1, 0)) = p.zeta[1];
  s(basis_index(1, 1), basis_index(1, 1)) = p.zeta[2];
  s(basis_index(2, 0), basis_index(2, 0)) = p.zeta[3];

  const Complex i(0.0, 1.0);
  const std::array<std::pair<int, int>, 4> couplings{{
      {basis_index(0, 1), basis_index(1, 0)},   // chi1: |01> ~ |10>
      {basis_index(0, 2), basis_index(1, 1)},   // chi2: |02> ~ |11>
      {basis_index(1, 1), basis_index(2, 0)},   // chi3: |11> ~ |20>
      {basis_index(1, 2), basis_index(2, 1)},   // chi4: |12> ~ |21>
  }};
  for (size_t k = 0; k < couplings.size(); ++k) {
    const auto [row, col] = couplings[k];
    const Complex value = i * p.chi[k] * std::polar(1.0, p.phi[k]);
    s(row, col) = value;
    s(col, row) = std::conj(value);
  }
  return s;
}

Mat9 cz_unitary(const CzParams& p) {
  return hermitian_exp(nonideal_generator(p)) * hermitian_exp(ideal_cz_generator(p));
}

Mat9 cz_unitary_summed(const CzParams& p) {
  return hermitian_exp((ideal_cz_generator(p) + nonideal_generator(p)).eval());
}

}  // namespace leaksim
