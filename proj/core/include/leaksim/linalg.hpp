#pragma once

#include <complex>

#include <Eigen/Dense>

namespace leaksim {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;

// Numerical tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kNormTol = 1e-12;

// Fixed two-qutrit basis order: index = 3*ancilla + data, i.e.
// {|00>,|01>,|02>,|10>,|11>,|12>,|20>,|21>,|22>} with the ancilla digit first.
constexpr int basis_index(int ancilla, int data) { return 3 * ancilla + data; }
constexpr int ancilla_of(int index) { return index / 3; }
constexpr int data_of(int index) { return index % 3; }

double max_abs(const Mat3& m);
double max_abs(const Mat9& m);

bool is_hermitian(const Mat3& m, double tol = kHermitianTol);
bool is_hermitian(const Mat9& m, double tol = kHermitianTol);
bool is_unitary(const Mat3& m, double tol = kUnitaryTol);
bool is_unitary(const Mat9& m, double tol = kUnitaryTol);

/// e^{iS} for Hermitian S, via eigendecomposition.
/// Throws std::invalid_argument if S is not Hermitian within kHermitianTol.
Mat3 hermitian_exp(const Mat3& s);
Mat9 hermitian_exp(const Mat9& s);

Mat9 kron3(const Mat3& a, const Mat3& b);

/// g (x) I3: a single-qutrit gate acting on the ancilla index.
Mat9 embed_ancilla_gate(const Mat3& g);
/// I3 (x) g: a single-qutrit gate acting on the data index.
Mat9 embed_data_gate(const Mat3& g);

/// Pure two-qutrit state in the fixed |AD> basis order.
struct TwoQutritState {
  Vec9 amps = Vec9::Zero();

  /// |ancilla> (x) (d0|0> + d1|1> + d2|2>). Throws if the data vector is not
  /// normalized within kNormTol.
  static TwoQutritState product(int ancilla_level, const std::array<Complex, 3>& data);
  static TwoQutritState basis(int ancilla_level, int data_level);
  /// Validates the norm; throws std::invalid_argument otherwise.
  static TwoQutritState from_amplitudes(const Vec9& amps);

  double norm() const { return amps.norm(); }
  TwoQutritState applied(const Mat9& u) const;

  double ancilla_population(int level) const;
  double data_population(int level) const;
};

}  // namespace leaksim
