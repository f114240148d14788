#include "leaksim/linalg.hpp"

#include <stdexcept>

namespace leaksim {

namespace {

template <typename Mat>
double max_abs_impl(const Mat& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Mat>
bool is_hermitian_impl(const Mat& m, double tol) {
  return max_abs_impl<Mat>(m - m.adjoint().eval()) < tol;
}

template <typename Mat>
bool is_unitary_impl(const Mat& m, double tol) {
  const Mat residual = m.adjoint() * m - Mat::Identity();
  return max_abs_impl<Mat>(residual) < tol;
}

template <typename Mat>
Mat hermitian_exp_impl(const Mat& s) {
  if (!is_hermitian_impl<Mat>(s, kHermitianTol)) {
    throw std::invalid_argument("hermitian_exp: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(s);
  const auto& evals = solver.eigenvalues();
  const Mat& v = solver.eigenvectors();
  Mat phases = Mat::Zero();
  for (int k = 0; k < evals.size(); ++k) {
    phases(k, k) = std::polar(1.0, evals(k));
  }
  return v * phases * v.adjoint();
}

}  // namespace

double max_abs(const Mat3& m) { return max_abs_impl(m); }
double max_abs(const Mat9& m) { return max_abs_impl(m); }

bool is_hermitian(const Mat3& m, double tol) { return is_hermitian_impl(m, tol); }
bool is_hermitian(const Mat9& m, double tol) { return is_hermitian_impl(m, tol); }
bool is_unitary(const Mat3& m, double tol) { return is_unitary_impl(m, tol); }
bool is_unitary(const Mat9& m, double tol) { return is_unitary_impl(m, tol); }

Mat3 hermitian_exp(const Mat3& s) { return hermitian_exp_impl(s); }
Mat9 hermitian_exp(const Mat9& s) { return hermitian_exp_impl(s); }

Mat9 kron3(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    }
  }
  return out;
}

Mat9 embed_ancilla_gate(const Mat3& g) { return kron3(g, Mat3::Identity()); }

Mat9 embed_data_gate(const Mat3& g) { return kron3(Mat3::Identity(), g); }

TwoQutritState TwoQutritState::product(int ancilla_level,
                                       const std::array<Complex, 3>& data) {
  if (ancilla_level < 0 || ancilla_level > 2) {
    throw std::invalid_argument("TwoQutritState: ancilla level out of range");
  }
  double norm_sq = 0.0;
  for (const auto& amp : data) norm_sq += std::norm(amp);
  if (std::abs(norm_sq - 1.0) > 2.0 * kNormTol) {
    throw std::invalid_argument("TwoQutritState: data amplitudes not normalized");
  }
  TwoQutritState state;
  for (int d = 0; d < 3; ++d) {
    state.amps(basis_index(ancilla_level, d)) = data[static_cast<size_t>(d)];
  }
  return state;
}

TwoQutritState TwoQutritState::basis(int ancilla_level, int data_level) {
  std::array<Complex, 3> data{Complex(0), Complex(0), Complex(0)};
  data.at(static_cast<size_t>(data_level)) = Complex(1);
  return product(ancilla_level, data);
}

TwoQutritState TwoQutritState::from_amplitudes(const Vec9& amps) {
  if (std::abs(amps.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("TwoQutritState: amplitudes not normalized");
  }
  TwoQutritState state;
  state.amps = amps;
  return state;
}

TwoQutritState TwoQutritState::applied(const Mat9& u) const {
  TwoQutritState out;
  out.amps = u * amps;
  return out;
}

double TwoQutritState::ancilla_population(int level) const {
  double p = 0.0;
  for (int d = 0; d < 3; ++d) p += std::norm(amps(basis_index(level, d)));
  return p;
}

double TwoQutritState::data_population(int level) const {
  double p = 0.0;
  for (int a = 0; a < 3; ++a) p += std::norm(amps(basis_index(a, level)));
  return p;
}

}  // namespace leaksim
