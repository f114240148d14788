#include "leaksim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace leaksim {

void NoiseModel::validate() const {
  if (enabled && t1_us <= 0.0) {
    throw std::invalid_argument("NoiseModel: t1_us must be positive");
  }
  if (dephasing) {
    throw std::invalid_argument(
        "NoiseModel: a separate dephasing channel is not implemented; "
        "amplitude damping alone already gives T2 = 2 T1");
  }
}

KrausSet amplitude_damping_kraus(double t1_us, double dt_ns) {
  if (t1_us <= 0.0) throw std::invalid_argument("amplitude_damping_kraus: t1_us must be positive");
  if (dt_ns < 0.0) throw std::invalid_argument("amplitude_damping_kraus: dt_ns must be non-negative");

  const double t1_ns = t1_us * 1000.0;
  const double lambda1 = -std::expm1(-dt_ns / t1_ns);
  const double lambda2 = -std::expm1(-2.0 * dt_ns / t1_ns);

  KrausSet k;
  k.e1 = Mat3::Zero();
  k.e1(0, 0) = 1.0;
  k.e1(1, 1) = std::sqrt(1.0 - lambda1);
  k.e1(2, 2) = std::sqrt(1.0 - lambda2);
  k.e2 = Mat3::Zero();
  k.e2(0, 1) = std::sqrt(lambda1);
  k.e3 = Mat3::Zero();
  k.e3(0, 2) = std::sqrt(lambda2);
  return k;
}

namespace {

// Apply a 3x3 operator to one qutrit of the 9-amplitude state.
Vec9 apply_on_slot(const Vec9& amps, const Mat3& op, Slot slot) {
  Vec9 out = Vec9::Zero();
  if (slot == Slot::Ancilla) {
    for (int d = 0; d < 3; ++d) {
      for (int ap = 0; ap < 3; ++ap) {
        Complex acc(0.0, 0.0);
        for (int a = 0; a < 3; ++a) acc += op(ap, a) * amps(basis_index(a, d));
        out(basis_index(ap, d)) = acc;
      }
    }
  } else {
    for (int a = 0; a < 3; ++a) {
      for (int dp = 0; dp < 3; ++dp) {
        Complex acc(0.0, 0.0);
        for (int d = 0; d < 3; ++d) acc += op(dp, d) * amps(basis_index(a, d));
        out(basis_index(a, dp)) = acc;
      }
    }
  }
  return out;
}

}  // namespace

TwoQutritState apply_channel_trajectory(const TwoQutritState& state,
                                        const KrausSet& kraus, Slot slot,
                                        Rng& rng) {
  const std::array<const Mat3*, 3> ops{&kraus.e1, &kraus.e2, &kraus.e3};
  std::array<Vec9, 3> branches;
  std::array<double, 3> probs{};
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    branches[static_cast<size_t>(k)] = apply_on_slot(state.amps, *ops[static_cast<size_t>(k)], slot);
    probs[static_cast<size_t>(k)] = branches[static_cast<size_t>(k)].squaredNorm();
    total += probs[static_cast<size_t>(k)];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("apply_channel_trajectory: branch probabilities do not sum to 1");
  }

  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  int chosen = 2;
  for (int k = 0; k < 3; ++k) {
    cumulative += probs[static_cast<size_t>(k)];
    if (u < cumulative) {
      chosen = k;
      break;
    }
  }

  TwoQutritState out;
  out.amps = branches[static_cast<size_t>(chosen)] / std::sqrt(probs[static_cast<size_t>(chosen)]);
  return out;
}

DensityMatrix DensityMatrix::from_state(const TwoQutritState& psi) {
  DensityMatrix rho;
  rho.rho = psi.amps * psi.amps.adjoint();
  return rho;
}

void DensityMatrix::validate() const {
  if (!is_hermitian(rho, 1e-12)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat9> solver(rho);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix apply_channel_density(const DensityMatrix& rho,
                                    const KrausSet& kraus, Slot slot) {
  const Mat3 eye = Mat3::Identity();
  auto embed = [&](const Mat3& e) {
    return slot == Slot::Ancilla ? kron3(e, eye) : kron3(eye, e);
  };
  DensityMatrix out;
  out.rho = Mat9::Zero();
  for (const Mat3* e : {&kraus.e1, &kraus.e2, &kraus.e3}) {
    const Mat9 embedded = embed(*e);
    out.rho += embedded * rho.rho * embedded.adjoint();
  }
  return out;
}

}  // namespace leaksim
