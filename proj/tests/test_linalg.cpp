#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "leaksim/gates.hpp"
#include "leaksim/linalg.hpp"
#include "oracles.hpp"

using namespace leaksim;

TEST_CASE("hermitian_exp of zero is the identity") {
  const Mat9 u = hermitian_exp(Mat9::Zero().eval());
  CHECK(max_abs((u - Mat9::Identity()).eval()) < 1e-15);
}

TEST_CASE("hermitian_exp of the bare CZ generator gives diag(1,1,1,1,-1,1,-1,1,1)") {
  Mat9 s = Mat9::Zero();
  s(4, 4) = std::numbers::pi;
  s(6, 6) = std::numbers::pi;
  const Mat9 u = hermitian_exp(s);
  Mat9 expected = Mat9::Identity();
  expected(4, 4) = -1.0;
  expected(6, 6) = -1.0;
  CHECK(max_abs((u - expected).eval()) < 1e-12);
}

TEST_CASE("hermitian_exp matches the Taylor-series oracle on random Hermitian input") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat9 s = test::random_hermitian<Mat9>(rng, 2.0);
    const Mat9 via_eig = hermitian_exp(s);
    const Mat9 via_series = test::exp_series<Mat9>((Complex(0, 1) * s).eval());
    CHECK(max_abs((via_eig - via_series).eval()) < 1e-10);
    CHECK(is_unitary(via_eig));
  }
}

TEST_CASE("hermitian_exp rejects non-Hermitian input") {
  Mat9 s = Mat9::Zero();
  s(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS(hermitian_exp(s), std::invalid_argument);
}

TEST_CASE("hermitian_exp(S) hermitian_exp(-S) = I") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat9 s = test::random_hermitian<Mat9>(rng, 3.0);
    const Mat9 product = hermitian_exp(s) * hermitian_exp((-s).eval());
    CHECK(max_abs((product - Mat9::Identity()).eval()) < 1e-10);
  }
}

TEST_CASE("embed_ancilla_gate of the identity is the identity") {
  CHECK(max_abs((embed_ancilla_gate(Mat3::Identity()) - Mat9::Identity()).eval()) == 0.0);
}

TEST_CASE("embed_ancilla_gate places H entries on the ancilla index") {
  const Mat9 h9 = embed_ancilla_gate(hadamard());
  CHECK(h9(basis_index(0, 0), basis_index(1, 0)).real() == doctest::Approx(1.0 / std::numbers::sqrt2));
  CHECK(h9(basis_index(0, 0), basis_index(1, 0)).imag() == 0.0);
  // data index untouched
  CHECK(h9(basis_index(0, 0), basis_index(1, 1)) == Complex(0));
}

TEST_CASE("embedded ancilla phase acts on |12> only") {
  const double alpha = 0.7345;
  Mat3 g = Mat3::Identity();
  g(1, 1) = std::polar(1.0, alpha);
  const Mat9 g9 = embed_ancilla_gate(g);
  const TwoQutritState state = TwoQutritState::basis(1, 2);
  const TwoQutritState out = state.applied(g9);
  CHECK(std::abs(out.amps(5) - std::polar(1.0, alpha)) < 1e-15);
  for (int i = 0; i < 9; ++i) {
    if (i != 5) CHECK(out.amps(i) == Complex(0));
  }
}

TEST_CASE("embed_ancilla_gate preserves unitarity and commutes with data diagonals") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat3 u = test::exp_series<Mat3>((Complex(0, 1) * test::random_hermitian<Mat3>(rng)).eval());
    const Mat9 embedded = embed_ancilla_gate(u);
    CHECK(is_unitary(embedded, 1e-10));

    Mat3 diag = Mat3::Zero();
    for (int i = 0; i < 3; ++i) diag(i, i) = test::random_complex(rng);
    const Mat9 d9 = embed_data_gate(diag);
    CHECK(max_abs((embedded * d9 - d9 * embedded).eval()) < 1e-12);
  }
}

TEST_CASE("unitary application preserves the state norm") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const TwoQutritState state = TwoQutritState::from_amplitudes(test::random_state_vec(rng));
    const Mat9 u = hermitian_exp(test::random_hermitian<Mat9>(rng, 2.0));
    CHECK(state.applied(u).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product state constructor validates normalization") {
  CHECK_THROWS_AS(TwoQutritState::product(0, {Complex(1), Complex(1), Complex(0)}),
                  std::invalid_argument);
  const TwoQutritState s = TwoQutritState::product(2, {Complex(0), Complex(0.6), Complex(0.8)});
  CHECK(s.amps(basis_index(2, 1)).real() == doctest::Approx(0.6));
  CHECK(s.amps(basis_index(2, 2)).real() == doctest::Approx(0.8));
  CHECK(s.data_population(2) == doctest::Approx(0.64));
  CHECK(s.ancilla_population(2) == doctest::Approx(1.0));
}
