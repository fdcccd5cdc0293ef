// Copyright 2026 The fewbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "fewbody/gates.hpp"
#include "fewbody/random.hpp"
#include "oracles.hpp"

namespace fewbody {
namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

Mat2 m2(Complex a, Complex b, Complex c, Complex d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

TEST(Gates, PauliAlgebra) {
  const Mat2 x = gates::pauli(Axis::X);
  const Mat2 y = gates::pauli(Axis::Y);
  const Mat2 z = gates::pauli(Axis::Z);
  EXPECT_LT(max_abs_diff(x * y, 1i * z), 1e-15);
  EXPECT_EQ(max_abs_diff(y, m2(0.0, -1i, 1i, 0.0)), 0.0);
  for (const Mat2& p : {x, y, z}) EXPECT_LT(max_abs_diff(p * p, Mat2::Identity()), 1e-15);
}

TEST(Gates, ExponentialsMatchClosedForm) {
  for (Axis w : {Axis::X, Axis::Y, Axis::Z}) {
    for (double th : {-1.3, 0.0, 0.4, kPi / 4}) {
      EXPECT_LT(max_abs_diff(gates::exp_pauli(w, th), oracle::exp_i_theta(gates::pauli(w), th)), 1e-15);
    }
  }
  EXPECT_LT(max_abs_diff(gates::phase(0.3), m2(std::exp(0.3i), 0.0, 0.0, std::exp(-0.3i))), 1e-15);
  // Y(beta) = [[cos, sin], [-sin, cos]]
  EXPECT_LT(max_abs_diff(gates::rot_y(0.7), m2(std::cos(0.7), std::sin(0.7), -std::sin(0.7), std::cos(0.7))), 1e-15);
}

TEST(Gates, T2AndT3Compositions) {
  const Mat2 h = m2(1.0, 1.0, 1.0, -1.0) / std::sqrt(2.0);
  auto zg = [](double a) { return m2(std::exp(1i * a), 0.0, 0.0, std::exp(-1i * a)); };
  const Mat2 t3 = oracle::exp_i_theta(m2(0.0, 1.0, 1.0, 0.0), -kPi / 4) * zg(-kPi / 4) * h;
  const Mat2 t2 = oracle::exp_i_theta(m2(0.0, -1i, 1i, 0.0), kPi / 4) * zg(kPi / 4) * h;
  EXPECT_LT(max_abs_diff(gates::t3(), t3), 1e-15);
  EXPECT_LT(max_abs_diff(gates::t2(), t2), 1e-15);
  EXPECT_LT(max_abs_diff(gates::t2().adjoint() * gates::t2(), Mat2::Identity()), 1e-15);
}

TEST(Gates, PzRejectsZero) {
  EXPECT_THROW(gates::p_z(0.0), InvalidArgument);
  EXPECT_LT(max_abs_diff(gates::p_z(2.0), m2(2.0, 0.0, 0.0, 0.5)), 1e-15);
}

TEST(Gates, PhaseStringIsParityDiagonal) {
  const Gate g = phase_string({0, 2}, 0.4);
  Vec v = PureState::plus(3).amplitudes();
  apply_gate(v, 3, g);
  for (std::size_t x = 0; x < 8; ++x) {
    const int s = oracle::bit(x, 0, 3) ^ oracle::bit(x, 2, 3);
    const Complex want = std::polar(1.0, s ? -0.4 : 0.4) / std::sqrt(8.0);
    EXPECT_LT(std::abs(v[static_cast<Eigen::Index>(x)] - want), 1e-15);
  }
}

TEST(Gates, ControlledZFlipsOnlyOneOne) {
  Rng rng(1);
  const PureState psi = sample::state(3, rng);
  const PureState out = apply_gate(psi, controlled_z(2, 0));
  for (std::size_t x = 0; x < 8; ++x) {
    const double sign = (oracle::bit(x, 0, 3) && oracle::bit(x, 2, 3)) ? -1.0 : 1.0;
    EXPECT_LT(std::abs(out[x] - sign * psi[x]), 1e-15);
  }
}

TEST(Gates, DenseGateOnReversedTargets) {
  Rng rng(2);
  const PureState psi = sample::state(3, rng);
  Mat u = Mat::Identity(4, 4);
  u.block(2, 2, 2, 2) = gates::pauli(Axis::X);  // CNOT with control targets[0]
  const PureState out = apply_gate(psi, Gate{{2, 0}, u});
  // control = party 2, target = party 0
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t src = oracle::bit(x, 2, 3) ? (x ^ 0b100U) : x;
    EXPECT_LT(std::abs(out[x] - psi[src]), 1e-15);
  }
}

TEST(Gates, BuildValidatesTargets) {
  EXPECT_THROW(build_gate({GateKind::ControlledZ, {1}, 0.0}), InvalidArgument);
  EXPECT_THROW(build_gate({GateKind::ControlledZ, {1, 1}, 0.0}), InvalidArgument);
  EXPECT_THROW(build_gate({GateKind::Hadamard, {-1}, 0.0}), InvalidArgument);
  EXPECT_THROW(build_gate({GateKind::PhaseString, {}, 0.2}), InvalidArgument);
  EXPECT_EQ(build_gate({GateKind::PhaseString, {0, 1, 3}, 0.2}).matrix.rows(), 8);
  Vec v = Vec::Zero(4);
  v[0] = 1.0;
  EXPECT_THROW(apply_gate(v, 2, build_gate({GateKind::Hadamard, {2}, 0.0})), InvalidArgument);
}

TEST(Gates, KindNamesRoundTrip) {
  for (const char* n : {"x", "y", "z", "h", "phase", "zphase", "cz", "roty", "t2", "t3"}) {
    EXPECT_EQ(gate_kind_name(parse_gate_kind(n)), n);
  }
  EXPECT_THROW(parse_gate_kind("cnot"), InvalidArgument);
}

}  // namespace
}  // namespace fewbody
