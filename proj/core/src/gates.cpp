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

#include "fewbody/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace fewbody {

namespace gates {

using namespace std::complex_literals;

Mat2 identity() { return Mat2::Identity(); }

Mat2 pauli(Axis w) {
  Mat2 m;
  switch (w) {
    case Axis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::Y: m << 0.0, -1i, 1i, 0.0; break;
    case Axis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  m << 1.0, 1.0, 1.0, -1.0;
  return m / std::numbers::sqrt2;
}

Mat2 exp_pauli(Axis w, double theta) {
  return std::cos(theta) * Mat2::Identity() + 1i * std::sin(theta) * pauli(w);
}

Mat2 phase(double alpha) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(1i * alpha);
  m(1, 1) = std::exp(-1i * alpha);
  return m;
}

Mat2 rot_y(double beta) { return exp_pauli(Axis::Y, beta); }

Mat2 p_z(Complex z) {
  if (z == 0.0) throw InvalidArgument("P_z requires z != 0");
  Mat2 m = Mat2::Zero();
  m(0, 0) = z;
  m(1, 1) = 1.0 / z;
  return m;
}

Mat2 t2() {
  return exp_pauli(Axis::Y, std::numbers::pi / 4) * phase(std::numbers::pi / 4) * hadamard();
}

Mat2 t3() {
  return exp_pauli(Axis::X, -std::numbers::pi / 4) * phase(-std::numbers::pi / 4) * hadamard();
}

}  // namespace gates

namespace {

struct KindName {
  GateKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GateKind::PauliX, "x"},           {GateKind::PauliY, "y"},        {GateKind::PauliZ, "z"},
    {GateKind::Hadamard, "h"},         {GateKind::Phase, "phase"},     {GateKind::PhaseString, "zphase"},
    {GateKind::ControlledZ, "cz"},     {GateKind::RotationY, "roty"},  {GateKind::T2, "t2"},
    {GateKind::T3, "t3"},
};

void check_targets(const std::vector<int>& targets, std::size_t expected) {
  if (expected != 0 && targets.size() != expected) {
    throw InvalidArgument("gate expects " + std::to_string(expected) + " target(s), got " +
                          std::to_string(targets.size()));
  }
  if (targets.empty()) throw InvalidArgument("gate has no targets");
  for (int t : targets) {
    if (t < 0) throw InvalidArgument("negative gate target");
  }
  auto sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("gate targets repeat");
  }
}

}  // namespace

GateKind parse_gate_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

std::string_view gate_kind_name(GateKind kind) {
  for (const auto& [k, n] : kKindNames) {
    if (k == kind) return n;
  }
  return "?";
}

Gate local_gate(int target, const Mat2& m) {
  check_targets({target}, 1);
  return Gate{{target}, m};
}

Gate controlled_z(int i, int j) {
  check_targets({i, j}, 2);
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1.0;
  return Gate{{i, j}, m};
}

Gate phase_string(std::vector<int> targets, double alpha) {
  check_targets(targets, 0);
  const auto k = static_cast<int>(targets.size());
  const Eigen::Index dim = Eigen::Index{1} << k;
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    const int parity = std::popcount(static_cast<unsigned>(l)) & 1;
    m(l, l) = std::polar(1.0, parity ? -alpha : alpha);
  }
  return Gate{std::move(targets), m};
}

Gate build_gate(const GateDesc& desc) {
  switch (desc.kind) {
    case GateKind::PauliX: check_targets(desc.targets, 1); return Gate{desc.targets, gates::pauli(Axis::X)};
    case GateKind::PauliY: check_targets(desc.targets, 1); return Gate{desc.targets, gates::pauli(Axis::Y)};
    case GateKind::PauliZ: check_targets(desc.targets, 1); return Gate{desc.targets, gates::pauli(Axis::Z)};
    case GateKind::Hadamard: check_targets(desc.targets, 1); return Gate{desc.targets, gates::hadamard()};
    case GateKind::Phase: check_targets(desc.targets, 1); return Gate{desc.targets, gates::phase(desc.angle)};
    case GateKind::PhaseString: return phase_string(desc.targets, desc.angle);
    case GateKind::ControlledZ:
      check_targets(desc.targets, 2);
      return controlled_z(desc.targets[0], desc.targets[1]);
    case GateKind::RotationY: check_targets(desc.targets, 1); return Gate{desc.targets, gates::rot_y(desc.angle)};
    case GateKind::T2: check_targets(desc.targets, 1); return Gate{desc.targets, gates::t2()};
    case GateKind::T3: check_targets(desc.targets, 1); return Gate{desc.targets, gates::t3()};
  }
  throw InvalidArgument("unknown gate kind");
}

void apply_gate(Vec& amps, int num_qubits, const Gate& gate) {
  if (gate.targets.size() == 1) {
    const int t = gate.targets[0];
    if (t < 0 || t >= num_qubits) throw InvalidArgument("gate target out of range");
    apply_local(amps, num_qubits, t, gate.matrix);
    return;
  }
  apply_dense(amps, num_qubits, gate.targets, gate.matrix);
}

PureState apply_gate(const PureState& state, const Gate& gate) {
  Vec v = state.amplitudes();
  apply_gate(v, state.num_qubits(), gate);
  return PureState::normalized(std::move(v));
}

}  // namespace fewbody
