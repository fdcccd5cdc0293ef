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

#pragma once

#include <string_view>
#include <vector>

#include "fewbody/qcore.hpp"

namespace fewbody {

namespace gates {

Mat2 identity();
Mat2 pauli(Axis w);
Mat2 hadamard();
/// exp(i theta sigma_w).
Mat2 exp_pauli(Axis w, double theta);
/// Z(alpha) = exp(i alpha sigma_z) = diag(e^{i alpha}, e^{-i alpha}).
Mat2 phase(double alpha);
/// Y(beta) = exp(i beta sigma_y).
Mat2 rot_y(double beta);
/// P_z = diag(z, 1/z).
Mat2 p_z(Complex z);
/// exp(i pi/4 sigma_y) Z(pi/4) H.
Mat2 t2();
/// exp(-i pi/4 sigma_x) Z(-pi/4) H.
Mat2 t3();

}  // namespace gates

enum class GateKind {
  PauliX,
  PauliY,
  PauliZ,
  Hadamard,
  Phase,        ///< Z(alpha) on one qubit
  PhaseString,  ///< Z_{i1..im}(alpha) = exp(i alpha sigma_z^{i1} (x) ... (x) sigma_z^{im})
  ControlledZ,  ///< S_ij = |0><0| (x) 1 + |1><1| (x) sigma_z
  RotationY,    ///< exp(i beta sigma_y)
  T2,
  T3,
};

GateKind parse_gate_kind(std::string_view name);
std::string_view gate_kind_name(GateKind kind);

struct GateDesc {
  GateKind kind = GateKind::PauliX;
  std::vector<int> targets;
  double angle = 0.0;
};

/// A dense unitary acting on an ordered list of distinct qubits.
struct Gate {
  std::vector<int> targets;
  Mat matrix;
};

Gate build_gate(const GateDesc& desc);
Gate local_gate(int target, const Mat2& m);
Gate controlled_z(int i, int j);
Gate phase_string(std::vector<int> targets, double alpha);

void apply_gate(Vec& amps, int num_qubits, const Gate& gate);
PureState apply_gate(const PureState& state, const Gate& gate);

}  // namespace fewbody
