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

#include <string>
#include <vector>

#include "fewbody/gates.hpp"
#include "fewbody/qcore.hpp"

namespace fewbody {

/// One-round protocol: a single party (possibly a group of qubits) measures
/// with Kraus operators, then every outcome triggers local unitary corrections.
struct LoccProtocol {
  std::vector<int> acting_qubits;
  std::vector<Mat> kraus;                      ///< each acts on acting_qubits
  std::vector<std::vector<Gate>> corrections;  ///< one list per outcome
};

/// || sum_k K_k^dag K_k - I ||_max on the acting party.
double completeness_residual(const LoccProtocol& protocol);

struct ProtocolBranch {
  int outcome = 0;
  double probability = 0.0;
  PureState state;  ///< normalized, after corrections
};

/// Runs every outcome on `source`. Branches with probability below 1e-14 are
/// omitted. Throws if completeness fails by more than 1e-10.
std::vector<ProtocolBranch> execute(const LoccProtocol& protocol, const PureState& source);

struct BranchReport {
  int index = 0;
  double probability = 0.0;
  double fidelity = 0.0;
  bool skipped = false;
};

struct ConversionReport {
  bool ok = false;
  double probability_sum = 0.0;
  double completeness_residual = 0.0;
  std::vector<BranchReport> branches;
  std::vector<std::string> notes;
};

ConversionReport verify_protocol(const LoccProtocol& protocol, const PureState& source,
                                 const PureState& target, double fidelity_tol = kStateTol);

}  // namespace fewbody
