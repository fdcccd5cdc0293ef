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

#include "fewbody/locc.hpp"

#include <cmath>
#include <string>

namespace fewbody {

double completeness_residual(const LoccProtocol& protocol) {
  if (protocol.kraus.empty()) throw InvalidArgument("protocol has no Kraus operators");
  const Eigen::Index dim = Eigen::Index{1} << protocol.acting_qubits.size();
  Mat sum = Mat::Zero(dim, dim);
  for (const auto& k : protocol.kraus) {
    if (k.rows() != dim || k.cols() != dim) throw DimensionMismatch("Kraus operator size vs acting qubits");
    sum += k.adjoint() * k;
  }
  return max_abs_diff(sum, Mat::Identity(dim, dim));
}

std::vector<ProtocolBranch> execute(const LoccProtocol& protocol, const PureState& source) {
  if (protocol.corrections.size() != protocol.kraus.size()) {
    throw InvalidArgument("protocol needs one correction list per outcome");
  }
  const double residual = completeness_residual(protocol);
  if (residual > 1e-10) {
    throw InvalidArgument("Kraus operators are not complete (residual " + std::to_string(residual) + ")");
  }
  const int n = source.num_qubits();
  std::vector<ProtocolBranch> out;
  for (std::size_t k = 0; k < protocol.kraus.size(); ++k) {
    Vec v = source.amplitudes();
    apply_dense(v, n, protocol.acting_qubits, protocol.kraus[k]);
    const double p = v.squaredNorm();
    if (p < 1e-14) continue;
    for (const auto& g : protocol.corrections[k]) apply_gate(v, n, g);
    out.push_back(ProtocolBranch{static_cast<int>(k), p, PureState::normalized(std::move(v))});
  }
  return out;
}

ConversionReport verify_protocol(const LoccProtocol& protocol, const PureState& source,
                                 const PureState& target, double fidelity_tol) {
  ConversionReport report;
  report.completeness_residual = completeness_residual(protocol);
  const auto branches = execute(protocol, source);
  std::vector<bool> seen(protocol.kraus.size(), false);
  bool ok = true;
  for (const auto& b : branches) {
    const double f = fidelity(b.state, target);
    seen[static_cast<std::size_t>(b.outcome)] = true;
    report.branches.push_back(BranchReport{b.outcome, b.probability, f, false});
    report.probability_sum += b.probability;
    ok = ok && f >= 1.0 - fidelity_tol;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      report.branches.push_back(BranchReport{static_cast<int>(k), 0.0, 0.0, true});
      report.notes.push_back("branch " + std::to_string(k) + " has vanishing probability; skipped");
    }
  }
  report.ok = ok && std::abs(report.probability_sum - 1.0) < 1e-9;
  return report;
}

}  // namespace fewbody
