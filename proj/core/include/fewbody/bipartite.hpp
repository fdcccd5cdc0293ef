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

#include <span>
#include <string_view>
#include <vector>

#include "fewbody/locc.hpp"
#include "fewbody/qcore.hpp"

namespace fewbody::bipartite {

/// Schmidt decomposition psi = (U_A (x) U_B) sum_i c_i |ii>.
struct SchmidtData {
  Eigen::VectorXd coefficients;  ///< c_i = sqrt(lambda_i), non-increasing
  Mat left_basis;                ///< U_A, columns are the Schmidt vectors of side A
  Mat right_basis;               ///< U_B
  std::vector<int> side_a;       ///< parties of side A; empty for abstract data
  int num_qubits = 0;            ///< 0 for abstract data built from a lambda vector

  Eigen::VectorXd lambdas() const { return coefficients.array().square(); }

  /// Abstract data from squared coefficients. Sorts descending; bases are
  /// identities. Requires lambda_i >= 0 and sum = 1 within 1e-12.
  static SchmidtData from_lambdas(std::span<const double> lambdas);
};

SchmidtData schmidt_decompose(const PureState& state, std::span<const int> side_a);

/// sum_i c_i (U_A|i>) (x) (U_B|i>), side A occupying the leading qubits.
PureState schmidt_state(const SchmidtData& data);

/// The decomposed state in its original party order.
PureState reconstruct(const SchmidtData& data);

/// y majorizes x: every descending partial sum of y dominates that of x and
/// the totals agree (tolerance 1e-12 on both).
bool majorizes(std::span<const double> y, std::span<const double> x);

enum class Relation { ForwardOnly, BackwardOnly, BothWays, Incomparable };

std::string_view relation_name(Relation r);

/// Deterministic LOCC convertibility between psi and phi; ForwardOnly means
/// psi -> phi only. Shorter vectors are zero-padded.
Relation nielsen_decide(const SchmidtData& psi, const SchmidtData& phi);
Relation nielsen_decide(std::span<const double> lambda_psi, std::span<const double> lambda_phi);

/// (1/sqrt d) sum_i |ii>, d a power of two, side A = leading log2(d) qubits.
PureState max_entangled(int d);
/// Same amplitudes as a flat d*d vector for any d >= 2.
Vec max_entangled_vector(int d);

/// Deterministic protocol |Phi+>_d -> target: side A applies
/// K_j = sum_i sqrt(lambda_{(i+j) mod d}) |i><i|, then both sides shift by j
/// and rotate into the target's Schmidt bases.
LoccProtocol phi_plus_to_target(const SchmidtData& target);

struct EnsembleEntry {
  double weight = 0.0;
  PureState state;
};

/// Weights are non-negative and sum to one within 1e-12.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleEntry> entries);
  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  int num_qubits() const { return entries_.front().state.num_qubits(); }

 private:
  std::vector<EnsembleEntry> entries_;
};

/// sum_i p_i |psi_i><psi_i|.
DensityMatrix ensemble_density(const Ensemble& ensemble);

/// Certifies that every protocol deterministically turns `resource` into its
/// ensemble entry, then returns the ensemble density. Throws NumericalFailure
/// naming the entry and branch that misses.
DensityMatrix prepare_mixed(const Ensemble& ensemble, std::span<const LoccProtocol> protocols,
                            const PureState& resource);

}  // namespace fewbody::bipartite
