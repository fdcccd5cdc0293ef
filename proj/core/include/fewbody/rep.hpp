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

// Six-qubit resource state and the adaptive measurement protocol that
// prepares Z_13(a4) Z_12(a5) (1 (x) T2 (x) T3) Z_23(a6)|+++> on qubits 1-3.
//
// Qubit label k (1-based) is register index k - 1 throughout.

#include <array>
#include <optional>
#include <vector>

#include "fewbody/qcore.hpp"

namespace fewbody::rep {

struct RepTargetParams {
  double alpha4 = 0.0;
  double alpha5 = 0.0;
  double alpha6 = 0.0;
};

/// The eight controlled-Z edges of the resource, 0-based, in application order.
std::vector<std::array<int, 2>> phi3_edges();

/// The resource state. `cz_order` may permute the commuting CZ layer.
PureState build_phi3();
PureState build_phi3(const std::vector<std::array<int, 2>>& cz_order);

/// Graph state on |+>^6 with the resource's edges and no local rotations.
PureState phi3_graph_state();

PureState target_state(const RepTargetParams& params);

/// Outcomes in measurement order.
struct RepOutcomes {
  int k6 = 0;
  int k5 = 0;
  int k4 = 0;
};

struct RepOptions {
  /// Measure qubit 5 with -alpha5 after k6 = 1. Disabling this is a negative control.
  bool adapt_theta5 = true;
};

struct RepOutcome {
  RepOutcomes k;
  std::array<double, 3> thetas{};  ///< theta4, theta5, theta6 as used
  double branch_probability = 0.0;
  PureState raw_state;
  ProductOperator correction;  ///< applied to raw_state
  PureState corrected_state;
  double fidelity = 0.0;  ///< against target_state
};

/// Pauli frame sigma_z^{k4+k5} (x) sigma_z^{k5} sigma_y^{k6} (x) sigma_z^{k4+k6}.
ProductOperator pauli_frame(const RepOutcomes& k);

RepOutcome simulate_rep(const RepTargetParams& params, const RepOutcomes& forced,
                        const RepOptions& options = {});
RepOutcome simulate_rep(const RepTargetParams& params, Rng& rng, const RepOptions& options = {});

struct DeterminismReport {
  bool ok = false;
  double probability_sum = 0.0;
  double min_fidelity = 0.0;
  std::vector<RepOutcome> branches;  ///< (k6, k5, k4) in lexicographic order
};

inline constexpr double kRepFidelityTol = 1e-10;
inline constexpr double kRepProbabilityTol = 1e-12;

DeterminismReport verify_rep_determinism(const RepTargetParams& params, const RepOptions& options = {});

struct Mixed3Entry {
  double weight = 0.0;
  RepTargetParams params;
  ProductOperator post_lu = ProductOperator::identity(3);
};

struct Mixed3Result {
  std::size_t entry = 0;
  RepOutcome outcome;
  PureState prepared;  ///< post_lu applied to the corrected state
  DensityMatrix density;
};

/// Runs the protocol for a sampled entry, then applies that entry's local
/// unitaries. Also returns sum_i p_i |psi_i><psi_i| exactly.
Mixed3Result prepare_mixed3(const std::vector<Mixed3Entry>& ensemble, Rng& rng);

DensityMatrix ensemble_density3(const std::vector<Mixed3Entry>& ensemble);

}  // namespace fewbody::rep
