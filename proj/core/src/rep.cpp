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

#include "fewbody/rep.hpp"

#include <cmath>
#include <numbers>

#include "fewbody/gates.hpp"

namespace fewbody::rep {

namespace {

constexpr double kPi = std::numbers::pi;

// {Z(-theta)|+>, sigma_z Z(-theta)|+>}
std::array<Vec2, 2> rep_basis(double theta) {
  Vec2 plus;
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const Vec2 b0 = gates::phase(-theta) * plus;
  return {b0, gates::pauli(Axis::Z) * b0};
}

Mat2 pow_pauli(Axis w, int k) { return (k % 2) ? gates::pauli(w) : gates::identity(); }

template <typename Choose>
RepOutcome run(const RepTargetParams& params, const RepOptions& options, Choose&& choose) {
  RepOutcome out;
  PureState state = build_phi3();
  double prob = 1.0;

  // Qubit 6 first: its outcome fixes the sign of theta5.
  out.thetas[2] = params.alpha6;
  Measurement m6 = choose(state, 5, rep_basis(out.thetas[2]));
  out.k.k6 = m6.outcome;
  prob *= m6.probability;

  out.thetas[1] = (options.adapt_theta5 && out.k.k6 == 1) ? -params.alpha5 : params.alpha5;
  Measurement m5 = choose(m6.post_state, 4, rep_basis(out.thetas[1]));
  out.k.k5 = m5.outcome;
  prob *= m5.probability;

  out.thetas[0] = params.alpha4;
  Measurement m4 = choose(m5.post_state, 3, rep_basis(out.thetas[0]));
  out.k.k4 = m4.outcome;
  prob *= m4.probability;

  out.branch_probability = prob;
  out.raw_state = m4.post_state;
  out.correction = pauli_frame(out.k).adjoint();
  out.corrected_state = apply_normalized(out.correction, out.raw_state);
  out.fidelity = fidelity(out.corrected_state, target_state(params));
  return out;
}

}  // namespace

std::vector<std::array<int, 2>> phi3_edges() {
  // S_23 acts first, S_46 last.
  return {{1, 2}, {0, 1}, {2, 3}, {2, 4}, {0, 4}, {3, 4}, {4, 5}, {3, 5}};
}

PureState phi3_graph_state() {
  Vec v = PureState::plus(6).amplitudes();
  for (const auto& e : phi3_edges()) apply_gate(v, 6, controlled_z(e[0], e[1]));
  return PureState::normalized(std::move(v));
}

PureState build_phi3() { return build_phi3(phi3_edges()); }

PureState build_phi3(const std::vector<std::array<int, 2>>& cz_order) {
  Vec v = PureState::plus(6).amplitudes();
  for (const auto& e : cz_order) apply_gate(v, 6, controlled_z(e[0], e[1]));
  apply_local(v, 6, 0, gates::hadamard());
  apply_local(v, 6, 3, gates::phase(-kPi / 4));
  apply_local(v, 6, 4, gates::phase(-kPi / 4));
  apply_local(v, 6, 5, gates::phase(-kPi / 4));
  apply_local(v, 6, 1, gates::phase(kPi / 2));
  apply_local(v, 6, 2, gates::hadamard());
  apply_local(v, 6, 2, gates::phase(kPi / 4));
  return PureState::normalized(std::move(v));
}

PureState target_state(const RepTargetParams& params) {
  Vec v = PureState::plus(3).amplitudes();
  apply_gate(v, 3, phase_string({1, 2}, params.alpha6));
  apply_local(v, 3, 1, gates::t2());
  apply_local(v, 3, 2, gates::t3());
  apply_gate(v, 3, phase_string({0, 1}, params.alpha5));
  apply_gate(v, 3, phase_string({0, 2}, params.alpha4));
  return PureState::normalized(std::move(v));
}

ProductOperator pauli_frame(const RepOutcomes& k) {
  return ProductOperator({pow_pauli(Axis::Z, k.k4 + k.k5),
                          pow_pauli(Axis::Z, k.k5) * pow_pauli(Axis::Y, k.k6),
                          pow_pauli(Axis::Z, k.k4 + k.k6)});
}

RepOutcome simulate_rep(const RepTargetParams& params, const RepOutcomes& forced, const RepOptions& options) {
  for (int k : {forced.k4, forced.k5, forced.k6}) {
    if (k != 0 && k != 1) throw InvalidArgument("outcomes must be 0 or 1");
  }
  return run(params, options, [&](const PureState& s, int party, const std::array<Vec2, 2>& basis) {
    const int k = party == 5 ? forced.k6 : party == 4 ? forced.k5 : forced.k4;
    return projective_measure(s, party, basis, k);
  });
}

RepOutcome simulate_rep(const RepTargetParams& params, Rng& rng, const RepOptions& options) {
  return run(params, options, [&](const PureState& s, int party, const std::array<Vec2, 2>& basis) {
    return projective_measure(s, party, basis, rng);
  });
}

DeterminismReport verify_rep_determinism(const RepTargetParams& params, const RepOptions& options) {
  DeterminismReport report;
  report.min_fidelity = 1.0;
  bool ok = true;
  for (int k6 = 0; k6 < 2; ++k6) {
    for (int k5 = 0; k5 < 2; ++k5) {
      for (int k4 = 0; k4 < 2; ++k4) {
        RepOutcome o = simulate_rep(params, RepOutcomes{k6, k5, k4}, options);
        report.probability_sum += o.branch_probability;
        report.min_fidelity = std::min(report.min_fidelity, o.fidelity);
        ok = ok && o.fidelity >= 1.0 - kRepFidelityTol;
        report.branches.push_back(std::move(o));
      }
    }
  }
  report.ok = ok && std::abs(report.probability_sum - 1.0) <= kRepProbabilityTol;
  return report;
}

DensityMatrix ensemble_density3(const std::vector<Mixed3Entry>& ensemble) {
  if (ensemble.empty()) throw InvalidArgument("ensemble is empty");
  double total = 0.0;
  for (const auto& e : ensemble) {
    if (!(e.weight >= 0.0)) throw InvalidArgument("ensemble weights must be non-negative");
    if (e.post_lu.size() != 3 || !e.post_lu.is_unitary(1e-10)) {
      throw InvalidArgument("post_lu must be three single-qubit unitaries");
    }
    total += e.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("ensemble weights must sum to one");
  Mat rho = Mat::Zero(8, 8);
  for (const auto& e : ensemble) {
    const PureState psi = apply_normalized(e.post_lu, target_state(e.params));
    rho += e.weight * psi.amplitudes() * psi.amplitudes().adjoint();
  }
  return DensityMatrix(rho);
}

Mixed3Result prepare_mixed3(const std::vector<Mixed3Entry>& ensemble, Rng& rng) {
  DensityMatrix rho = ensemble_density3(ensemble);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = u(rng);
  std::size_t pick = ensemble.size() - 1;
  while (pick > 0 && ensemble[pick].weight <= 0.0) --pick;
  double acc = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    acc += ensemble[i].weight;
    if (x < acc && ensemble[i].weight > 0.0) {
      pick = i;
      break;
    }
  }
  RepOutcome outcome = simulate_rep(ensemble[pick].params, rng);
  if (outcome.fidelity < 1.0 - kRepFidelityTol) {
    throw NumericalFailure("prepare_mixed3: corrected state misses its target");
  }
  PureState prepared = apply_normalized(ensemble[pick].post_lu, outcome.corrected_state);
  return Mixed3Result{pick, std::move(outcome), std::move(prepared), std::move(rho)};
}

}  // namespace fewbody::rep
