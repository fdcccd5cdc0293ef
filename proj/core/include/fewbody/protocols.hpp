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

// Separable-operation conversions between states g|Psi> and h|Psi> that
// share a seed |Psi>: certificate checking, weight solving, POVM assembly,
// and one-round LOCC protocols.
//
// A passing verify_sep certifies a SEP transformation only. LOCC is claimed
// only for an explicit LoccProtocol that passes verify_protocol.

#include <optional>
#include <string>
#include <vector>

#include "fewbody/locc.hpp"
#include "fewbody/qcore.hpp"
#include "fewbody/quad.hpp"

namespace fewbody::sep {

inline constexpr double kSepTol = 1e-9;

/// sum_k p_k S_k^dag H S_k = r G, with G = g^dag g and H = h^dag h.
struct SepInstance {
  ProductOperator G;
  ProductOperator H;
  std::vector<ProductOperator> symmetries;
  std::vector<double> weights;
  double r = 1.0;
};

/// Factor-wise g^dag g.
ProductOperator positive_part(const ProductOperator& g);

struct SepCheck {
  bool ok = false;
  double residual = 0.0;  ///< induced infinity norm over the full 2^n x 2^n operator
};

/// Throws DimensionMismatch on inconsistent sizes and InvalidArgument on
/// invalid weights or r.
SepCheck verify_sep(const SepInstance& instance, double tol = kSepTol);

struct SepSolution {
  std::vector<double> weights;
  double r = 0.0;
  double residual = 0.0;
};

/// Finds p >= 0 with sum p = 1 and r > 0 solving the instance, with r
/// eliminated through the trace. Returns nullopt if no solution reaches the
/// residual tolerance.
std::optional<SepSolution> solve_sep_weights(const ProductOperator& G, const ProductOperator& H,
                                             const std::vector<ProductOperator>& symmetries,
                                             double tol = kSepTol);

/// M_k = sqrt(p_k / r) h S_k g^{-1} for every k with p_k > 0.
std::vector<ProductOperator> build_povm(const ProductOperator& h, const ProductOperator& g,
                                        const std::vector<ProductOperator>& symmetries,
                                        const std::vector<double>& weights, double r,
                                        double tol = kSepTol);

/// || sum_k M_k^dag M_k - I ||_max.
double povm_completeness(const std::vector<ProductOperator>& povm);

/// Every branch M_k|source> must be proportional to |target>. Branches with
/// probability below 1e-14 are skipped with a note.
ConversionReport verify_conversion(const std::vector<ProductOperator>& povm, const PureState& source,
                                   const PureState& target, double fidelity_tol = kStateTol);

/// Rewrites a product POVM in which only one party's factors are not
/// proportional to unitaries as a one-round protocol: that party measures,
/// the others apply the unitary parts.
LoccProtocol one_round_protocol(const std::vector<ProductOperator>& povm, double tol = 1e-10);

struct Synthesis {
  std::string clause;  ///< "axis" or "identity"
  int acting_party = 0;
  ProductOperator g;  ///< source is g|Psi>
  ProductOperator h;  ///< target is h|Psi>
  PureState source;
  PureState target;
  std::vector<ProductOperator> symmetries;
  std::vector<double> weights;
  double r = 0.0;
  double sep_residual = 0.0;
  std::vector<ProductOperator> povm;
  LoccProtocol protocol;
  ConversionReport report;
};

/// One-round LOCC protocol reaching h|Psi> from an LU-inequivalent g|Psi>.
/// Throws InvalidArgument if h|Psi> is not reachable and NumericalFailure if
/// the constructed protocol does not check out.
Synthesis synthesize_reach_protocol_4q(const ProductOperator& h, const quad::GabcdParams& params);

/// P_{z1} (x) P_{z2} (x) P_{1/(z1 z2)}, times sigma_x^(x)3 when `flip`.
ProductOperator ghz_symmetry(Complex z1, Complex z2, bool flip);

}  // namespace fewbody::sep
