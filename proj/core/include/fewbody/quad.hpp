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

// The generic four-qubit SLOCC family G_abcd and its reachability and
// convertibility predicates.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fewbody/qcore.hpp"

namespace fewbody::quad {

inline constexpr double kGenericTol = 1e-10;
inline constexpr double kAxisTol = 1e-10;
/// Off-axis components below this (but above kAxisTol) mark a factor as borderline.
inline constexpr double kAxisBorderline = 1e-7;

struct GabcdParams {
  Complex a{1.0, 0.0};
  Complex b;
  Complex c;
  Complex d;

  /// (a^2, b^2, c^2, d^2)
  std::array<Complex, 4> squares() const;
};

PureState seed_state(const GabcdParams& params);

struct GenericityReport {
  bool generic = false;
  std::vector<std::string> violations;
};

GenericityReport is_generic(const GabcdParams& params, double tol = kGenericTol);

/// {1, sigma_x, sigma_y, sigma_z} tensored four times, in that order. Each
/// element is checked against the seed. Throws for non-generic parameters.
std::vector<ProductOperator> symmetry_group(const GabcdParams& params);

enum class FactorTag { ProportionalIdentity, Axis, Generic };

std::string_view factor_tag_name(FactorTag t);

struct FactorClass {
  FactorTag tag = FactorTag::Generic;
  /// Meaningful for FactorTag::Axis.
  Axis axis = Axis::Z;
  double gamma = 0.0;
  /// Bloch components v of op^dag op / tr = 1/2 + v . sigma.
  std::array<double, 3> components{};
  /// A Generic factor whose off-axis parts are all below kAxisBorderline.
  bool borderline = false;

  /// Axis(w, .) or proportional to the identity.
  bool is_axis_or_identity(Axis w) const;
};

/// Classifies op by its trace-normalized positive part. Throws on a singular op.
FactorClass classify_factor(const Mat2& op);

struct PredicateWitness {
  /// The party playing the role of the unrestricted factor.
  int party = 0;
  std::optional<Axis> axis;  ///< empty for the identity clause
  std::string clause;
};

struct PredicateResult {
  bool holds = false;
  std::optional<PredicateWitness> witness;
  std::array<FactorClass, 4> factors;
};

/// Whether h|Psi> is reachable by LOCC from some LU-inequivalent state.
PredicateResult is_reachable(const ProductOperator& h, const GabcdParams& params);
/// Whether g|Psi> is convertible by LOCC to some LU-inequivalent state.
PredicateResult is_convertible(const ProductOperator& g, const GabcdParams& params);

enum class Mes4Status { ReachableNotInMes, IsolatedInMes, NonIsolatedInMes };

std::string_view mes4_status_name(Mes4Status s);

struct Mes4Verdict {
  Mes4Status status = Mes4Status::IsolatedInMes;
  PredicateResult reachable;
  PredicateResult convertible;
};

Mes4Verdict mes4_status(const ProductOperator& g, const GabcdParams& params);

/// Canonical bookkeeping for g|Psi>: the parameter order sorted by
/// (|s|, arg s) on the squares, and the seed symmetry g -> g S that makes the
/// first axis factor's gamma non-negative.
struct StandardCertificate {
  std::array<int, 4> parameter_order{0, 1, 2, 3};
  std::array<Complex, 4> sorted_squares{};
  int symmetry_index = 0;  ///< index into symmetry_group
  ProductOperator g;
  std::array<FactorClass, 4> factors;
};

StandardCertificate standard_certificate(const ProductOperator& g, const GabcdParams& params);

}  // namespace fewbody::quad
