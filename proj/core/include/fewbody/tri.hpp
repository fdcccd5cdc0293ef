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

// Three-qubit SLOCC classes, GHZ/W standard forms and the maximally
// entangled set of three qubits.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "fewbody/qcore.hpp"

namespace fewbody::tri {

inline constexpr double kHyperdetThreshold = 1e-10;
inline constexpr double kHyperdetBorderline = 1e-8;
inline constexpr double kRankCutoff = 1e-10;
/// Tolerance on extracted standard-form parameters (z, gamma, x0).
inline constexpr double kParamTol = 1e-8;

enum class SloccClass3 { GhzClass, WClass, Biseparable, FullyProduct };

std::string_view slocc_name(SloccClass3 c);

struct SloccCertificate {
  SloccClass3 tag = SloccClass3::FullyProduct;
  /// For Biseparable: the party that factors out (0 => A|BC, 1 => B|AC, 2 => C|AB).
  std::optional<int> separated_party;
  Complex hyperdeterminant;
  std::array<int, 3> ranks{};
  std::array<double, 3> min_schmidt{};  ///< smaller Schmidt coefficient per single-party cut
};

PureState ghz_state();
PureState w_state();

/// Cayley's 2x2x2 hyperdeterminant of the amplitude tensor.
Complex hyperdeterminant(const PureState& state);

SloccCertificate classify_slocc3(const PureState& state);

/// g_x = sqrt(1/2 + gamma sigma_x).
Mat2 g_x(double gamma);

struct GhzStandardForm {
  Complex z{1.0, 0.0};
  std::array<double, 3> gamma{};
  /// state = (U_1 (x) U_2 (x) U_3) ghz_form_state(z, gamma) up to global phase.
  ProductOperator local_unitaries;
  double fidelity = 0.0;
};

/// Normalized (g_x^1 (x) g_x^2 (x) g_x^3) P_z |GHZ>.
PureState ghz_form_state(Complex z, const std::array<double, 3>& gamma);

/// Canonical representative: gamma_i in [0, 1/2); z with |z| >= 1 and
/// arg z in [0, pi). On the unit circle arg z is folded into [0, pi/2];
/// if some gamma_i vanishes z is taken real positive (the phase is then a
/// local unitary).
GhzStandardForm ghz_standard_form(const PureState& state);

struct WStandardForm {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  ProductOperator local_unitaries;
  /// The slot each input party occupies in x1..x3 (the x-form is party
  /// covariant, so this is always the identity order).
  std::array<int, 3> party_order{0, 1, 2};
  double fidelity = 0.0;

  /// diag(1, x1/x3)
  Mat2 g1() const;
  /// [[x3, x0], [0, x2]]
  Mat2 g2() const;
};

/// Normalized x0|000> + x1|100> + x2|010> + x3|001>.
PureState w_form_state(double x0, double x1, double x2, double x3);

WStandardForm w_standard_form(const PureState& state);

struct Mes3Verdict {
  bool member = false;
  SloccCertificate slocc;
  std::optional<GhzStandardForm> ghz;
  std::optional<WStandardForm> w;
  std::string reason;
};

/// Membership in the maximally entangled set of three qubits. Throws
/// InvalidArgument for biseparable or product input.
Mes3Verdict in_mes3(const PureState& state, double param_tol = kParamTol);

struct Mes3Params {
  double a = 1.0;
  double beta = 0.0;
  double beta_prime = 0.0;
};

/// Normalized |0>|Psi_s> + |1>(Y(beta') (x) Y(beta))|Psi_s>, with
/// |Psi_s> = a|00> + sqrt(1 - a^2)|11> and Y(beta) = exp(i beta sigma_y).
PureState mes3_state(const Mes3Params& params);

}  // namespace fewbody::tri
