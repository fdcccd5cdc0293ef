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

// Seeded samplers shared by the tests and the tools.

#include <vector>

#include "fewbody/qcore.hpp"

namespace fewbody::sample {

/// Complex Gaussian amplitudes, normalized.
PureState state(int num_qubits, Rng& rng);
/// Haar-random 2x2 unitary.
Mat2 unitary(Rng& rng);
/// U diag(s) V with singular values uniform in [smin, smax].
Mat2 invertible(Rng& rng, double smin = 0.3, double smax = 1.5);
ProductOperator local_unitaries(int n, Rng& rng);
ProductOperator local_invertibles(int n, Rng& rng);
/// Uniform on the probability simplex, sorted descending.
std::vector<double> schmidt_vector(int d, Rng& rng);
/// Uniform angle in [-pi, pi).
double angle(Rng& rng);

}  // namespace fewbody::sample
