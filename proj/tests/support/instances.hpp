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

// Random instances shared by unit and acceptance tests.

#include <cmath>
#include <vector>

#include "fewbody/gates.hpp"
#include "fewbody/protocols.hpp"
#include "fewbody/quad.hpp"
#include "fewbody/random.hpp"

namespace instances {

using namespace fewbody;

inline Complex cgauss(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

inline quad::GabcdParams generic_params(Rng& rng) {
  for (;;) {
    quad::GabcdParams p{cgauss(rng), cgauss(rng), cgauss(rng), cgauss(rng)};
    if (quad::is_generic(p, 1e-3).generic) return p;
  }
}

inline Mat2 sqrt_psd(const Mat2& m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// sqrt(1/2 + gamma sigma_w)
inline Mat2 axis_root(Axis w, double gamma) {
  return sqrt_psd(0.5 * Mat2::Identity() + gamma * gates::pauli(w));
}

/// sqrt(1/2 + v . sigma)
inline Mat2 bloch_root(double vx, double vy, double vz) {
  return sqrt_psd(0.5 * Mat2::Identity() + vx * gates::pauli(Axis::X) + vy * gates::pauli(Axis::Y) +
                  vz * gates::pauli(Axis::Z));
}

/// A factor with all three Bloch components of its positive part well away from zero.
inline Mat2 off_axis(Rng& rng) {
  std::uniform_real_distribution<double> mag(0.05, 0.25);
  std::bernoulli_distribution sign(0.5);
  auto c = [&] { return sign(rng) ? mag(rng) : -mag(rng); };
  const double vx = c();
  const double vy = c();
  const double vz = c();
  return sample::unitary(rng) * bloch_root(vx, vy, vz);
}

inline Axis random_axis(Rng& rng) {
  std::uniform_int_distribution<int> a(0, 2);
  return static_cast<Axis>(a(rng));
}

inline double random_gamma(Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.4);
  std::bernoulli_distribution sign(0.5);
  return sign(rng) ? u(rng) : -u(rng);
}

struct FeasibleInstance {
  std::string family;
  quad::GabcdParams params;
  ProductOperator g;
  ProductOperator h;
  std::vector<ProductOperator> symmetries;
  std::vector<double> expected_weights;
};

/// Axis family: h = h^q (x) U_j g_w(gamma_j), g replaces h^q by the
/// normalized projection of H^q onto span{1, sigma_w}.
inline FeasibleInstance axis_instance(Rng& rng) {
  FeasibleInstance in;
  in.family = "axis";
  in.params = generic_params(rng);
  const Axis w = random_axis(rng);
  std::uniform_int_distribution<int> party(0, 3);
  const int q = party(rng);
  std::vector<Mat2> hf;
  for (int j = 0; j < 4; ++j) {
    hf.push_back(j == q ? off_axis(rng) : Mat2(sample::unitary(rng) * axis_root(w, random_gamma(rng))));
  }
  in.h = ProductOperator(hf);
  const Mat2 hq = hf[static_cast<std::size_t>(q)].adjoint() * hf[static_cast<std::size_t>(q)];
  const Mat2 sw = gates::pauli(w);
  const Mat2 proj = 0.5 * (hq + sw * hq * sw);
  in.g = in.h.with_factor(q, sample::unitary(rng) * sqrt_psd(proj / proj.trace().real()));
  in.symmetries = {ProductOperator::identity(4), ProductOperator::uniform(4, sw)};
  in.expected_weights = {0.5, 0.5};
  return in;
}

/// Twirl family: h = h^q (x) c_j U_j, g = local unitaries.
inline FeasibleInstance twirl_instance(Rng& rng) {
  FeasibleInstance in;
  in.family = "twirl";
  in.params = generic_params(rng);
  std::uniform_int_distribution<int> party(0, 3);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  const int q = party(rng);
  std::vector<Mat2> hf;
  for (int j = 0; j < 4; ++j) hf.push_back(j == q ? off_axis(rng) : Mat2(scale(rng) * sample::unitary(rng)));
  in.h = ProductOperator(hf);
  in.g = sample::local_unitaries(4, rng);
  in.symmetries = {ProductOperator::identity(4)};
  for (Axis w : {Axis::X, Axis::Y, Axis::Z}) in.symmetries.push_back(ProductOperator::uniform(4, gates::pauli(w)));
  in.expected_weights = {0.25, 0.25, 0.25, 0.25};
  return in;
}

/// A reachable target h for G_abcd: half axis clause, half identity clause.
inline ProductOperator reachable_target(Rng& rng, bool axis_clause) {
  std::uniform_int_distribution<int> party(0, 3);
  const int q = party(rng);
  std::vector<Mat2> hf;
  if (axis_clause) {
    const Axis w = random_axis(rng);
    for (int j = 0; j < 4; ++j) {
      hf.push_back(j == q ? off_axis(rng) : Mat2(sample::unitary(rng) * axis_root(w, random_gamma(rng))));
    }
  } else {
    for (int j = 0; j < 4; ++j) hf.push_back(j == q ? off_axis(rng) : sample::unitary(rng));
  }
  return ProductOperator(hf);
}

}  // namespace instances
