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

#include "fewbody/random.hpp"

#include <algorithm>
#include <functional>
#include <numbers>

namespace fewbody::sample {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

}  // namespace

PureState state(int num_qubits, Rng& rng) {
  Vec v(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gaussian(rng);
  return PureState::normalized(std::move(v));
}

Mat2 unitary(Rng& rng) {
  Mat2 z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = gaussian(rng);
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Mat2 invertible(Rng& rng, double smin, double smax) {
  std::uniform_real_distribution<double> u(smin, smax);
  Mat2 s = Mat2::Zero();
  s(0, 0) = u(rng);
  s(1, 1) = u(rng);
  const Mat2 left = unitary(rng);
  return left * s * unitary(rng);
}

ProductOperator local_unitaries(int n, Rng& rng) {
  std::vector<Mat2> f;
  for (int i = 0; i < n; ++i) f.push_back(unitary(rng));
  return ProductOperator(std::move(f));
}

ProductOperator local_invertibles(int n, Rng& rng) {
  std::vector<Mat2> f;
  for (int i = 0; i < n; ++i) f.push_back(invertible(rng));
  return ProductOperator(std::move(f));
}

std::vector<double> schmidt_vector(int d, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(static_cast<std::size_t>(d));
  double total = 0.0;
  for (auto& v : x) {
    v = e(rng);
    total += v;
  }
  for (auto& v : x) v /= total;
  std::sort(x.begin(), x.end(), std::greater<>());
  return x;
}

double angle(Rng& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  return u(rng);
}

}  // namespace fewbody::sample
