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

#include <gtest/gtest.h>

#include <random>

#include "fewbody/error.hpp"
#include "fewbody/nnls.hpp"

namespace fewbody {
namespace {

// Exhaustive active-set oracle: the optimum is the best feasible
// unconstrained solution over some support.
double brute_force_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) cols.push_back(j);
    }
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
    const Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
    if (x.minCoeff() < 0.0) continue;
    best = std::min(best, (sub * x - b).norm());
  }
  return best;
}

TEST(Nnls, RecoversNonNegativeSolution) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const Eigen::VectorXd x_true = (Eigen::VectorXd(2) << 0.3, 0.7).finished();
  const NnlsResult r = nnls(a, a * x_true);
  ASSERT_TRUE(r.converged);
  EXPECT_LT((r.x - x_true).norm(), 1e-14);
  EXPECT_LT(r.residual_norm, 1e-14);
}

TEST(Nnls, ClampsNegativeDirections) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::VectorXd b = (Eigen::VectorXd(2) << -1.0, 2.0).finished();
  const NnlsResult r = nnls(a, b);
  EXPECT_EQ(r.x[0], 0.0);
  EXPECT_NEAR(r.x[1], 2.0, 1e-15);
  EXPECT_NEAR(r.residual_norm, 1.0, 1e-15);
}

TEST(Nnls, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int rows = 3 + t % 5;
    const int cols = 1 + t % 6;
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd b(rows);
    for (int i = 0; i < rows; ++i) {
      b[i] = n(rng);
      for (int j = 0; j < cols; ++j) a(i, j) = n(rng);
    }
    const NnlsResult r = nnls(a, b);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.x.minCoeff(), 0.0);
    EXPECT_NEAR(r.residual_norm, brute_force_residual(a, b), 1e-10) << t;
  }
}

TEST(Nnls, RankDeficientColumns) {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0, 0, 0, 1;
  const Eigen::VectorXd b = (Eigen::VectorXd(2) << 2.0, 1.0).finished();
  const NnlsResult r = nnls(a, b);
  EXPECT_LT(r.residual_norm, 1e-12);
  EXPECT_NEAR(r.x[0] + r.x[1], 2.0, 1e-12);
}

TEST(Nnls, DimensionCheck) {
  EXPECT_THROW(nnls(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(3)), DimensionMismatch);
}

}  // namespace
}  // namespace fewbody
