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

#include "fewbody/nnls.hpp"

#include <limits>
#include <vector>

#include "fewbody/error.hpp"

namespace fewbody {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd s = sub.completeOrthogonalDecomposition().solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] = s[static_cast<Eigen::Index>(k)];
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol, int max_iterations) {
  if (a.rows() != b.size()) throw DimensionMismatch("nnls: rows of A must match length of b");
  const Eigen::Index n = a.cols();
  if (tol <= 0.0) {
    tol = 10.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(a.rows(), n)) *
          (1.0 + a.lpNorm<Eigen::Infinity>() * (1.0 + b.lpNorm<Eigen::Infinity>()));
  }
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);

  NnlsResult result;
  result.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Eigen::VectorXd w = a.transpose() * (b - a * result.x);

  while (result.iterations < max_iterations) {
    Eigen::Index t = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best) {
        best = w[j];
        t = j;
      }
    }
    if (t < 0) {
      result.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(t)] = true;

    // Inner loop: step back toward feasibility until the passive solution is positive.
    while (true) {
      ++result.iterations;
      const Eigen::VectorXd z = solve_passive(a, b, passive);
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          const double denom = result.x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, result.x[j] / denom);
        }
      }
      if (alpha == std::numeric_limits<double>::infinity()) {
        result.x = z;
        break;
      }
      result.x += alpha * (z - result.x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && result.x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          result.x[j] = 0.0;
        }
      }
      if (result.iterations >= max_iterations) break;
    }
    w = a.transpose() * (b - a * result.x);
  }
  result.residual_norm = (a * result.x - b).norm();
  return result;
}

}  // namespace fewbody
