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

#include <Eigen/Dense>

namespace fewbody {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  ///< ||A x - b||_2
  int iterations = 0;
  bool converged = false;
};

/// Lawson-Hanson active-set solver for min ||A x - b||_2 subject to x >= 0.
/// A non-positive `tol` selects a scale-aware default for the dual test.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 0.0,
                int max_iterations = 0);

}  // namespace fewbody
