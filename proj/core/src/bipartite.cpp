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

#include "fewbody/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace fewbody::bipartite {

namespace {

constexpr double kSumTol = 1e-12;

bool is_power_of_two(int d) { return d > 0 && (d & (d - 1)) == 0; }

int log2_exact(int d) {
  int k = 0;
  while ((1 << k) < d) ++k;
  return k;
}

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Mat cyclic_shift(int d, int j) {
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) m((i + j) % d, i) = 1.0;
  return m;
}

}  // namespace

SchmidtData SchmidtData::from_lambdas(std::span<const double> lambdas) {
  if (lambdas.empty()) throw InvalidArgument("empty Schmidt vector");
  double total = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw InvalidArgument("Schmidt weights must be non-negative");
    total += l;
  }
  if (std::abs(total - 1.0) > kSumTol) throw InvalidArgument("Schmidt weights must sum to 1");
  const auto sorted = sorted_desc(lambdas);
  SchmidtData out;
  const auto d = static_cast<Eigen::Index>(sorted.size());
  out.coefficients.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) out.coefficients[i] = std::sqrt(sorted[static_cast<std::size_t>(i)]);
  out.left_basis = Mat::Identity(d, d);
  out.right_basis = Mat::Identity(d, d);
  return out;
}

SchmidtData schmidt_decompose(const PureState& state, std::span<const int> side_a) {
  const int n = state.num_qubits();
  if (side_a.empty() || static_cast<int>(side_a.size()) >= n) {
    throw InvalidArgument("bipartition must leave both sides nonempty");
  }
  const Mat m = matricize(state, side_a);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  out.side_a.assign(side_a.begin(), side_a.end());
  out.num_qubits = n;
  return out;
}

namespace {

Mat schmidt_matrix(const SchmidtData& data) {
  const auto r = data.coefficients.size();
  if (data.left_basis.cols() < r || data.right_basis.cols() < r) {
    throw DimensionMismatch("Schmidt bases smaller than the coefficient vector");
  }
  return data.left_basis.leftCols(r) * data.coefficients.cast<Complex>().asDiagonal() *
         data.right_basis.leftCols(r).transpose();
}

}  // namespace

PureState schmidt_state(const SchmidtData& data) {
  const Mat m = schmidt_matrix(data);
  Vec v(m.rows() * m.cols());
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b) v[a * m.cols() + b] = m(a, b);
  return PureState::normalized(std::move(v));
}

PureState reconstruct(const SchmidtData& data) {
  if (data.num_qubits == 0) return schmidt_state(data);
  const int n = data.num_qubits;
  const Mat m = schmidt_matrix(data);
  std::vector<int> side_b;
  for (int p = 0; p < n; ++p) {
    if (std::find(data.side_a.begin(), data.side_a.end(), p) == data.side_a.end()) side_b.push_back(p);
  }
  Vec v(Eigen::Index{1} << n);
  for (std::size_t x = 0; x < static_cast<std::size_t>(v.size()); ++x) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (int p : data.side_a) r = (r << 1) | static_cast<Eigen::Index>((x >> (n - 1 - p)) & 1U);
    for (int p : side_b) c = (c << 1) | static_cast<Eigen::Index>((x >> (n - 1 - p)) & 1U);
    v[static_cast<Eigen::Index>(x)] = m(r, c);
  }
  return PureState::normalized(std::move(v));
}

bool majorizes(std::span<const double> y, std::span<const double> x) {
  if (y.size() != x.size()) throw DimensionMismatch("majorizes: vectors differ in length");
  for (double v : y) {
    if (!(v >= 0.0)) throw InvalidArgument("majorizes: entries must be non-negative");
  }
  for (double v : x) {
    if (!(v >= 0.0)) throw InvalidArgument("majorizes: entries must be non-negative");
  }
  const auto ys = sorted_desc(y);
  const auto xs = sorted_desc(x);
  double sy = 0.0;
  double sx = 0.0;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    sy += ys[k];
    sx += xs[k];
    if (sx > sy + kSumTol) return false;
  }
  const double ty = std::accumulate(ys.begin(), ys.end(), 0.0);
  const double tx = std::accumulate(xs.begin(), xs.end(), 0.0);
  return std::abs(ty - tx) <= kSumTol;
}

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::ForwardOnly: return "ForwardOnly";
    case Relation::BackwardOnly: return "BackwardOnly";
    case Relation::BothWays: return "BothWays";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

Relation nielsen_decide(std::span<const double> lambda_psi, std::span<const double> lambda_phi) {
  const std::size_t d = std::max(lambda_psi.size(), lambda_phi.size());
  std::vector<double> psi(lambda_psi.begin(), lambda_psi.end());
  std::vector<double> phi(lambda_phi.begin(), lambda_phi.end());
  psi.resize(d, 0.0);
  phi.resize(d, 0.0);
  const bool forward = majorizes(phi, psi);
  const bool backward = majorizes(psi, phi);
  if (forward && backward) return Relation::BothWays;
  if (forward) return Relation::ForwardOnly;
  if (backward) return Relation::BackwardOnly;
  return Relation::Incomparable;
}

Relation nielsen_decide(const SchmidtData& psi, const SchmidtData& phi) {
  const Eigen::VectorXd lp = psi.lambdas();
  const Eigen::VectorXd lf = phi.lambdas();
  return nielsen_decide(std::span<const double>(lp.data(), static_cast<std::size_t>(lp.size())),
                        std::span<const double>(lf.data(), static_cast<std::size_t>(lf.size())));
}

Vec max_entangled_vector(int d) {
  if (d < 2) throw InvalidArgument("maximally entangled state needs d >= 2");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i) * d + i] = amp;
  return v;
}

PureState max_entangled(int d) {
  if (d < 2) throw InvalidArgument("maximally entangled state needs d >= 2");
  if (!is_power_of_two(d)) throw InvalidArgument("qubit encoding needs d to be a power of two");
  return PureState::normalized(max_entangled_vector(d));
}

LoccProtocol phi_plus_to_target(const SchmidtData& target) {
  const auto d = static_cast<int>(target.left_basis.rows());
  if (target.left_basis.cols() != d || target.right_basis.rows() != d || target.right_basis.cols() != d) {
    throw DimensionMismatch("target sides must both have the resource dimension");
  }
  if (!is_power_of_two(d) || d < 2) throw InvalidArgument("target dimension must be a power of two >= 2");
  if (std::abs(target.lambdas().sum() - 1.0) > kSumTol) throw InvalidArgument("target is not normalized");

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d);
  lambda.head(target.coefficients.size()) = target.lambdas();

  const int k = log2_exact(d);
  LoccProtocol protocol;
  for (int q = 0; q < k; ++q) protocol.acting_qubits.push_back(q);
  std::vector<int> side_b;
  for (int q = k; q < 2 * k; ++q) side_b.push_back(q);

  for (int j = 0; j < d; ++j) {
    Mat kraus = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) kraus(i, i) = std::sqrt(lambda[(i + j) % d]);
    protocol.kraus.push_back(std::move(kraus));
    const Mat shift = cyclic_shift(d, j);
    protocol.corrections.push_back({Gate{protocol.acting_qubits, target.left_basis * shift},
                                    Gate{side_b, target.right_basis * shift}});
  }
  return protocol;
}

Ensemble::Ensemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("ensemble is empty");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.weight >= 0.0)) throw InvalidArgument("ensemble weights must be non-negative");
    if (e.state.num_qubits() != entries_.front().state.num_qubits()) {
      throw DimensionMismatch("ensemble states differ in qubit count");
    }
    total += e.weight;
  }
  if (std::abs(total - 1.0) > kSumTol) throw InvalidArgument("ensemble weights must sum to 1");
}

DensityMatrix ensemble_density(const Ensemble& ensemble) {
  const auto dim = static_cast<Eigen::Index>(ensemble.entries().front().state.dim());
  Mat rho = Mat::Zero(dim, dim);
  for (const auto& e : ensemble.entries()) {
    const Vec& v = e.state.amplitudes();
    rho += e.weight * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix prepare_mixed(const Ensemble& ensemble, std::span<const LoccProtocol> protocols,
                            const PureState& resource) {
  if (protocols.size() != ensemble.entries().size()) {
    throw InvalidArgument("prepare_mixed needs one protocol per ensemble entry");
  }
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    const auto report = verify_protocol(protocols[i], resource, ensemble.entries()[i].state, 1e-10);
    for (const auto& b : report.branches) {
      if (!b.skipped && b.fidelity < 1.0 - 1e-10) {
        throw NumericalFailure("ensemble entry " + std::to_string(i) + ": branch " + std::to_string(b.index) +
                               " misses its target (fidelity " + std::to_string(b.fidelity) + ")");
      }
    }
    if (std::abs(report.probability_sum - 1.0) > 1e-10) {
      throw NumericalFailure("ensemble entry " + std::to_string(i) + ": branch probabilities do not sum to 1");
    }
  }
  return ensemble_density(ensemble);
}

}  // namespace fewbody::bipartite
