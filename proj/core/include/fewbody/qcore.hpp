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

// Dense state-vector primitives for few-qubit pure states.
//
// Index convention: party 0 is the most significant bit of an amplitude
// index. Every module in the library inherits this.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fewbody/error.hpp"

namespace fewbody {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Rng = std::mt19937_64;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kStateTol = 1e-9;

enum class Axis { X, Y, Z };

char axis_name(Axis w);
Axis parse_axis(char c);

/// Normalized amplitude vector over `num_qubits` qubits.
///
/// A zero-qubit state (one amplitude of modulus one) is what remains after
/// every party of a register has been measured.
class PureState {
 public:
  /// The zero-qubit state.
  PureState() : PureState(Vec::Ones(1)) {}
  /// Takes a vector whose norm is already one within kNormTol.
  explicit PureState(Vec amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on a (numerically) zero vector.
  static PureState normalized(Vec amplitudes);
  static PureState basis(int num_qubits, std::uint64_t index);
  static PureState product(std::span<const Vec2> locals);
  static PureState plus(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vec& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  int num_qubits_ = 0;
  Vec amps_;
};

/// Number of qubits for a vector of the given length. Throws unless it is a
/// power of two.
int qubits_for_dim(std::size_t dim);

/// Ordered 2x2 factors, one per party: g = g^1 (x) ... (x) g^n.
class ProductOperator {
 public:
  ProductOperator() = default;
  explicit ProductOperator(std::vector<Mat2> factors);

  static ProductOperator identity(int n);
  static ProductOperator uniform(int n, const Mat2& factor);

  int size() const { return static_cast<int>(factors_.size()); }
  const Mat2& operator[](int i) const { return factors_.at(static_cast<std::size_t>(i)); }
  const std::vector<Mat2>& factors() const { return factors_; }

  ProductOperator adjoint() const;
  ProductOperator inverse() const;
  /// Factor-wise product (this * other).
  ProductOperator operator*(const ProductOperator& other) const;
  /// result[i] = (*this)[perm[i]].
  ProductOperator permuted(std::span<const int> perm) const;
  ProductOperator with_factor(int party, const Mat2& factor) const;

  /// Kronecker product of all factors (2^n x 2^n).
  Mat full() const;
  bool is_unitary(double tol = kNormTol) const;

 private:
  std::vector<Mat2> factors_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat entries);

  static DensityMatrix pure(const PureState& psi);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Mat& matrix() const { return rho_; }
  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;
  int rank(double cutoff = 1e-10) const;

 private:
  Mat rho_;
};

/// Result of applying a product operator. `amplitudes` are rescaled to unit
/// norm only when renormalization was requested.
struct AppliedProduct {
  Vec amplitudes;
  double squared_norm = 0.0;
  PureState state() const { return PureState::normalized(amplitudes); }
};

AppliedProduct apply_product(const ProductOperator& op, const PureState& state,
                             bool renormalize = true);
PureState apply_normalized(const ProductOperator& op, const PureState& state);

/// In-place kernels on raw vectors of 2^n amplitudes.
void apply_local(Vec& amps, int num_qubits, int party, const Mat2& m);
void apply_product_inplace(Vec& amps, int num_qubits, const ProductOperator& op);
/// Dense unitary on an ordered target list (targets[0] is the most
/// significant bit of the local index).
void apply_dense(Vec& amps, int num_qubits, std::span<const int> targets, const Mat& m);

/// Rows indexed by the `rows` parties (in the given order), columns by the
/// remaining parties in increasing order.
Mat matricize(const PureState& state, std::span<const int> rows);

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);
bool same_up_to_phase(const PureState& a, const PureState& b, double tol = kStateTol);

struct Measurement {
  int outcome = 0;
  double probability = 0.0;
  PureState post_state;
};

/// Born-rule branch probabilities of measuring `party` in {basis[0], basis[1]}.
std::array<double, 2> branch_probabilities(const PureState& state, int party,
                                           const std::array<Vec2, 2>& basis);

/// Measures `party` and removes it from the register.
Measurement projective_measure(const PureState& state, int party,
                               const std::array<Vec2, 2>& basis, int forced_outcome);
Measurement projective_measure(const PureState& state, int party,
                               const std::array<Vec2, 2>& basis, Rng& rng);

struct LuOptions {
  double tol = kStateTol;
  int restarts = 8;
  int max_sweeps = 400;
  std::uint64_t seed = 0x5eed;
};

/// Searches for single-qubit unitaries U with fidelity((U_1 (x) ... (x) U_n) a, b)
/// >= 1 - tol. A miss is not a proof of inequivalence.
std::optional<ProductOperator> lu_equivalent(const PureState& a, const PureState& b,
                                             const LuOptions& options = {});

/// max_ij |A_ij - B_ij|.
double max_abs_diff(const Mat& a, const Mat& b);
/// Induced infinity norm (max absolute row sum).
double inf_norm(const Mat& m);

}  // namespace fewbody
