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

#include "fewbody/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fewbody/gates.hpp"

namespace fewbody {

namespace {

constexpr double kZeroNormSq = 1e-28;

void check_finite(const Mat2& m) {
  if (!m.allFinite()) throw InvalidArgument("local operator has non-finite entries");
}

std::size_t bit_of(int num_qubits, int party) {
  return std::size_t{1} << (num_qubits - 1 - party);
}

void check_parties(int num_qubits, std::span<const int> parties) {
  std::vector<bool> seen(static_cast<std::size_t>(num_qubits), false);
  for (int p : parties) {
    if (p < 0 || p >= num_qubits) {
      throw InvalidArgument("party index " + std::to_string(p) + " out of range for " +
                            std::to_string(num_qubits) + " qubits");
    }
    if (seen[static_cast<std::size_t>(p)]) {
      throw InvalidArgument("party index " + std::to_string(p) + " repeated");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

char axis_name(Axis w) {
  switch (w) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

Axis parse_axis(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
    default: throw InvalidArgument(std::string("unknown Pauli axis '") + c + "'");
  }
}

int qubits_for_dim(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionMismatch("vector length " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vec amplitudes) : amps_(std::move(amplitudes)) {
  num_qubits_ = qubits_for_dim(static_cast<std::size_t>(amps_.size()));
  if (!amps_.allFinite()) throw InvalidArgument("state has non-finite amplitudes");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw InvalidArgument("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

PureState PureState::normalized(Vec amplitudes) {
  if (!amplitudes.allFinite()) throw InvalidArgument("state has non-finite amplitudes");
  const double nsq = amplitudes.squaredNorm();
  if (nsq < kZeroNormSq) throw InvalidArgument("cannot normalize a zero vector");
  amplitudes /= std::sqrt(nsq);
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 0 || num_qubits > 30) throw InvalidArgument("unsupported qubit count");
  const auto dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw InvalidArgument("basis index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::product(std::span<const Vec2> locals) {
  Vec v = Vec::Ones(1);
  for (const auto& l : locals) {
    Vec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * l[0];
      next[2 * i + 1] = v[i] * l[1];
    }
    v = std::move(next);
  }
  return normalized(std::move(v));
}

PureState PureState::plus(int num_qubits) {
  const auto dim = std::size_t{1} << num_qubits;
  Vec v = Vec::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
  return normalized(std::move(v));
}

// ---------------------------------------------------------------------------
// ProductOperator

ProductOperator::ProductOperator(std::vector<Mat2> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) check_finite(f);
}

ProductOperator ProductOperator::identity(int n) { return uniform(n, Mat2::Identity()); }

ProductOperator ProductOperator::uniform(int n, const Mat2& factor) {
  return ProductOperator(std::vector<Mat2>(static_cast<std::size_t>(n), factor));
}

ProductOperator ProductOperator::adjoint() const {
  std::vector<Mat2> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.adjoint());
  return ProductOperator(std::move(out));
}

ProductOperator ProductOperator::inverse() const {
  std::vector<Mat2> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) {
    const Complex det = f.determinant();
    if (std::abs(det) < 1e-14 * std::max(1.0, f.squaredNorm())) {
      throw InvalidArgument("product operator has a singular factor");
    }
    out.push_back(f.inverse());
  }
  return ProductOperator(std::move(out));
}

ProductOperator ProductOperator::operator*(const ProductOperator& other) const {
  if (other.size() != size()) throw DimensionMismatch("product operators differ in party count");
  std::vector<Mat2> out;
  out.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i] * other.factors_[i]);
  return ProductOperator(std::move(out));
}

ProductOperator ProductOperator::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != size()) throw DimensionMismatch("permutation length");
  check_parties(size(), perm);
  std::vector<Mat2> out;
  out.reserve(perm.size());
  for (int p : perm) out.push_back(factors_[static_cast<std::size_t>(p)]);
  return ProductOperator(std::move(out));
}

ProductOperator ProductOperator::with_factor(int party, const Mat2& factor) const {
  auto out = factors_;
  out.at(static_cast<std::size_t>(party)) = factor;
  return ProductOperator(std::move(out));
}

Mat ProductOperator::full() const {
  Mat m = Mat::Identity(1, 1);
  for (const auto& f : factors_) {
    Mat next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        next.block<2, 2>(2 * r, 2 * c) = m(r, c) * f;
    m = std::move(next);
  }
  return m;
}

bool ProductOperator::is_unitary(double tol) const {
  return std::all_of(factors_.begin(), factors_.end(), [tol](const Mat2& f) {
    return max_abs_diff(f.adjoint() * f, Mat2::Identity()) < tol;
  });
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Mat entries) : rho_(std::move(entries)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and nonempty");
  }
  if (max_abs_diff(rho_, rho_.adjoint()) > 1e-12) throw InvalidArgument("density matrix not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-12) throw InvalidArgument("density matrix trace != 1");
  if (eigenvalues().minCoeff() < -1e-10) throw InvalidArgument("density matrix not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const Vec& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int DensityMatrix::rank(double cutoff) const {
  const auto ev = eigenvalues();
  return static_cast<int>((ev.array() > cutoff).count());
}

// ---------------------------------------------------------------------------
// Kernels

void apply_local(Vec& amps, int num_qubits, int party, const Mat2& m) {
  const std::size_t stride = bit_of(num_qubits, party);
  const auto dim = static_cast<std::size_t>(amps.size());
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const auto i0 = static_cast<Eigen::Index>(base + off);
      const auto i1 = static_cast<Eigen::Index>(base + off + stride);
      const Complex a = amps[i0];
      const Complex b = amps[i1];
      amps[i0] = m(0, 0) * a + m(0, 1) * b;
      amps[i1] = m(1, 0) * a + m(1, 1) * b;
    }
  }
}

void apply_product_inplace(Vec& amps, int num_qubits, const ProductOperator& op) {
  if (op.size() != num_qubits) {
    throw DimensionMismatch("operator has " + std::to_string(op.size()) + " factors, state has " +
                            std::to_string(num_qubits) + " qubits");
  }
  for (int q = 0; q < num_qubits; ++q) {
    if (!op[q].isIdentity(0.0)) apply_local(amps, num_qubits, q, op[q]);
  }
}

void apply_dense(Vec& amps, int num_qubits, std::span<const int> targets, const Mat& m) {
  check_parties(num_qubits, targets);
  const auto k = static_cast<int>(targets.size());
  const Eigen::Index local = Eigen::Index{1} << k;
  if (m.rows() != local || m.cols() != local) throw DimensionMismatch("gate matrix size vs targets");
  std::vector<std::size_t> masks(static_cast<std::size_t>(k));
  std::size_t all = 0;
  for (int t = 0; t < k; ++t) {
    masks[static_cast<std::size_t>(t)] = bit_of(num_qubits, targets[static_cast<std::size_t>(t)]);
    all |= masks[static_cast<std::size_t>(t)];
  }
  auto offset = [&](Eigen::Index l) {
    std::size_t o = 0;
    for (int t = 0; t < k; ++t) {
      if ((static_cast<std::size_t>(l) >> (k - 1 - t)) & 1U) o |= masks[static_cast<std::size_t>(t)];
    }
    return o;
  };
  std::vector<std::size_t> offsets(static_cast<std::size_t>(local));
  for (Eigen::Index l = 0; l < local; ++l) offsets[static_cast<std::size_t>(l)] = offset(l);

  Vec buf(local);
  const auto dim = static_cast<std::size_t>(amps.size());
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & all) continue;
    for (Eigen::Index l = 0; l < local; ++l) buf[l] = amps[static_cast<Eigen::Index>(base + offsets[static_cast<std::size_t>(l)])];
    const Vec out = m * buf;
    for (Eigen::Index l = 0; l < local; ++l) amps[static_cast<Eigen::Index>(base + offsets[static_cast<std::size_t>(l)])] = out[l];
  }
}

AppliedProduct apply_product(const ProductOperator& op, const PureState& state, bool renormalize) {
  Vec v = state.amplitudes();
  apply_product_inplace(v, state.num_qubits(), op);
  const double nsq = v.squaredNorm();
  if (nsq < kZeroNormSq) {
    throw InvalidArgument("product operator annihilates the state (singular factor)");
  }
  if (renormalize) v /= std::sqrt(nsq);
  return AppliedProduct{std::move(v), nsq};
}

PureState apply_normalized(const ProductOperator& op, const PureState& state) {
  return apply_product(op, state, true).state();
}

Mat matricize(const PureState& state, std::span<const int> rows) {
  const int n = state.num_qubits();
  check_parties(n, rows);
  std::vector<int> cols;
  for (int p = 0; p < n; ++p) {
    if (std::find(rows.begin(), rows.end(), p) == rows.end()) cols.push_back(p);
  }
  const auto nr = static_cast<int>(rows.size());
  const auto nc = static_cast<int>(cols.size());
  Mat m(Eigen::Index{1} << nr, Eigen::Index{1} << nc);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (int p : rows) r = (r << 1) | static_cast<Eigen::Index>((x >> (n - 1 - p)) & 1U);
    for (int p : cols) c = (c << 1) | static_cast<Eigen::Index>((x >> (n - 1 - p)) & 1U);
    m(r, c) = state[x];
  }
  return m;
}

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep) {
  if (keep.empty()) throw InvalidArgument("reduced_density: empty party subset");
  const Mat m = matricize(state, keep);
  Mat rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionMismatch("fidelity: qubit counts differ");
  const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::clamp(f, 0.0, 1.0);
}

bool same_up_to_phase(const PureState& a, const PureState& b, double tol) {
  return fidelity(a, b) >= 1.0 - tol;
}

// ---------------------------------------------------------------------------
// Measurement

namespace {

void check_basis(const std::array<Vec2, 2>& basis) {
  Mat2 gram;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gram(i, j) = basis[static_cast<std::size_t>(i)].dot(basis[static_cast<std::size_t>(j)]);
  if (max_abs_diff(gram, Mat2::Identity()) > 1e-10) throw InvalidArgument("measurement basis not orthonormal");
}

// <b|_party applied to the state; the measured party is removed.
Vec contract(const PureState& state, int party, const Vec2& b) {
  const int n = state.num_qubits();
  if (party < 0 || party >= n) throw InvalidArgument("measured party out of range");
  const std::size_t stride = bit_of(n, party);
  Vec out(static_cast<Eigen::Index>(state.dim() / 2));
  const Complex b0 = std::conj(b[0]);
  const Complex b1 = std::conj(b[1]);
  for (std::size_t r = 0; r < state.dim() / 2; ++r) {
    const std::size_t high = (r / stride) * (2 * stride);
    const std::size_t low = r % stride;
    const std::size_t i0 = high + low;
    out[static_cast<Eigen::Index>(r)] = b0 * state[i0] + b1 * state[i0 + stride];
  }
  return out;
}

Measurement finish(Vec branch, int outcome) {
  const double p = branch.squaredNorm();
  if (p < 1e-14) throw InvalidArgument("selected measurement branch has vanishing probability");
  return Measurement{outcome, p, PureState::normalized(std::move(branch))};
}

}  // namespace

std::array<double, 2> branch_probabilities(const PureState& state, int party,
                                           const std::array<Vec2, 2>& basis) {
  check_basis(basis);
  return {contract(state, party, basis[0]).squaredNorm(), contract(state, party, basis[1]).squaredNorm()};
}

Measurement projective_measure(const PureState& state, int party,
                               const std::array<Vec2, 2>& basis, int forced_outcome) {
  check_basis(basis);
  if (forced_outcome != 0 && forced_outcome != 1) throw InvalidArgument("outcome must be 0 or 1");
  return finish(contract(state, party, basis[static_cast<std::size_t>(forced_outcome)]), forced_outcome);
}

Measurement projective_measure(const PureState& state, int party,
                               const std::array<Vec2, 2>& basis, Rng& rng) {
  check_basis(basis);
  Vec v0 = contract(state, party, basis[0]);
  const double p0 = v0.squaredNorm();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < p0) return finish(std::move(v0), 0);
  return finish(contract(state, party, basis[1]), 1);
}

// ---------------------------------------------------------------------------
// Local-unitary search

namespace {

struct Spectrum {
  Eigen::Vector2d values;  // descending
  Mat2 vectors;            // columns match values
};

Spectrum local_spectrum(const PureState& s, int party) {
  const int keep[] = {party};
  Eigen::SelfAdjointEigenSolver<Mat> es(reduced_density(s, keep).matrix());
  Spectrum out;
  out.values << es.eigenvalues()[1], es.eigenvalues()[0];
  out.vectors.col(0) = es.eigenvectors().col(1);
  out.vectors.col(1) = es.eigenvectors().col(0);
  return out;
}

// Alternating maximization of |<b|(U_1 (x) ... (x) U_n)|a>|. Each step is the
// closed-form optimum over one factor with the others fixed.
double refine(const PureState& a, const PureState& b, std::vector<Mat2>& us, int max_sweeps) {
  const int n = a.num_qubits();
  double last = -1.0;
  double overlap = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      Vec v = a.amplitudes();
      for (int j = 0; j < n; ++j) {
        if (j != i) apply_local(v, n, j, us[static_cast<std::size_t>(j)]);
      }
      // c(k, l) = sum_rest conj(b_{k,rest}) v_{l,rest}; overlap = tr(U c^T).
      const std::size_t stride = bit_of(n, i);
      Mat2 c = Mat2::Zero();
      for (std::size_t x = 0; x < a.dim(); ++x) {
        if (x & stride) continue;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            c(k, l) += std::conj(b[x + static_cast<std::size_t>(k) * stride]) *
                       v[static_cast<Eigen::Index>(x + static_cast<std::size_t>(l) * stride)];
      }
      Eigen::JacobiSVD<Mat2> svd(c.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      us[static_cast<std::size_t>(i)] = svd.matrixV() * svd.matrixU().adjoint();
      overlap = svd.singularValues().sum();
    }
    if (overlap - last < 1e-15) break;
    last = overlap;
  }
  return std::min(1.0, overlap * overlap);
}

Mat2 random_unitary2(Rng& rng) {
  std::normal_distribution<double> g;
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Mat2> qr(m);
  return qr.householderQ();
}

}  // namespace

std::optional<ProductOperator> lu_equivalent(const PureState& a, const PureState& b,
                                             const LuOptions& options) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionMismatch("lu_equivalent: qubit counts differ");
  const int n = a.num_qubits();
  if (n == 0) return ProductOperator{};

  // Necessary condition: local spectra agree. Fidelity 1 - tol bounds the
  // trace distance by sqrt(tol).
  const double gate = 10.0 * std::sqrt(options.tol) + 1e-12;
  std::vector<Spectrum> sa;
  std::vector<Spectrum> sb;
  std::vector<int> degenerate;
  for (int i = 0; i < n; ++i) {
    sa.push_back(local_spectrum(a, i));
    sb.push_back(local_spectrum(b, i));
    if (std::abs(sa.back().values[0] - sb.back().values[0]) > gate) return std::nullopt;
    if (sa.back().values[0] - sa.back().values[1] < 1e-6) degenerate.push_back(i);
  }

  std::vector<Mat2> best;
  double best_f = -1.0;
  auto attempt = [&](std::vector<Mat2> us) {
    const double f = refine(a, b, us, options.max_sweeps);
    if (f > best_f) {
      best_f = f;
      best = std::move(us);
    }
    return best_f >= 1.0 - options.tol;
  };

  // Spectral candidates, with eigenvector swaps on degenerate parties.
  const int swaps = std::min<int>(static_cast<int>(degenerate.size()), 6);
  for (int mask = 0; mask < (1 << swaps); ++mask) {
    std::vector<Mat2> us(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Mat2 va = sa[static_cast<std::size_t>(i)].vectors;
      for (int s = 0; s < swaps; ++s) {
        if (((mask >> s) & 1) != 0 && degenerate[static_cast<std::size_t>(s)] == i) va.col(0).swap(va.col(1));
      }
      us[static_cast<std::size_t>(i)] = sb[static_cast<std::size_t>(i)].vectors * va.adjoint();
    }
    if (attempt(std::move(us))) return ProductOperator(best);
  }

  Rng rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<Mat2> us(static_cast<std::size_t>(n));
    for (auto& u : us) u = random_unitary2(rng);
    if (attempt(std::move(us))) return ProductOperator(best);
  }
  return std::nullopt;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix shapes differ");
  return (a - b).cwiseAbs().maxCoeff();
}

double inf_norm(const Mat& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace fewbody
