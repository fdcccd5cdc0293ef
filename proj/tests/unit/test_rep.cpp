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

#include <algorithm>
#include <map>
#include <numbers>

#include "fewbody/gates.hpp"
#include "fewbody/random.hpp"
#include "fewbody/rep.hpp"
#include "oracles.hpp"

namespace fewbody::rep {
namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd z_gate(double a) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(1i * a);
  m(1, 1) = std::exp(-1i * a);
  return m;
}

Eigen::Matrix2cd had() {
  Eigen::Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Eigen::Matrix2cd sx() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd sy() {
  Eigen::Matrix2cd m;
  m << 0, -1i, 1i, 0;
  return m;
}

Eigen::Matrix2cd sz() { return z_gate(kPi / 2) * (-1i); }

/// Resource from the graph-state oracle and Kronecker-product local layer.
Vec oracle_phi3() {
  const Vec g = oracle::graph_state(6, {{1, 2}, {0, 1}, {2, 3}, {2, 4}, {0, 4}, {3, 4}, {4, 5}, {3, 5}});
  const Mat layer = oracle::kron_all({had(), z_gate(kPi / 2), z_gate(kPi / 4) * had(), z_gate(-kPi / 4),
                                      z_gate(-kPi / 4), z_gate(-kPi / 4)});
  return layer * g;
}

/// exp(i a Z..Z) on the listed qubits of an n-qubit vector, as a diagonal.
Vec oracle_zstring(const Vec& v, int n, const std::vector<int>& qs, double a) {
  Vec out = v;
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    int parity = 0;
    for (int q : qs) parity ^= oracle::bit(static_cast<std::size_t>(x), q, n);
    out[x] *= std::exp(1i * (parity ? -a : a));
  }
  return out;
}

Vec oracle_target(const RepTargetParams& p) {
  Vec v = Vec::Constant(8, 1.0 / std::sqrt(8.0));
  v = oracle_zstring(v, 3, {1, 2}, p.alpha6);
  const Eigen::Matrix2cd t2 = oracle::exp_i_theta(sy(), kPi / 4) * z_gate(kPi / 4) * had();
  const Eigen::Matrix2cd t3 = oracle::exp_i_theta(sx(), -kPi / 4) * z_gate(-kPi / 4) * had();
  v = oracle::kron_all({Eigen::Matrix2cd::Identity(), t2, t3}) * v;
  v = oracle_zstring(v, 3, {0, 1}, p.alpha5);
  v = oracle_zstring(v, 3, {0, 2}, p.alpha4);
  return v;
}

/// Projects the last qubit onto sigma_z^k Z(-theta)|+> and drops it.
Vec oracle_measure_last(const Vec& v, double theta, int k, double& prob) {
  Eigen::Vector2cd b = z_gate(-theta) * Eigen::Vector2cd(1, 1) / std::sqrt(2.0);
  if (k) b = sz() * b;
  Vec out(v.size() / 2);
  for (Eigen::Index x = 0; x < out.size(); ++x) out[x] = std::conj(b[0]) * v[2 * x] + std::conj(b[1]) * v[2 * x + 1];
  prob = out.squaredNorm() / v.squaredNorm();
  return out;
}

TEST(Phi3, NormAndOracle) {
  const PureState phi = build_phi3();
  EXPECT_NEAR(phi.amplitudes().norm(), 1.0, 1e-14);
  EXPECT_GE(oracle::fidelity(phi.amplitudes(), oracle_phi3()), 1 - 1e-14);
}

TEST(Phi3, CzOrderDoesNotMatter) {
  Rng rng(60);
  auto edges = phi3_edges();
  const PureState base = build_phi3();
  for (int t = 0; t < 20; ++t) {
    std::shuffle(edges.begin(), edges.end(), rng);
    EXPECT_GE(fidelity(build_phi3(edges), base), 1 - 1e-14);
  }
}

TEST(Phi3, GraphStateReductionsAreMaximallyMixed) {
  const PureState g = phi3_graph_state();
  EXPECT_GE(oracle::fidelity(g.amplitudes(),
                             oracle::graph_state(6, {{1, 2}, {0, 1}, {2, 3}, {2, 4}, {0, 4}, {3, 4}, {4, 5}, {3, 5}})),
            1 - 1e-14);
  for (int q = 0; q < 6; ++q) {
    const Mat rho = oracle::partial_trace(g.amplitudes(), 6, {q});
    EXPECT_LT(max_abs_diff(rho, 0.5 * Mat::Identity(2, 2)), 1e-14) << q;
  }
}

TEST(Target, Examples) {
  const PureState t0 = target_state({});
  Vec want = Vec::Constant(8, 1.0 / std::sqrt(8.0));
  want = oracle::kron_all({Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd(gates::t2()), Eigen::Matrix2cd(gates::t3())}) * want;
  EXPECT_GE(oracle::fidelity(t0.amplitudes(), want), 1 - 1e-14);

  const RepTargetParams p{kPi / 4, 0.0, 0.0};
  EXPECT_GE(oracle::fidelity(target_state(p).amplitudes(), oracle_target(p)), 1 - 1e-14);
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const RepTargetParams q{sample::angle(rng), sample::angle(rng), sample::angle(rng)};
    const PureState s = target_state(q);
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-14);
    EXPECT_GE(oracle::fidelity(s.amplitudes(), oracle_target(q)), 1 - 1e-13);
  }
}

TEST(Simulate, AllZeroOutcomesNeedNoCorrection) {
  const RepTargetParams p{0.3, 1.1, -0.7};
  const auto out = simulate_rep(p, RepOutcomes{0, 0, 0});
  EXPECT_LT(max_abs_diff(out.correction.full(), Mat::Identity(8, 8)), 1e-15);
  EXPECT_GE(fidelity(out.raw_state, target_state(p)), 1 - 1e-10);
}

TEST(Simulate, MatchesTheStatevectorOracle) {
  Rng rng(62);
  for (int t = 0; t < 10; ++t) {
    const RepTargetParams p{sample::angle(rng), sample::angle(rng), sample::angle(rng)};
    for (int code = 0; code < 8; ++code) {
      const RepOutcomes k{(code >> 2) & 1, (code >> 1) & 1, code & 1};
      double p6 = 0.0;
      double p5 = 0.0;
      double p4 = 0.0;
      Vec v = oracle_measure_last(oracle_phi3(), p.alpha6, k.k6, p6);
      v = oracle_measure_last(v, k.k6 ? -p.alpha5 : p.alpha5, k.k5, p5);
      v = oracle_measure_last(v, p.alpha4, k.k4, p4);
      const auto out = simulate_rep(p, k);
      EXPECT_GE(oracle::fidelity(out.raw_state.amplitudes(), v), 1 - 1e-12);
      EXPECT_NEAR(out.branch_probability, p6 * p5 * p4, 1e-12);
      // oracle Pauli frame, inverted
      const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
      auto pw = [&](const Eigen::Matrix2cd& m, int e) { return (e % 2) ? m : id; };
      const Mat frame = oracle::kron_all({pw(sz(), k.k4 + k.k5), pw(sz(), k.k5) * pw(sy(), k.k6), pw(sz(), k.k4 + k.k6)});
      EXPECT_GE(oracle::fidelity(frame.adjoint() * v, oracle_target(p)), 1 - 1e-10);
    }
  }
}

TEST(Simulate, SigmaYBranch) {
  const RepTargetParams p{0.3, 1.1, -0.7};
  const auto out = simulate_rep(p, RepOutcomes{1, 0, 0});
  EXPECT_LT(max_abs_diff(out.correction[1], gates::pauli(Axis::Y).adjoint()), 1e-15);
  EXPECT_GE(out.fidelity, 1 - 1e-10);
  EXPECT_DOUBLE_EQ(out.thetas[1], -1.1);
}

TEST(Simulate, SampledRunsAreCorrected) {
  Rng rng(63);
  std::map<int, int> seen;
  for (int t = 0; t < 100; ++t) {
    const RepTargetParams p{sample::angle(rng), sample::angle(rng), sample::angle(rng)};
    const auto out = simulate_rep(p, rng);
    EXPECT_GE(out.fidelity, 1 - 1e-10);
    ++seen[4 * out.k.k6 + 2 * out.k.k5 + out.k.k4];
  }
  EXPECT_GT(seen.size(), 4U);
}

TEST(Simulate, SeededRunsRepeat) {
  const RepTargetParams p{0.3, 1.1, -0.7};
  Rng a(7);
  Rng b(7);
  for (int t = 0; t < 10; ++t) {
    const auto x = simulate_rep(p, a);
    const auto y = simulate_rep(p, b);
    EXPECT_EQ(x.k.k6, y.k.k6);
    EXPECT_EQ(x.k.k5, y.k.k5);
    EXPECT_EQ(x.k.k4, y.k.k4);
  }
}

TEST(Simulate, InvalidOutcome) {
  EXPECT_THROW(simulate_rep({}, RepOutcomes{2, 0, 0}), InvalidArgument);
}

TEST(Determinism, Examples) {
  for (const RepTargetParams& p : {RepTargetParams{}, RepTargetParams{0.3, 1.1, -0.7}}) {
    const auto rep = verify_rep_determinism(p);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.branches.size(), 8U);
    EXPECT_NEAR(rep.probability_sum, 1.0, 1e-12);
    EXPECT_GE(rep.min_fidelity, 1 - 1e-10);
  }
}

TEST(Determinism, RandomAngles) {
  Rng rng(64);
  for (int t = 0; t < 100; ++t) {
    const RepTargetParams p{sample::angle(rng), sample::angle(rng), sample::angle(rng)};
    const auto rep = verify_rep_determinism(p);
    EXPECT_TRUE(rep.ok);
    EXPECT_NEAR(rep.probability_sum, 1.0, 1e-12);
    for (const auto& b : rep.branches) EXPECT_GE(b.fidelity, 1 - 1e-10);
  }
}

TEST(Determinism, AdaptationIsNeeded) {
  const auto rep = verify_rep_determinism({0.3, 1.1, -0.7}, RepOptions{false});
  EXPECT_FALSE(rep.ok);
  EXPECT_LT(rep.min_fidelity, 1 - 1e-6);
  Rng rng(65);
  for (int t = 0; t < 20; ++t) {
    const double a5 = std::uniform_real_distribution<double>(0.2, kPi / 2 - 0.2)(rng);
    EXPECT_LT(verify_rep_determinism({sample::angle(rng), a5, sample::angle(rng)}, RepOptions{false}).min_fidelity,
              1 - 1e-6);
  }
}

TEST(Mixed3, SingleEntryIsPure) {
  Rng rng(66);
  const std::vector<Mixed3Entry> ens{{1.0, {0.3, 1.1, -0.7}}};
  const auto res = prepare_mixed3(ens, rng);
  const Vec t = target_state({0.3, 1.1, -0.7}).amplitudes();
  EXPECT_LT(max_abs_diff(res.density.matrix(), t * t.adjoint()), 1e-12);
  EXPECT_GE(fidelity(res.prepared, target_state({0.3, 1.1, -0.7})), 1 - 1e-10);
}

TEST(Mixed3, OrthogonalPairHasTwoHalfEigenvalues) {
  // U = n . sigma on party 1 with n orthogonal to the Bloch vector of that
  // party maps the target to an orthogonal state.
  const RepTargetParams p{0.4, 0.9, 0.2};
  const Vec t = target_state(p).amplitudes();
  const Mat rho_a = oracle::partial_trace(t, 3, {0});
  const Eigen::Vector3d r(2 * rho_a(0, 1).real(), -2 * rho_a(0, 1).imag(), (rho_a(0, 0) - rho_a(1, 1)).real());
  Eigen::Vector3d n = r.cross(Eigen::Vector3d(0.3, 0.5, 0.7));
  n.normalize();
  const Mat2 u = n[0] * gates::pauli(Axis::X) + n[1] * gates::pauli(Axis::Y) + n[2] * gates::pauli(Axis::Z);
  const ProductOperator lu({u, Mat2::Identity(), Mat2::Identity()});
  const Vec t2 = oracle::kron_all(lu.factors()) * t;
  ASSERT_LT(std::abs(t.dot(t2)), 1e-12);

  const std::vector<Mixed3Entry> ens{{0.5, p, ProductOperator::identity(3)}, {0.5, p, lu}};
  const DensityMatrix rho = ensemble_density3(ens);
  Eigen::VectorXd ev = rho.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  EXPECT_NEAR(ev[0], 0.5, 1e-12);
  EXPECT_NEAR(ev[1], 0.5, 1e-12);
  for (Eigen::Index i = 2; i < ev.size(); ++i) EXPECT_NEAR(ev[i], 0.0, 1e-12);
  EXPECT_LT(max_abs_diff(rho.matrix(), 0.5 * (t * t.adjoint() + t2 * t2.adjoint())), 1e-12);

  Rng rng(67);
  for (int s = 0; s < 20; ++s) {
    const auto res = prepare_mixed3(ens, rng);
    const Vec& v = res.prepared.amplitudes();
    // the sampled state lies in the support of the ensemble
    EXPECT_NEAR(std::real(v.dot(rho.matrix() * v)), 0.5, 1e-10);
  }
}

TEST(Mixed3, DensityIsAValidState) {
  Rng rng(68);
  std::vector<Mixed3Entry> ens;
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  for (double p : w) {
    ens.push_back({p, {sample::angle(rng), sample::angle(rng), sample::angle(rng)}, sample::local_unitaries(3, rng)});
  }
  const DensityMatrix rho = ensemble_density3(ens);
  const Mat& m = rho.matrix();
  EXPECT_LT(max_abs_diff(m, m.adjoint()), 1e-12);
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
  EXPECT_GE(rho.eigenvalues().minCoeff(), -1e-12);
  Mat want = Mat::Zero(8, 8);
  for (const auto& e : ens) {
    const Vec v = oracle::kron_all(e.post_lu.factors()) * target_state(e.params).amplitudes();
    want += e.weight * v * v.adjoint();
  }
  EXPECT_LT(max_abs_diff(m, want), 1e-12);
}

TEST(Mixed3, Validation) {
  Rng rng(69);
  EXPECT_THROW(prepare_mixed3({}, rng), InvalidArgument);
  EXPECT_THROW(ensemble_density3({{0.4, {}}, {0.4, {}}}), InvalidArgument);
  EXPECT_THROW(ensemble_density3({{1.2, {}}, {-0.2, {}}}), InvalidArgument);
  const ProductOperator bad({2.0 * Mat2::Identity(), Mat2::Identity(), Mat2::Identity()});
  EXPECT_THROW(ensemble_density3({{1.0, {}, bad}}), InvalidArgument);
}

}  // namespace
}  // namespace fewbody::rep
