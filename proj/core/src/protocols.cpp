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

#include "fewbody/protocols.hpp"

#include <cmath>
#include <numeric>

#include "fewbody/gates.hpp"
#include "fewbody/nnls.hpp"
#include "fewbody/tri.hpp"

namespace fewbody::sep {

namespace {

void check_sizes(const ProductOperator& a, const ProductOperator& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + " factors");
  }
}

void check_symmetries(const ProductOperator& ref, const std::vector<ProductOperator>& syms) {
  if (syms.empty()) throw InvalidArgument("symmetry list is empty");
  for (const auto& s : syms) check_sizes(ref, s, "symmetry");
}

// Decomposes f = c V with c > 0 and V unitary, if possible.
std::optional<std::pair<double, Mat2>> scaled_unitary(const Mat2& f, double tol) {
  const double c = std::sqrt(f.squaredNorm() / 2.0);
  if (c == 0.0) return std::nullopt;
  const Mat2 v = f / c;
  if (max_abs_diff(v.adjoint() * v, Mat2::Identity()) > tol) return std::nullopt;
  return std::make_pair(c, v);
}

Mat sandwiched_sum(const ProductOperator& H, const std::vector<ProductOperator>& syms,
                   const std::vector<double>& p) {
  const Mat h = H.full();
  Mat acc = Mat::Zero(h.rows(), h.cols());
  for (std::size_t k = 0; k < syms.size(); ++k) {
    const Mat s = syms[k].full();
    acc += p[k] * (s.adjoint() * h * s);
  }
  return acc;
}

}  // namespace

ProductOperator positive_part(const ProductOperator& g) { return g.adjoint() * g; }

SepCheck verify_sep(const SepInstance& in, double tol) {
  check_sizes(in.G, in.H, "G vs H");
  check_symmetries(in.G, in.symmetries);
  if (in.weights.size() != in.symmetries.size()) {
    throw DimensionMismatch("one weight per symmetry is required");
  }
  double total = 0.0;
  for (double p : in.weights) {
    if (!(p >= 0.0)) throw InvalidArgument("weights must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("weights must sum to one");
  if (!(in.r > 0.0)) throw InvalidArgument("r must be positive");
  const Mat lhs = sandwiched_sum(in.H, in.symmetries, in.weights);
  SepCheck out;
  out.residual = inf_norm(lhs - in.r * in.G.full());
  out.ok = out.residual < tol;
  return out;
}

std::optional<SepSolution> solve_sep_weights(const ProductOperator& G, const ProductOperator& H,
                                             const std::vector<ProductOperator>& syms, double tol) {
  check_sizes(G, H, "G vs H");
  check_symmetries(G, syms);
  const Mat g = G.full();
  const Mat h = H.full();
  const Complex tr_g = g.trace();
  if (!(tr_g.real() > 0.0)) throw InvalidArgument("G must have positive trace");

  // With r = sum_k p_k t_k / tr G the equation becomes homogeneous in p:
  // sum_k p_k (A_k - t_k / tr G * G) = 0, plus sum_k p_k = 1.
  const Eigen::Index n2 = g.size();
  const auto m = static_cast<Eigen::Index>(syms.size());
  std::vector<Complex> traces(syms.size());
  Eigen::MatrixXd a(2 * n2 + 1, m);
  double scale = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Mat s = syms[static_cast<std::size_t>(k)].full();
    const Mat ak = s.adjoint() * h * s;
    traces[static_cast<std::size_t>(k)] = ak.trace();
    const Mat col = ak - (ak.trace() / tr_g) * g;
    const Eigen::Map<const Vec> flat(col.data(), n2);
    a.col(k).head(n2) = flat.real();
    a.col(k).segment(n2, n2) = flat.imag();
    scale = std::max(scale, ak.cwiseAbs().maxCoeff());
  }
  const double w = 1e3 * std::max(1.0, scale);
  a.row(2 * n2).setConstant(w);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * n2 + 1);
  b[2 * n2] = w;

  const NnlsResult sol = nnls(a, b);
  const double total = sol.x.sum();
  if (!(total > 0.0)) return std::nullopt;

  SepSolution out;
  out.weights.resize(syms.size());
  Complex weighted_trace = 0.0;
  for (std::size_t k = 0; k < syms.size(); ++k) {
    out.weights[k] = sol.x[static_cast<Eigen::Index>(k)] / total;
    weighted_trace += out.weights[k] * traces[k];
  }
  out.r = (weighted_trace / tr_g).real();
  if (!(out.r > 0.0)) return std::nullopt;
  const SepCheck check = verify_sep(SepInstance{G, H, syms, out.weights, out.r}, tol);
  out.residual = check.residual;
  if (!check.ok) return std::nullopt;
  return out;
}

std::vector<ProductOperator> build_povm(const ProductOperator& h, const ProductOperator& g,
                                        const std::vector<ProductOperator>& syms,
                                        const std::vector<double>& weights, double r, double tol) {
  check_sizes(h, g, "h vs g");
  for (int i = 0; i < g.size(); ++i) {
    if (std::abs(g[i].determinant()) <= 1e-12 * g[i].squaredNorm()) {
      throw InvalidArgument("build_povm: factor " + std::to_string(i) + " of g is singular");
    }
  }
  const SepCheck check = verify_sep(SepInstance{positive_part(g), positive_part(h), syms, weights, r}, tol);
  if (!check.ok) {
    throw InvalidArgument("build_povm: weights do not satisfy the SEP condition (residual " +
                          std::to_string(check.residual) + ")");
  }
  const ProductOperator g_inv = g.inverse();
  std::vector<ProductOperator> povm;
  for (std::size_t k = 0; k < syms.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    ProductOperator mk = h * syms[k] * g_inv;
    mk = mk.with_factor(0, std::sqrt(weights[k] / r) * mk[0]);
    povm.push_back(std::move(mk));
  }
  const double residual = povm_completeness(povm);
  if (residual > tol) {
    throw NumericalFailure("build_povm: completeness residual " + std::to_string(residual));
  }
  return povm;
}

double povm_completeness(const std::vector<ProductOperator>& povm) {
  if (povm.empty()) throw InvalidArgument("POVM is empty");
  const int n = povm.front().size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat sum = Mat::Zero(dim, dim);
  for (const auto& m : povm) {
    if (m.size() != n) throw DimensionMismatch("POVM elements act on different numbers of parties");
    const Mat f = m.full();
    sum += f.adjoint() * f;
  }
  return max_abs_diff(sum, Mat::Identity(dim, dim));
}

ConversionReport verify_conversion(const std::vector<ProductOperator>& povm, const PureState& source,
                                   const PureState& target, double fidelity_tol) {
  ConversionReport report;
  report.completeness_residual = povm_completeness(povm);
  if (report.completeness_residual > kSepTol) {
    throw InvalidArgument("verify_conversion: POVM is not complete (residual " +
                          std::to_string(report.completeness_residual) + ")");
  }
  if (source.num_qubits() != povm.front().size() || target.num_qubits() != source.num_qubits()) {
    throw DimensionMismatch("verify_conversion: state and POVM sizes differ");
  }
  bool ok = true;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    Vec out = source.amplitudes();
    apply_product_inplace(out, source.num_qubits(), povm[k]);
    const double nsq = out.squaredNorm();
    BranchReport br;
    br.index = static_cast<int>(k);
    br.probability = nsq;
    report.probability_sum += nsq;
    if (nsq < 1e-14) {
      br.skipped = true;
      report.notes.push_back("branch " + std::to_string(k) + " has vanishing probability; skipped");
    } else {
      br.fidelity = fidelity(PureState::normalized(std::move(out)), target);
      ok = ok && br.fidelity >= 1.0 - fidelity_tol;
    }
    report.branches.push_back(br);
  }
  report.ok = ok && std::abs(report.probability_sum - 1.0) < 1e-9;
  return report;
}

LoccProtocol one_round_protocol(const std::vector<ProductOperator>& povm, double tol) {
  if (povm.empty()) throw InvalidArgument("POVM is empty");
  const int n = povm.front().size();
  for (const auto& m : povm) {
    if (m.size() != n) throw DimensionMismatch("POVM elements act on different numbers of parties");
  }
  auto unitary_up_to_scale = [&](int party) {
    for (const auto& m : povm) {
      if (!scaled_unitary(m[party], tol)) return false;
    }
    return true;
  };
  std::vector<bool> scaled(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) scaled[static_cast<std::size_t>(i)] = unitary_up_to_scale(i);
  int acting = -1;
  for (int p = 0; p < n && acting < 0; ++p) {
    bool others = true;
    for (int j = 0; j < n; ++j) others = others && (j == p || scaled[static_cast<std::size_t>(j)]);
    if (others) acting = p;
  }
  if (acting < 0) {
    throw InvalidArgument("one_round_protocol: more than one party performs a non-unitary operation");
  }
  LoccProtocol protocol;
  protocol.acting_qubits = {acting};
  for (const auto& m : povm) {
    double c = 1.0;
    std::vector<Gate> corr;
    for (int j = 0; j < n; ++j) {
      if (j == acting) continue;
      const auto [cj, vj] = *scaled_unitary(m[j], tol);
      c *= cj;
      corr.push_back(local_gate(j, vj));
    }
    protocol.kraus.push_back(c * m[acting]);
    protocol.corrections.push_back(std::move(corr));
  }
  return protocol;
}

Synthesis synthesize_reach_protocol_4q(const ProductOperator& h, const quad::GabcdParams& params) {
  const auto reach = quad::is_reachable(h, params);
  if (!reach.holds) throw InvalidArgument("synthesize_reach_protocol_4q: target is not reachable");
  const auto group = quad::symmetry_group(params);
  const int p = reach.witness->party;

  Synthesis out;
  out.acting_party = p;
  out.h = h;
  const ProductOperator H = positive_part(h);
  if (reach.witness->axis) {
    // Averaging over {1, sigma_w^(x)4} projects H^p onto span{1, sigma_w} and
    // leaves the axis-w factors alone.
    const Axis w = *reach.witness->axis;
    const Mat2 sw = gates::pauli(w);
    const Mat2 q = 0.5 * (H[p] + sw * H[p] * sw);
    const Complex tr = q.trace();
    Eigen::SelfAdjointEigenSolver<Mat2> es(q / tr.real());
    const Mat2 root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    out.clause = "axis";
    out.g = h.with_factor(p, root);
    out.symmetries = {group[0], group[static_cast<std::size_t>(w) + 1]};
    out.weights = {0.5, 0.5};
  } else {
    out.clause = "identity";
    out.g = ProductOperator::identity(4);
    out.symmetries = group;
    out.weights = {0.25, 0.25, 0.25, 0.25};
  }
  const ProductOperator G = positive_part(out.g);
  const Mat lhs = sandwiched_sum(H, out.symmetries, out.weights);
  out.r = (lhs.trace() / G.full().trace()).real();
  const SepCheck sep = verify_sep(SepInstance{G, H, out.symmetries, out.weights, out.r});
  out.sep_residual = sep.residual;
  if (!sep.ok) {
    throw NumericalFailure("synthesize_reach_protocol_4q: SEP residual " + std::to_string(sep.residual));
  }

  const PureState seed = quad::seed_state(params);
  out.source = apply_normalized(out.g, seed);
  out.target = apply_normalized(h, seed);
  out.povm = build_povm(h, out.g, out.symmetries, out.weights, out.r);
  out.protocol = one_round_protocol(out.povm);
  out.report = verify_protocol(out.protocol, out.source, out.target);
  if (!out.report.ok) throw NumericalFailure("synthesize_reach_protocol_4q: protocol fails verification");

  const auto src_class = quad::classify_factor(out.g[p]);
  const auto dst_class = quad::classify_factor(h[p]);
  if (src_class.tag == dst_class.tag && src_class.components == dst_class.components) {
    throw NumericalFailure("synthesize_reach_protocol_4q: source and target factors coincide");
  }
  if (lu_equivalent(out.source, out.target)) {
    throw NumericalFailure("synthesize_reach_protocol_4q: source is LU-equivalent to the target");
  }
  return out;
}

ProductOperator ghz_symmetry(Complex z1, Complex z2, bool flip) {
  if (z1 == 0.0 || z2 == 0.0) throw InvalidArgument("ghz_symmetry: arguments must be nonzero");
  ProductOperator s({gates::p_z(z1), gates::p_z(z2), gates::p_z(1.0 / (z1 * z2))});
  if (flip) s = s * ProductOperator::uniform(3, gates::pauli(Axis::X));
  const PureState ghz = tri::ghz_state();
  if (fidelity(apply_normalized(s, ghz), ghz) < 1.0 - 1e-12) {
    throw NumericalFailure("ghz_symmetry: operator does not fix |GHZ>");
  }
  return s;
}

}  // namespace fewbody::sep
