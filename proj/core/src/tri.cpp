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

#include "fewbody/tri.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fewbody/gates.hpp"

namespace fewbody::tri {

namespace {

void require_three(const PureState& s) {
  if (s.num_qubits() != 3) throw DimensionMismatch("three-qubit operation on a " +
                                                   std::to_string(s.num_qubits()) + "-qubit state");
}

// Slices T_0, T_1 of the amplitude tensor along `party`; rows and columns are
// the two remaining parties in increasing order.
std::array<Mat2, 2> slices(const PureState& s, int party) {
  const int rows[] = {party};
  const Mat m = matricize(s, rows);
  std::array<Mat2, 2> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out[static_cast<std::size_t>(i)](j, k) = m(i, 2 * j + k);
  }
  return out;
}

struct Pencil {
  Complex a;  // det T0
  Complex b;  // cross term
  Complex c;  // det T1
};

// det(mu T0 + nu T1) = a mu^2 + b mu nu + c nu^2.
Pencil pencil(const std::array<Mat2, 2>& t) {
  const Mat2& t0 = t[0];
  const Mat2& t1 = t[1];
  return Pencil{t0.determinant(),
                t0(0, 0) * t1(1, 1) + t0(1, 1) * t1(0, 0) - t0(0, 1) * t1(1, 0) - t0(1, 0) * t1(0, 1),
                t1.determinant()};
}

Mat2 diag2(Complex a, Complex b) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double min_schmidt(const PureState& s, int party) {
  const int rows[] = {party};
  Eigen::JacobiSVD<Mat> svd(matricize(s, rows));
  return svd.singularValues()[1];
}

}  // namespace

std::string_view slocc_name(SloccClass3 c) {
  switch (c) {
    case SloccClass3::GhzClass: return "GhzClass";
    case SloccClass3::WClass: return "WClass";
    case SloccClass3::Biseparable: return "Biseparable";
    case SloccClass3::FullyProduct: return "FullyProduct";
  }
  return "?";
}

PureState ghz_state() {
  Vec v = Vec::Zero(8);
  v[0] = v[7] = 1.0 / std::numbers::sqrt2;
  return PureState::normalized(std::move(v));
}

PureState w_state() {
  Vec v = Vec::Zero(8);
  v[1] = v[2] = v[4] = 1.0 / std::sqrt(3.0);
  return PureState::normalized(std::move(v));
}

Complex hyperdeterminant(const PureState& state) {
  require_three(state);
  auto t = [&](int i, int j, int k) { return state[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
  const Complex sq = t(0, 0, 0) * t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 1) +
                     t(0, 0, 1) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 0) +
                     t(0, 1, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 0, 1) +
                     t(1, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(0, 1, 1);
  const Complex pairs = t(0, 0, 0) * t(1, 1, 1) * t(0, 1, 1) * t(1, 0, 0) +
                        t(0, 0, 0) * t(1, 1, 1) * t(1, 0, 1) * t(0, 1, 0) +
                        t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 0) * t(0, 0, 1) +
                        t(0, 1, 1) * t(1, 0, 0) * t(1, 0, 1) * t(0, 1, 0) +
                        t(0, 1, 1) * t(1, 0, 0) * t(1, 1, 0) * t(0, 0, 1) +
                        t(1, 0, 1) * t(0, 1, 0) * t(1, 1, 0) * t(0, 0, 1);
  const Complex quads = t(0, 0, 0) * t(1, 1, 0) * t(1, 0, 1) * t(0, 1, 1) +
                        t(1, 1, 1) * t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0);
  return sq - 2.0 * pairs + 4.0 * quads;
}

SloccCertificate classify_slocc3(const PureState& state) {
  require_three(state);
  SloccCertificate cert;
  cert.hyperdeterminant = hyperdeterminant(state);
  int rank_one = 0;
  for (int p = 0; p < 3; ++p) {
    cert.min_schmidt[static_cast<std::size_t>(p)] = min_schmidt(state, p);
    cert.ranks[static_cast<std::size_t>(p)] = cert.min_schmidt[static_cast<std::size_t>(p)] > kRankCutoff ? 2 : 1;
    if (cert.ranks[static_cast<std::size_t>(p)] == 1) {
      ++rank_one;
      if (!cert.separated_party) cert.separated_party = p;
    }
  }
  if (std::abs(cert.hyperdeterminant) > kHyperdetThreshold && rank_one == 0) {
    cert.tag = SloccClass3::GhzClass;
    cert.separated_party.reset();
  } else if (rank_one == 0) {
    cert.tag = SloccClass3::WClass;
  } else if (rank_one == 1) {
    cert.tag = SloccClass3::Biseparable;
  } else {
    cert.tag = SloccClass3::FullyProduct;
    cert.separated_party.reset();
  }
  return cert;
}

Mat2 g_x(double gamma) {
  if (!(std::abs(gamma) < 0.5)) throw InvalidArgument("g_x requires |gamma| < 1/2");
  const double up = std::sqrt(0.5 + gamma);
  const double down = std::sqrt(0.5 - gamma);
  return 0.5 * (up + down) * Mat2::Identity() + 0.5 * (up - down) * gates::pauli(Axis::X);
}

PureState ghz_form_state(Complex z, const std::array<double, 3>& gamma) {
  ProductOperator g({g_x(gamma[0]) * gates::p_z(z), g_x(gamma[1]), g_x(gamma[2])});
  return apply_normalized(g, ghz_state());
}

GhzStandardForm ghz_standard_form(const PureState& state) {
  const auto cert = classify_slocc3(state);
  if (cert.tag != SloccClass3::GhzClass) {
    throw InvalidArgument("ghz_standard_form: state is not in the GHZ class");
  }
  if (std::abs(cert.hyperdeterminant) <= kHyperdetBorderline) {
    throw NumericalFailure("ghz_standard_form: hyperdeterminant " +
                           std::to_string(std::abs(cert.hyperdeterminant)) + " is numerically borderline");
  }

  // The two product terms come from the two rank-one members of the slice
  // pencil mu T0 + nu T1.
  const auto t = slices(state, 0);
  const Pencil pc = pencil(t);
  const Complex disc = std::sqrt(pc.b * pc.b - 4.0 * pc.a * pc.c);
  const Complex sign = std::real(std::conj(pc.b) * disc) >= 0.0 ? 1.0 : -1.0;
  const Complex q = -0.5 * (pc.b + sign * disc);
  // With q a root of x^2 + b x + ac, (q : a) and (c : q) solve the pencil
  // without dividing by a possibly vanishing coefficient.
  const std::array<std::pair<Complex, Complex>, 2> roots = {{{q, pc.a}, {pc.c, q}}};

  std::array<Vec2, 2> bvec;
  std::array<Vec2, 2> cvec;
  Eigen::Matrix<Complex, 4, 2> basis;
  for (int m = 0; m < 2; ++m) {
    const auto [mu, nu] = roots[static_cast<std::size_t>(m)];
    const Mat2 rank_one = mu * t[0] + nu * t[1];
    Eigen::JacobiSVD<Mat2> svd(rank_one, Eigen::ComputeFullU | Eigen::ComputeFullV);
    bvec[static_cast<std::size_t>(m)] = svd.matrixU().col(0);
    cvec[static_cast<std::size_t>(m)] = svd.matrixV().col(0).conjugate();
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        basis(2 * j + k, m) = bvec[static_cast<std::size_t>(m)][j] * cvec[static_cast<std::size_t>(m)][k];
  }
  Eigen::Matrix<Complex, 4, 2> rhs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) rhs(2 * j + k, i) = t[static_cast<std::size_t>(i)](j, k);
  const Mat2 alpha = basis.colPivHouseholderQr().solve(rhs);  // alpha(m, i)

  // state ~ (g^1 (x) g^2 (x) g^3)|GHZ> with column m of g^i = term m on party i.
  std::array<Mat2, 3> g;
  g[0] << alpha(0, 0), alpha(1, 0), alpha(0, 1), alpha(1, 1);
  g[1] << bvec[0][0], bvec[1][0], bvec[0][1], bvec[1][1];
  g[2] << cvec[0][0], cvec[1][0], cvec[0][1], cvec[1][1];

  // Right-multiplying by D_i = diag(sqrt w_i, 1/sqrt w_i) equalizes the
  // diagonal of g^dag g and makes its off-diagonal real non-negative; the
  // D's collapse onto |GHZ> as P_z with z = 1 / prod sqrt(w_i).
  GhzStandardForm form;
  std::vector<Mat2> us(3);
  Complex prod_sqrt_w = 1.0;
  for (int i = 0; i < 3; ++i) {
    const Mat2 gram = g[static_cast<std::size_t>(i)].adjoint() * g[static_cast<std::size_t>(i)];
    const double p = gram(0, 0).real();
    const double s = gram(1, 1).real();
    const Complex off = gram(0, 1);
    const Complex phase = std::abs(off) > 1e-14 * (p + s) ? off / std::abs(off) : Complex(1.0);
    const Complex sw = std::sqrt(std::sqrt(s / p) * phase);
    prod_sqrt_w *= sw;
    const Mat2 gp = g[static_cast<std::size_t>(i)] * diag2(sw, 1.0 / sw);
    Eigen::JacobiSVD<Mat2> svd(gp, Eigen::ComputeFullU | Eigen::ComputeFullV);
    us[static_cast<std::size_t>(i)] = svd.matrixU() * svd.matrixV().adjoint();
    const Mat2 pos = gp.adjoint() * gp;
    form.gamma[static_cast<std::size_t>(i)] = std::max(0.0, pos(0, 1).real() / pos.trace().real());
  }
  Complex z = 1.0 / prod_sqrt_w;

  // Canonical representative under z -> 1/z (sigma_x^{(x)3}) and z -> -z.
  const Mat2 sx = gates::pauli(Axis::X);
  auto flip = [&] {
    z = 1.0 / z;
    for (auto& u : us) u = u * sx;
  };
  if (std::abs(z) < 1.0) flip();
  const auto zero_it = std::min_element(form.gamma.begin(), form.gamma.end());
  constexpr double eps = 1e-12;
  if (*zero_it <= kParamTol) {
    // g_x^k is proportional to the identity, so the phase of z moves into a
    // local unitary on party k.
    const auto k = static_cast<std::size_t>(zero_it - form.gamma.begin());
    const Complex u = z / std::abs(z);
    us[k] = us[k] * diag2(u, 1.0 / u);
    z = std::abs(z);
    *zero_it = 0.0;
  } else if (std::abs(std::abs(z) - 1.0) <= kParamTol) {
    if (std::arg(z) < -eps) z = -z;
    if (std::arg(z) > std::numbers::pi / 2 + eps) {
      flip();
      z = -z;
    }
  } else {
    const double th = std::arg(z);
    if (th < -eps || th >= std::numbers::pi - eps) z = -z;
  }

  form.z = z;
  form.local_unitaries = ProductOperator(us);
  const PureState rebuilt = apply_normalized(form.local_unitaries, ghz_form_state(z, form.gamma));
  form.fidelity = fidelity(rebuilt, state);
  if (form.fidelity < 1.0 - kStateTol) {
    throw NumericalFailure("ghz_standard_form: reconstruction fidelity " + std::to_string(form.fidelity));
  }
  return form;
}

Mat2 WStandardForm::g1() const { return diag2(1.0, x1 / x3); }

Mat2 WStandardForm::g2() const {
  Mat2 m;
  m << x3, x0, 0.0, x2;
  return m;
}

PureState w_form_state(double x0, double x1, double x2, double x3) {
  Vec v = Vec::Zero(8);
  v[0] = x0;
  v[4] = x1;
  v[2] = x2;
  v[1] = x3;
  return PureState::normalized(std::move(v));
}

WStandardForm w_standard_form(const PureState& state) {
  const auto cert = classify_slocc3(state);
  if (cert.tag != SloccClass3::WClass) throw InvalidArgument("w_standard_form: state is not in the W class");

  // Each party's pencil has a double root; its covector picks out the local
  // |1> direction of the x-form.
  std::vector<Mat2> frames(3);
  for (int k = 0; k < 3; ++k) {
    const Pencil pc = pencil(slices(state, k));
    Vec2 f1(-pc.b, 2.0 * pc.a);
    Vec2 f2(2.0 * pc.c, -pc.b);
    const Vec2 f = f1.norm() >= f2.norm() ? f1 : f2;
    if (f.norm() < 1e-14) throw NumericalFailure("w_standard_form: degenerate slice pencil");
    const Vec2 e = f.conjugate() / f.norm();
    Mat2 u;
    u.col(0) << std::conj(e[1]), -std::conj(e[0]);
    u.col(1) = e;
    frames[static_cast<std::size_t>(k)] = u;
  }
  const ProductOperator frame(frames);
  Vec y = state.amplitudes();
  apply_product_inplace(y, 3, frame.adjoint());

  const Complex y0 = y[0];
  const std::array<Complex, 3> ys = {y[4], y[2], y[1]};
  const double chi = std::abs(y0) > 1e-14 ? -std::arg(y0) : 0.0;
  std::vector<Mat2> lus(3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double phi = -std::arg(ys[k]) - chi;
    lus[k] = frames[k] * diag2(1.0, std::polar(1.0, -phi));
  }

  WStandardForm form;
  form.x0 = std::abs(y0);
  form.x1 = std::abs(ys[0]);
  form.x2 = std::abs(ys[1]);
  form.x3 = std::abs(ys[2]);
  form.local_unitaries = ProductOperator(lus);
  const PureState rebuilt =
      apply_normalized(form.local_unitaries, w_form_state(form.x0, form.x1, form.x2, form.x3));
  form.fidelity = fidelity(rebuilt, state);
  if (form.fidelity < 1.0 - kStateTol) {
    throw NumericalFailure("w_standard_form: reconstruction fidelity " + std::to_string(form.fidelity));
  }
  return form;
}

Mes3Verdict in_mes3(const PureState& state, double param_tol) {
  Mes3Verdict v;
  v.slocc = classify_slocc3(state);
  if (v.slocc.tag == SloccClass3::GhzClass) {
    const auto form = ghz_standard_form(state);
    const bool all_nonzero =
        std::all_of(form.gamma.begin(), form.gamma.end(), [&](double g) { return g > param_tol; });
    const bool all_zero =
        std::all_of(form.gamma.begin(), form.gamma.end(), [&](double g) { return g <= param_tol; });
    const bool unit = std::abs(std::abs(form.z) - 1.0) <= param_tol;
    const bool z_ok = std::abs(form.z - Complex(1.0)) <= param_tol ||
                      std::abs(form.z - Complex(0.0, 1.0)) <= param_tol;
    if (all_zero && unit) {
      v.member = true;
      v.reason = "LU-equivalent to the GHZ state";
    } else if (!all_nonzero) {
      v.reason = "some g_x^i is proportional to the identity";
    } else if (!z_ok) {
      v.reason = "z is not in {1, i}";
    } else {
      v.member = true;
      v.reason = "z in {1, i} and every gamma_x^i is nonzero";
    }
    v.ghz = form;
  } else if (v.slocc.tag == SloccClass3::WClass) {
    const auto form = w_standard_form(state);
    v.member = form.x0 <= param_tol;
    v.reason = v.member ? "x0 = 0" : "x0 > 0";
    v.w = form;
  } else {
    throw InvalidArgument("in_mes3 requires a genuinely tripartite entangled state");
  }
  return v;
}

PureState mes3_state(const Mes3Params& params) {
  if (!(params.a > 0.0 && params.a <= 1.0)) throw InvalidArgument("mes3_state requires a in (0, 1]");
  Vec s = Vec::Zero(4);
  s[0] = params.a;
  s[3] = std::sqrt(std::max(0.0, 1.0 - params.a * params.a));
  Vec rotated = s;
  apply_local(rotated, 2, 0, gates::rot_y(params.beta_prime));
  apply_local(rotated, 2, 1, gates::rot_y(params.beta));
  Vec v(8);
  v.head(4) = s;
  v.tail(4) = rotated;
  return PureState::normalized(std::move(v));
}

}  // namespace fewbody::tri
