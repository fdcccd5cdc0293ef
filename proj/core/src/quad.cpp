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

#include "fewbody/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fewbody/gates.hpp"

namespace fewbody::quad {

namespace {

constexpr std::array<char, 4> kNames = {'a', 'b', 'c', 'd'};

double scale_of(const std::array<Complex, 4>& s) {
  double m = 1.0;
  for (const auto& v : s) m = std::max(m, std::abs(v));
  return m;
}

bool same_multiset(const std::array<Complex, 4>& x, const std::array<Complex, 4>& y, double tol) {
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    bool ok = true;
    for (std::size_t k = 0; k < 4 && ok; ++k) ok = std::abs(x[k] - y[static_cast<std::size_t>(perm[k])]) <= tol;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void require_four(const ProductOperator& op) {
  if (op.size() != 4) {
    throw DimensionMismatch("expected a four-factor product operator, got " + std::to_string(op.size()));
  }
}

void require_generic(const GabcdParams& params) {
  const auto report = is_generic(params);
  if (!report.generic) throw InvalidArgument("parameters are not generic: " + report.violations.front());
}

std::array<FactorClass, 4> classify_all(const ProductOperator& op) {
  std::array<FactorClass, 4> out;
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = classify_factor(op[i]);
  return out;
}

constexpr std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};

std::size_t axis_index(Axis w) { return static_cast<std::size_t>(w); }

}  // namespace

std::array<Complex, 4> GabcdParams::squares() const { return {a * a, b * b, c * c, d * d}; }

PureState seed_state(const GabcdParams& p) {
  Vec v = Vec::Zero(16);
  v[0] = v[15] = (p.a + p.d) / 2.0;
  v[3] = v[12] = (p.a - p.d) / 2.0;
  v[5] = v[10] = (p.b + p.c) / 2.0;
  v[6] = v[9] = (p.b - p.c) / 2.0;
  if (v.norm() < kNormTol) throw InvalidArgument("seed_state: all parameters are zero");
  return PureState::normalized(std::move(v));
}

GenericityReport is_generic(const GabcdParams& params, double tol) {
  GenericityReport report;
  const auto s = params.squares();
  const double eps = tol * scale_of(s);
  auto name = [](std::size_t i) { return std::string(1, kNames[i]) + "^2"; };

  for (std::size_t i = 1; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (std::abs(s[i] - s[j]) <= eps) report.violations.push_back(name(i) + " = " + name(j));
    }
  }
  for (std::size_t j = 1; j < 4; ++j) {
    if (std::abs(s[0] - s[j]) <= eps) report.violations.push_back(name(0) + " = " + name(j));
  }
  // Any q with q S = S maps some nonzero s_i onto an s_j, so the ratios cover
  // every candidate.
  bool q_found = false;
  for (std::size_t i = 0; i < 4 && !q_found; ++i) {
    if (std::abs(s[i]) <= eps) continue;
    for (std::size_t j = 0; j < 4 && !q_found; ++j) {
      const Complex q = s[j] / s[i];
      if (std::abs(q - 1.0) <= tol) continue;
      std::array<Complex, 4> scaled;
      for (std::size_t k = 0; k < 4; ++k) scaled[k] = q * s[k];
      if (same_multiset(scaled, s, eps * std::max(1.0, std::abs(q)))) {
        q_found = true;
        report.violations.push_back("the squared parameters are invariant under scaling by q = " +
                                    std::to_string(q.real()) + (q.imag() < 0 ? "" : "+") +
                                    std::to_string(q.imag()) + "i");
      }
    }
  }
  report.generic = report.violations.empty();
  return report;
}

std::vector<ProductOperator> symmetry_group(const GabcdParams& params) {
  require_generic(params);
  const PureState seed = seed_state(params);
  std::vector<ProductOperator> group;
  group.push_back(ProductOperator::identity(4));
  for (Axis w : kAxes) group.push_back(ProductOperator::uniform(4, gates::pauli(w)));
  for (const auto& s : group) {
    if (fidelity(apply_normalized(s, seed), seed) < 1.0 - 1e-10) {
      throw NumericalFailure("symmetry_group: a Pauli string fails to fix the seed state");
    }
  }
  return group;
}

std::string_view factor_tag_name(FactorTag t) {
  switch (t) {
    case FactorTag::ProportionalIdentity: return "ProportionalIdentity";
    case FactorTag::Axis: return "Axis";
    case FactorTag::Generic: return "Generic";
  }
  return "?";
}

bool FactorClass::is_axis_or_identity(Axis w) const {
  return tag == FactorTag::ProportionalIdentity || (tag == FactorTag::Axis && axis == w);
}

FactorClass classify_factor(const Mat2& op) {
  const double scale = op.squaredNorm();
  if (!(scale > 0.0) || std::abs(op.determinant()) <= 1e-12 * scale) {
    throw InvalidArgument("classify_factor: operator is singular");
  }
  const Mat2 pos = op.adjoint() * op;
  const Mat2 p = pos / pos.trace().real();
  FactorClass fc;
  fc.components = {p(0, 1).real(), -p(0, 1).imag(), 0.5 * (p(0, 0) - p(1, 1)).real()};
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(fc.components[i]) > std::abs(fc.components[j]);
  });
  const double largest = std::abs(fc.components[order[0]]);
  const double second = std::abs(fc.components[order[1]]);
  if (largest < kAxisTol) {
    fc.tag = FactorTag::ProportionalIdentity;
  } else if (second < kAxisTol) {
    fc.tag = FactorTag::Axis;
    fc.axis = kAxes[order[0]];
    fc.gamma = fc.components[order[0]];
  } else {
    fc.tag = FactorTag::Generic;
    // Near-identity or near-axis within the looser bound.
    fc.borderline = second < kAxisBorderline;
  }
  return fc;
}

PredicateResult is_reachable(const ProductOperator& h, const GabcdParams& params) {
  require_four(h);
  require_generic(params);
  PredicateResult r;
  r.factors = classify_all(h);
  // The identity clause is the special case of the axis clause with every
  // gamma zero; report it first so its witness is the more specific one.
  for (int p = 0; p < 4 && !r.holds; ++p) {
    bool others = true;
    for (int j = 0; j < 4; ++j) {
      if (j != p) others = others && r.factors[static_cast<std::size_t>(j)].tag == FactorTag::ProportionalIdentity;
    }
    if (others && r.factors[static_cast<std::size_t>(p)].tag != FactorTag::ProportionalIdentity) {
      r.holds = true;
      r.witness = PredicateWitness{p, std::nullopt, "h^p (x) 1^(x)3 with h^p not proportional to 1"};
    }
  }
  for (int p = 0; p < 4 && !r.holds; ++p) {
    for (Axis w : kAxes) {
      bool others = true;
      for (int j = 0; j < 4; ++j) {
        if (j != p) others = others && r.factors[static_cast<std::size_t>(j)].is_axis_or_identity(w);
      }
      if (others && !r.factors[static_cast<std::size_t>(p)].is_axis_or_identity(w)) {
        r.holds = true;
        const std::string a(1, axis_name(w));
        r.witness = PredicateWitness{p, w, "h^p (x) h_" + a + "^(x)3 with h^p != h_" + a};
        break;
      }
    }
  }
  return r;
}

PredicateResult is_convertible(const ProductOperator& g, const GabcdParams& params) {
  require_four(g);
  require_generic(params);
  PredicateResult r;
  r.factors = classify_all(g);
  for (int p = 0; p < 4 && !r.holds; ++p) {
    for (Axis w : kAxes) {
      bool others = true;
      for (int j = 0; j < 4; ++j) {
        if (j != p) others = others && r.factors[static_cast<std::size_t>(j)].is_axis_or_identity(w);
      }
      if (others) {
        r.holds = true;
        r.witness = PredicateWitness{p, w, std::string("g^p (x) g_") + axis_name(w) + "^(x)3"};
        break;
      }
    }
  }
  return r;
}

std::string_view mes4_status_name(Mes4Status s) {
  switch (s) {
    case Mes4Status::ReachableNotInMes: return "ReachableNotInMes";
    case Mes4Status::IsolatedInMes: return "IsolatedInMes";
    case Mes4Status::NonIsolatedInMes: return "NonIsolatedInMes";
  }
  return "?";
}

Mes4Verdict mes4_status(const ProductOperator& g, const GabcdParams& params) {
  Mes4Verdict v;
  v.reachable = is_reachable(g, params);
  v.convertible = is_convertible(g, params);
  if (v.reachable.holds) {
    v.status = Mes4Status::ReachableNotInMes;
  } else if (v.convertible.holds) {
    v.status = Mes4Status::NonIsolatedInMes;
  } else {
    v.status = Mes4Status::IsolatedInMes;
  }
  return v;
}

StandardCertificate standard_certificate(const ProductOperator& g, const GabcdParams& params) {
  require_four(g);
  const auto group = symmetry_group(params);
  StandardCertificate cert;
  const auto s = params.squares();
  std::iota(cert.parameter_order.begin(), cert.parameter_order.end(), 0);
  std::stable_sort(cert.parameter_order.begin(), cert.parameter_order.end(), [&](int i, int j) {
    const Complex x = s[static_cast<std::size_t>(i)];
    const Complex y = s[static_cast<std::size_t>(j)];
    if (std::abs(std::abs(x) - std::abs(y)) > kGenericTol) return std::abs(x) < std::abs(y);
    return std::arg(x) < std::arg(y) - kGenericTol;
  });
  for (std::size_t k = 0; k < 4; ++k) cert.sorted_squares[k] = s[static_cast<std::size_t>(cert.parameter_order[k])];

  cert.g = g;
  cert.factors = classify_all(g);
  for (const auto& f : cert.factors) {
    if (f.tag != FactorTag::Axis) continue;
    if (f.gamma < 0.0) {
      // Conjugating by sigma_{w'} with w' != w flips the sign of the sigma_w part.
      const std::size_t w2 = (axis_index(f.axis) + 1) % 3;
      cert.symmetry_index = static_cast<int>(w2) + 1;
      cert.g = g * group[static_cast<std::size_t>(cert.symmetry_index)];
      cert.factors = classify_all(cert.g);
    }
    break;
  }
  return cert;
}

}  // namespace fewbody::quad
