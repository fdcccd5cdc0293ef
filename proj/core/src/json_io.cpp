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

#include "fewbody/json_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fewbody::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidArgument("json: " + what); }

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  double v = 0.0;
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  std::istringstream in(buf);
  in >> v;
  if (in.fail() || !in.eof()) throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
  return v;
}

double number(const Json& j) {
  if (!j.is_number()) bad("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidArgument("cannot parse an empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty()) return {0.0, 1.0};
    return {0.0, parse_real(s, text)};
  }
  const std::string re = s.substr(0, split);
  const std::string im = s.substr(split);
  if (re.empty()) throw InvalidArgument("cannot parse complex number '" + std::string(text) + "'");
  return {parse_real(re, text), parse_real(im, text)};
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return out.str();
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Mat2& m) { return to_json(Mat(m)); }

Json to_json(const ProductOperator& op) {
  Json factors = Json::array();
  for (const auto& f : op.factors()) factors.push_back(to_json(f));
  return Json{{"factors", std::move(factors)}};
}

Json to_json(const PureState& s) {
  return Json{{"n", s.num_qubits()}, {"amps", to_json(s.amplitudes())}};
}

Json to_json(const DensityMatrix& rho) { return Json{{"dim", rho.dim()}, {"matrix", to_json(rho.matrix())}}; }

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) bad("expected a [re, im] pair, got " + j.dump());
  return {number(j[0]), number(j[1])};
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of complex numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
  return v;
}

Mat mat_from(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from(j[r][c]);
    }
  }
  return m;
}

Mat2 mat2_from(const Json& j) {
  const Mat m = mat_from(j);
  if (m.rows() != 2 || m.cols() != 2) bad("expected a 2x2 matrix");
  return m;
}

ProductOperator product_from(const Json& j) {
  const Json& factors = j.is_object() ? j.at("factors") : j;
  if (!factors.is_array() || factors.empty()) bad("expected a non-empty list of factors");
  std::vector<Mat2> out;
  for (const auto& f : factors) out.push_back(mat2_from(f));
  return ProductOperator(std::move(out));
}

PureState state_from(const Json& j) {
  // The long key names are accepted as aliases.
  auto key = [&](const char* short_name, const char* long_name) -> const Json* {
    if (j.contains(short_name)) return &j.at(short_name);
    if (j.contains(long_name)) return &j.at(long_name);
    return nullptr;
  };
  const Json* amps = &j;
  const Json* n = nullptr;
  if (j.is_object()) {
    amps = key("amps", "amplitudes");
    n = key("n", "num_qubits");
    if (amps == nullptr) throw InvalidArgument("json: state object needs \"amps\"");
  }
  Vec v = vec_from(*amps);
  const int qubits = qubits_for_dim(static_cast<std::size_t>(v.size()));
  if (n != nullptr && (!n->is_number_integer() || n->get<int>() != qubits)) {
    throw DimensionMismatch("json: n does not match the amplitude count");
  }
  return PureState::normalized(std::move(v));
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace fewbody::json
