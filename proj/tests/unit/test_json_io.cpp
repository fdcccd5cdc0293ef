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

#include <filesystem>
#include <fstream>

#include "fewbody/gates.hpp"
#include "fewbody/json_io.hpp"
#include "fewbody/random.hpp"

namespace fewbody::json {
namespace {

using namespace std::complex_literals;

TEST(ComplexText, Parses) {
  EXPECT_EQ(parse_complex("1+1i"), 1.0 + 1i);
  EXPECT_EQ(parse_complex("0+1i"), 1i);
  EXPECT_EQ(parse_complex("0.5"), Complex(0.5));
  EXPECT_EQ(parse_complex("-2.5i"), -2.5i);
  EXPECT_EQ(parse_complex("i"), 1i);
  EXPECT_EQ(parse_complex("-i"), -1i);
  EXPECT_EQ(parse_complex("3-i"), 3.0 - 1i);
  EXPECT_EQ(parse_complex("1e-3+2e2i"), Complex(1e-3, 2e2));
  EXPECT_EQ(parse_complex(" 2 "), Complex(2.0));
  for (const char* bad : {"", "abc", "1+", "1+2", "1i+2", "--1"}) {
    EXPECT_THROW(parse_complex(bad), InvalidArgument) << bad;
  }
}

TEST(ComplexText, FormatRoundTrips) {
  Rng rng(70);
  std::normal_distribution<double> n(0, 10);
  for (int t = 0; t < 200; ++t) {
    const Complex z(n(rng), n(rng));
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(Encoding, StateShape) {
  const PureState s = PureState::basis(2, 1);
  const Json j = to_json(s);
  EXPECT_EQ(j.at("n"), 2);
  ASSERT_EQ(j.at("amps").size(), 4U);
  EXPECT_EQ(j.at("amps")[1], Json::parse("[1.0, 0.0]"));
}

TEST(Encoding, OperatorShape) {
  const Json j = to_json(ProductOperator({gates::pauli(Axis::Y)}));
  EXPECT_EQ(j.at("factors")[0], Json::parse("[[[0.0, 0.0], [-0.0, -1.0]], [[0.0, 1.0], [0.0, 0.0]]]"));
}

TEST(Encoding, LosslessRoundTrip) {
  Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    const PureState s = sample::state(1 + t % 6, rng);
    const PureState back = state_from(Json::parse(to_json(s).dump()));
    EXPECT_LT((back.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
    const ProductOperator op = sample::local_invertibles(3, rng);
    const ProductOperator op2 = product_from(Json::parse(to_json(op).dump()));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(op2[k], op[k]);
  }
}

TEST(Decoding, AcceptedForms) {
  EXPECT_EQ(complex_from(Json::parse("[1, 2]")), 1.0 + 2i);
  EXPECT_EQ(complex_from(Json::parse("3")), Complex(3.0));
  EXPECT_EQ(complex_from(Json::parse("\"1-2i\"")), 1.0 - 2i);
  const PureState a = state_from(Json::parse(R"({"num_qubits": 1, "amplitudes": [[1, 0], [1, 0]]})"));
  EXPECT_NEAR(std::abs(a[0]), 1 / std::sqrt(2.0), 1e-15);
  const PureState b = state_from(Json::parse("[[0, 0], [0, 2]]"));
  EXPECT_EQ(b[1], Complex(0, 1));
  const ProductOperator bare = product_from(Json::parse("[[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]"));
  EXPECT_EQ(bare.size(), 1);
}

TEST(Decoding, Errors) {
  EXPECT_THROW(state_from(Json::parse(R"({"n": 2, "amps": [[1, 0], [0, 0]]})")), DimensionMismatch);
  EXPECT_THROW(state_from(Json::parse(R"({"n": 1})")), InvalidArgument);
  EXPECT_THROW(state_from(Json::parse("[[1, 0], [0, 0], [0, 0]]")), InvalidArgument);
  EXPECT_THROW(state_from(Json::parse("[[0, 0], [0, 0]]")), InvalidArgument);
  EXPECT_THROW(mat2_from(Json::parse("[[[1, 0]]]")), InvalidArgument);
  EXPECT_THROW(complex_from(Json::parse("[1, 2, 3]")), InvalidArgument);
  EXPECT_THROW(complex_from(Json::parse("null")), InvalidArgument);
}

TEST(Files, ReadWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "fewbody_json_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "s.json").string();
  const PureState s = PureState::plus(3);
  write_file(path, to_json(s));
  EXPECT_GE(fidelity(state_from(read_file(path)), s), 1 - 1e-15);
  std::ofstream((dir / "bad.json").string()) << "{\"n\": ";
  EXPECT_THROW(read_file((dir / "bad.json").string()), InvalidArgument);
  EXPECT_THROW(read_file((dir / "missing.json").string()), InvalidArgument);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fewbody::json
