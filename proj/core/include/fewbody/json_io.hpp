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

// JSON encodings. Complex numbers are [re, im] pairs; matrices are arrays of
// rows; a product operator is {"factors": [m_1, ..., m_n]}; a state is
// {"n": n, "amps": [...]}.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fewbody/qcore.hpp"

namespace fewbody::json {

using Json = nlohmann::ordered_json;

/// Parses "a+bi", "a-bi", "bi", "a" or "i"-forms. Throws InvalidArgument.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

Json to_json(Complex z);
Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const Mat2& m);
Json to_json(const ProductOperator& op);
Json to_json(const PureState& s);
Json to_json(const DensityMatrix& rho);

Complex complex_from(const Json& j);
Vec vec_from(const Json& j);
Mat mat_from(const Json& j);
Mat2 mat2_from(const Json& j);
/// Accepts {"factors": [...]} or a bare array of 2x2 matrices.
ProductOperator product_from(const Json& j);
/// Accepts {"n", "amps"} (or the aliases "num_qubits", "amplitudes") or a
/// bare amplitude array; normalizes.
PureState state_from(const Json& j);

/// Reads a file; throws InvalidArgument if it is missing or malformed.
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace fewbody::json
