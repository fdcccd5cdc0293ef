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

// Input files and one command line per subcommand, for the command-line
// tests and the determinism criterion.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "fewbody/gates.hpp"
#include "fewbody/json_io.hpp"
#include "fewbody/protocols.hpp"
#include "fewbody/quad.hpp"
#include "fewbody/tri.hpp"
#include "instances.hpp"

namespace cli_fixtures {

using namespace fewbody;
using json::Json;

inline const char* kParams = "2,0+1i,0.5,1+1i";

inline quad::GabcdParams params() { return quad::GabcdParams{{2, 0}, {0, 1}, {0.5, 0}, {1, 1}}; }

/// Off-axis target used throughout: sqrt(1/2 + 0.2 sigma_x - 0.1 sigma_y + 0.15 sigma_z).
/// All three components are nonzero, so the twirl weights are unique.
inline Mat2 off_axis_factor() { return instances::bloch_root(0.2, -0.1, 0.15); }

class Workspace {
 public:
  Workspace() {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("fewbody_fixtures_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(dir_);
    write_all();
  }
  ~Workspace() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const Json& j) const { json::write_file(path(name), j); }
  void write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  /// One representative command line for every subcommand.
  std::vector<std::vector<std::string>> all_commands() const {
    return {
        {"majorize", "--y", "1,0", "--x", "0.5,0.5"},
        {"nielsen", "--psi", "0.5,0.3,0.2", "--phi", "0.6,0.2,0.2"},
        {"classify3", "--preset", "w"},
        {"stdform3", "--state", path("ghz_like.json")},
        {"mes3-check", "--state", path("w_x0.json")},
        {"mes3-gen", "--a", "0.6", "--beta", "0.4", "--betaprime", "1.1"},
        {"mes4-check", "--params", kParams, "--operator", path("id4.json"), "--mode", "status"},
        {"seed4", "--params", kParams},
        {"sep-verify", "--instance", path("twirl_instance.json")},
        {"sep-solve", "--instance", path("twirl_instance.json")},
        {"povm-build", "--instance", path("twirl_instance.json")},
        {"convert-verify", "--povm", path("twirl_povm.json"), "--source", path("seed.json"), "--target",
         path("target.json")},
        {"synth4q", "--params", kParams, "--operator", path("h_identity_clause.json")},
        {"rep-build"},
        {"rep-sim", "--alphas", "0.3,1.1,-0.7", "--seed", "11"},
        {"rep-verify", "--alpha4", "0", "--alpha5", "0", "--alpha6", "0"},
        {"mixed-prep", "--ensemble", path("ensemble3.json"), "--seed", "5"},
    };
  }

 private:
  void write_all() const {
    const auto p = params();
    const ProductOperator id4 = ProductOperator::identity(4);
    write("id4.json", json::to_json(id4));
    const ProductOperator h = id4.with_factor(0, off_axis_factor());
    write("h_identity_clause.json", json::to_json(h));

    std::vector<ProductOperator> syms = quad::symmetry_group(p);
    Json sym_json = Json::array();
    for (const auto& s : syms) sym_json.push_back(json::to_json(s));
    write("twirl_instance.json", Json{{"g", json::to_json(id4)},
                                      {"h", json::to_json(h)},
                                      {"symmetries", sym_json},
                                      {"weights", {0.25, 0.25, 0.25, 0.25}},
                                      {"r", (sep::positive_part(h)[0].trace().real()) / 2.0}});
    const auto povm = sep::build_povm(h, id4, syms, {0.25, 0.25, 0.25, 0.25},
                                      sep::positive_part(h)[0].trace().real() / 2.0);
    Json elements = Json::array();
    for (const auto& m : povm) elements.push_back(json::to_json(m));
    write("twirl_povm.json", Json{{"elements", elements}});
    write("seed.json", json::to_json(quad::seed_state(p)));
    write("target.json", json::to_json(apply_normalized(h, quad::seed_state(p))));

    const ProductOperator lift({gates::rot_y(0.3), gates::exp_pauli(Axis::X, 0.7), gates::phase(0.2)});
    write("ghz_like.json", json::to_json(apply_normalized(lift, tri::ghz_form_state({1.3, 0.4}, {0.1, 0.2, 0.3}))));
    write("w_x0.json", json::to_json(tri::w_form_state(0.5, 0.5, 0.5, 0.5)));

    write("ensemble3.json",
          Json{{"entries",
                {Json{{"weight", 0.25}, {"alphas", {0.3, 1.1, -0.7}}},
                 Json{{"weight", 0.75}, {"alphas", {0.0, 0.5, 0.2}}, {"post_lu", json::to_json(lift)}}}}});
    write_text("malformed.json", "{\"factors\": [[[1, 0], [0");
  }

  std::filesystem::path dir_;
};

}  // namespace cli_fixtures
