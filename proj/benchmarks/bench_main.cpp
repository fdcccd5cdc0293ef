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

#include <benchmark/benchmark.h>

#include "fewbody/protocols.hpp"
#include "fewbody/qcore.hpp"
#include "fewbody/random.hpp"
#include "fewbody/rep.hpp"
#include "fewbody/tri.hpp"
#include "instances.hpp"

namespace {

using namespace fewbody;

void BM_BuildPhi3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rep::build_phi3());
}
BENCHMARK(BM_BuildPhi3);

void BM_RepVerify(benchmark::State& state) {
  const rep::RepTargetParams p{0.3, 1.1, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(rep::verify_rep_determinism(p));
}
BENCHMARK(BM_RepVerify);

void BM_GhzStandardForm(benchmark::State& state) {
  Rng rng(1);
  const PureState s = apply_normalized(sample::local_invertibles(3, rng), tri::ghz_state());
  for (auto _ : state) benchmark::DoNotOptimize(tri::ghz_standard_form(s));
}
BENCHMARK(BM_GhzStandardForm);

void BM_SepSolve(benchmark::State& state) {
  Rng rng(2);
  const auto in = instances::twirl_instance(rng);
  const ProductOperator G = sep::positive_part(in.g);
  const ProductOperator H = sep::positive_part(in.h);
  for (auto _ : state) benchmark::DoNotOptimize(sep::solve_sep_weights(G, H, in.symmetries));
}
BENCHMARK(BM_SepSolve);

void BM_LuEquivalent(benchmark::State& state) {
  Rng rng(3);
  const PureState a = sample::state(3, rng);
  const PureState b = apply_normalized(sample::local_unitaries(3, rng), a);
  for (auto _ : state) benchmark::DoNotOptimize(lu_equivalent(a, b));
}
BENCHMARK(BM_LuEquivalent);

}  // namespace

BENCHMARK_MAIN();
