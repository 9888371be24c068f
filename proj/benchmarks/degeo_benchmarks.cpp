// Copyright 2026 The degeo Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "degeo/inversion.hpp"
#include "degeo/regions.hpp"
#include "degeo/system.hpp"

namespace {

using degeo::Vector;

void BM_LiftOneBody(benchmark::State& state) {
  const auto m = static_cast<int>(state.range(0));
  const auto basis = degeo::make_basis(m, m / 2);
  const auto h = degeo::laplacian(degeo::named_graph(m == 12 ? "cuboctahedron" : "cube"));
  for (auto _ : state) benchmark::DoNotOptimize(degeo::lift_one_body(h, basis).H.data());
  state.SetLabel("L=" + std::to_string(basis->size()));
}
BENCHMARK(BM_LiftOneBody)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EigSym(benchmark::State& state) {
  const auto L = state.range(0);
  degeo::Matrix a = degeo::Matrix::Random(L, L);
  a = (a + a.transpose()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(degeo::eig_sym(a).eigenvalues.data());
}
BENCHMARK(BM_EigSym)->Arg(6)->Arg(66)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_MembershipInD(benchmark::State& state) {
  const degeo::System sys({degeo::named_graph("cuboctahedron"), 2});
  const auto dc = sys.classify(Vector::Zero(12)).dc;
  for (auto _ : state) benchmark::DoNotOptimize(degeo::membership_in_D(dc, dc.central).residual);
}
BENCHMARK(BM_MembershipInD)->Unit(benchmark::kMillisecond);

void BM_InvertDensity(benchmark::State& state) {
  const degeo::System sys({degeo::named_graph("square"), 2});
  const Vector target{{0.4, 0.7, 0.55, 0.35}};
  for (auto _ : state) benchmark::DoNotOptimize(degeo::invert_density(sys, target).residual);
}
BENCHMARK(BM_InvertDensity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
