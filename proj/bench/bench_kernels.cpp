// Serial reference kernels against their OpenMP builds on identical inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "paradv/adversary.hpp"
#include "paradv/combinatorics.hpp"
#include "paradv/kernels.hpp"
#include "paradv/simulator.hpp"

using namespace paradv;

namespace {

struct NormCase {
  AdversaryMatrix gamma;
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> subsets;
};

const NormCase& norm_case() {
  static const NormCase c = [] {
    NormCase nc{counting_adversary(build_counting_instance(3, 3, Rational(1, 3))), {}, {}};
    nc.masks = nc.gamma.masks();
    for (const auto& t : index_subsets(8, 2)) nc.subsets.push_back(t.mask());
    return nc;
  }();
  return c;
}

struct DegreeCase {
  std::vector<kernels::Edge> edges;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint64_t> subsets;
};

const DegreeCase& degree_case() {
  static const DegreeCase c = [] {
    DegreeCase dc;
    const auto r = enumerate_relation(build_counting_instance(4, 2, Rational(1, 1)));
    for (auto [i, j] : r.pairs)
      dc.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), r.X[i].mask(), r.Y[j].mask()});
    dc.rows = r.X.size();
    dc.cols = r.Y.size();
    for (const auto& t : index_subsets(16, 2)) dc.subsets.push_back(t.mask());
    return dc;
  }();
  return c;
}

std::vector<Complex> random_vector(std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Complex> v(dim);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

template <auto Fn>
void filtered_norms(benchmark::State& state) {
  const auto& c = norm_case();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(c.gamma.gamma, c.masks, c.subsets));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.subsets.size()));
}

template <auto Fn>
void degree_sweep(benchmark::State& state) {
  const auto& c = degree_case();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(c.edges, c.rows, c.cols, c.subsets));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.subsets.size()));
}

template <auto Fn>
void parallel_oracle(benchmark::State& state) {
  const RegisterLayout layout{static_cast<unsigned>(state.range(0)), 2, 4};
  const auto in = random_vector(layout.dim());
  std::vector<Complex> out(layout.dim());
  for (auto _ : state) {
    Fn(layout, 0x5A5A, in, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(layout.dim()));
}

template <auto Fn>
void dense_apply(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const auto u = random_unitary(dim, rng);
  const auto in = random_vector(dim);
  std::vector<Complex> out(dim);
  for (auto _ : state) {
    Fn(u, in, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim * dim));
}

}  // namespace

BENCHMARK(filtered_norms<kernels::serial::filtered_norms>)->Name("filtered_norms/serial")->UseRealTime();
BENCHMARK(filtered_norms<kernels::omp::filtered_norms>)->Name("filtered_norms/omp")->UseRealTime();
BENCHMARK(degree_sweep<kernels::serial::filtered_degree_sweep>)->Name("degree_sweep/serial")->UseRealTime();
BENCHMARK(degree_sweep<kernels::omp::filtered_degree_sweep>)->Name("degree_sweep/omp")->UseRealTime();
BENCHMARK(parallel_oracle<kernels::serial::parallel_oracle>)->Name("parallel_oracle/serial")->Arg(4)->Arg(6)->UseRealTime();
BENCHMARK(parallel_oracle<kernels::omp::parallel_oracle>)->Name("parallel_oracle/omp")->Arg(4)->Arg(6)->UseRealTime();
BENCHMARK(dense_apply<kernels::serial::dense_apply>)->Name("dense_apply/serial")->Arg(128)->Arg(512)->UseRealTime();
BENCHMARK(dense_apply<kernels::omp::dense_apply>)->Name("dense_apply/omp")->Arg(128)->Arg(512)->UseRealTime();

BENCHMARK_MAIN();
