#include <benchmark/benchmark.h>

#include <random>

#include "sharpcsp/distinguish.h"
#include "sharpcsp/expression.h"
#include "sharpcsp/gadget.h"
#include "sharpcsp/intertwiners.h"
#include "sharpcsp/partition.h"

namespace {

using namespace sharpcsp;

ConstraintFunction random_function(std::mt19937_64& rng, int q, int arity) {
  std::uniform_int_distribution<int> value(0, 3);
  std::vector<Scalar> e(checked_power(q, arity));
  for (auto& x : e) x = Scalar(value(rng));
  return ConstraintFunction(q, arity, std::move(e));
}

// Cycle of binary constraints on n variables.
Instance cycle(int n, int labels) {
  std::vector<Constraint> cs;
  for (int v = 0; v < n; ++v) cs.push_back({0, {v, (v + 1) % n}});
  std::vector<int> l;
  for (int v = 0; v < labels; ++v) l.push_back(v);
  return Instance(n, std::move(cs), std::move(l));
}

void BM_PartitionFunction(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int q = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const FunctionSet f(q, {random_function(rng, q, 2)});
  const Instance k = cycle(n, 0);
  for (auto _ : state) benchmark::DoNotOptimize(partition_function(f, k));
  state.SetComplexityN(n);
}
BENCHMARK(BM_PartitionFunction)->ArgsProduct({{2, 3}, {4, 6, 8}});

void BM_SignatureMatrix(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int q = static_cast<int>(state.range(0));
  const FunctionSet f(q, {random_function(rng, q, 2)});
  const Gadget g = csp_to_grid(f, cycle(static_cast<int>(state.range(1)), 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(signature_matrix(g));
}
BENCHMARK(BM_SignatureMatrix)->ArgsProduct({{2, 3}, {4, 6}});

void BM_Decompose(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const FunctionSet f(2, {random_function(rng, 2, 2)});
  const Gadget g = csp_to_grid(f, cycle(static_cast<int>(state.range(0)), 3), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g));
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(8)->Arg(12);

void BM_DistinguishNonIsomorphic(benchmark::State& state) {
  const FunctionSet eq(2, {ConstraintFunction(2, 2, {Scalar(1), Scalar(0), Scalar(0), Scalar(1)})});
  const FunctionSet diag(2, {ConstraintFunction(2, 2, {Scalar(1), Scalar(0), Scalar(0), Scalar(2)})});
  for (auto _ : state) benchmark::DoNotOptimize(distinguish(eq, diag));
}
BENCHMARK(BM_DistinguishNonIsomorphic);

void BM_IntertwinerBasis(benchmark::State& state) {
  const PermutationGroup g = PermutationGroup::symmetric(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(intertwiner_basis(g, k, 1));
}
BENCHMARK(BM_IntertwinerBasis)->ArgsProduct({{3, 4}, {1, 2, 3}});

}  // namespace
BENCHMARK_MAIN();
