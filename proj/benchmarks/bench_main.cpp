#include <benchmark/benchmark.h>

#include <sstream>

#include "asmlc/compiler.hpp"
#include "asmlc/cosim.hpp"
#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/normalize.hpp"
#include "corpus.hpp"

using namespace asmlc;

namespace {

Machine chain_machine(int m) {
  std::ostringstream src;
  src << "machine chain" << m << ";\nsort Nat = 0.." << m + 1 << ";\n";
  src << "static one : Nat = 1;\nstatic add : Nat * Nat -> Nat = builtin add;\n";
  for (int j = 0; j < m; ++j) src << "static c" << j << " : Nat = " << j << ";\n";
  src << "dynamic output x : Nat;\ndynamic y : Nat;\ninit x = c0;\ninit y = c0;\nprogram\n";
  for (int j = 0; j < m; ++j) {
    src << "  if eq_Nat(x, c" << j << ") then par { x := add(x, one); y := c" << j << " } else\n";
  }
  src << "  halt;\n";
  return parse_machine(src.str());
}

void BM_EuclidRun(benchmark::State& state) {
  Machine m = testing::load_example("euclid.asm");
  State s0 = initial_state(m, testing::euclid_inputs(55, 34));
  for (auto _ : state) benchmark::DoNotOptimize(run(m, s0, 1000));
}
BENCHMARK(BM_EuclidRun);

void BM_CompileEuclid(benchmark::State& state) {
  Machine m = testing::load_example("euclid.asm");
  for (auto _ : state) benchmark::DoNotOptimize(compiler::compile(m));
}
BENCHMARK(BM_CompileEuclid);

// One round of K + L leftmost reductions of the compiled Euclid term.
void BM_EuclidRound(benchmark::State& state) {
  Machine m = testing::load_example("euclid.asm");
  auto cm = compiler::compile(m);
  auto t = compiler::start_term(cm, initial_state(m, testing::euclid_inputs(55, 34)));
  const auto budget = static_cast<std::uint64_t>(cm.K() + cm.L());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda::reduce_leftmost_f(t, cm.sig, budget, lambda::TraceMode::CountsOnly));
  }
  state.counters["steps"] = static_cast<double>(budget);
}
BENCHMARK(BM_EuclidRound);

void BM_EuclidLockstep(benchmark::State& state) {
  auto cm = compiler::compile(testing::load_example("euclid.asm"));
  for (auto _ : state) benchmark::DoNotOptimize(cosim::lockstep(cm, testing::euclid_inputs(55, 34)));
}
BENCHMARK(BM_EuclidLockstep);

void BM_DoublingLockstep(benchmark::State& state) {
  auto cm = compiler::compile(testing::load_example("doubling.asm"));
  for (auto _ : state) benchmark::DoNotOptimize(cosim::lockstep(cm, {}));
}
BENCHMARK(BM_DoublingLockstep);

// Compile plus lockstep for if/else chains of growing length.
void BM_ChainLockstep(benchmark::State& state) {
  Machine m = chain_machine(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto cm = compiler::compile(m);
    benchmark::DoNotOptimize(cosim::lockstep(cm, {}, 64));
    state.counters["K"] = cm.K();
    state.counters["L"] = cm.L();
  }
}
BENCHMARK(BM_ChainLockstep)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state) {
  Machine m = chain_machine(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(m.program));
}
BENCHMARK(BM_Normalize)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
