#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "eufui/conditional.hpp"
#include "eufui/euf_check.hpp"
#include "eufui/parser.hpp"
#include "eufui/preprocess.hpp"
#include "eufui/printer.hpp"
#include "eufui/tableaux.hpp"

namespace {

using namespace eufui;

const char* const kFiles[] = {"shared_argument.smt", "mixed_heads.smt", "four_applications.smt",
                              "conditional_chain.smt", "path_family_n4.smt"};

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(EUFUI_BENCH_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// g(z1,e0)=z0, g(z2,e0)=e1, f_i(e_i,e_i)=e_{i+1}, p(e_{n+1})=z3
std::string doubling_chain(int n) {
  std::ostringstream s;
  s << "(declare-sort U 0)\n(declare-fun g (U U) U)\n(declare-fun p (U) U)\n";
  for (int i = 1; i <= n; ++i) s << "(declare-fun f" << i << " (U U) U)\n";
  for (int i = 0; i <= n + 1; ++i) s << "(declare-const e" << i << " U)\n";
  for (int i = 0; i <= 3; ++i) s << "(declare-const z" << i << " U)\n";
  s << "(eliminate";
  for (int i = 0; i <= n + 1; ++i) s << " e" << i;
  s << ")\n(assert (= (g z1 e0) z0))\n(assert (= (g z2 e0) e1))\n";
  for (int i = 1; i <= n; ++i) s << "(assert (= (f" << i << " e" << i << " e" << i << ") e" << i + 1 << "))\n";
  s << "(assert (= (p e" << n + 1 << ") z3))\n";
  return s.str();
}

void BM_Parse(benchmark::State& state) {
  const std::string text = read_file(kFiles[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(parse_problem(text));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Parse)->DenseRange(0, 4);

void BM_Tableaux(benchmark::State& state) {
  const std::string text = read_file(kFiles[state.range(0)]);
  for (auto _ : state) {
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    benchmark::DoNotOptimize(run_tableaux(*p.table, pre));
  }
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Tableaux)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Conditional(benchmark::State& state) {
  const std::string text = read_file(kFiles[state.range(0)]);
  for (auto _ : state) {
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    benchmark::DoNotOptimize(conditional_ui(*p.table, pre));
  }
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Conditional)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_TableauxParallel(benchmark::State& state) {
  const std::string text = read_file("four_applications.smt");
  TableauxOptions options;
  options.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    benchmark::DoNotOptimize(run_tableaux(*p.table, pre, options));
  }
}
BENCHMARK(BM_TableauxParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_DoublingChainConditional(benchmark::State& state) {
  const std::string text = doubling_chain(static_cast<int>(state.range(0)));
  std::size_t size = 0;
  for (auto _ : state) {
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    const ConditionalResult r = conditional_ui(*p.table, pre);
    size = token_count(print_formula(*p.table, r.ui, PrintMode::Compressed));
  }
  state.counters["compressed_tokens"] = static_cast<double>(size);
}
BENCHMARK(BM_DoublingChainConditional)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_DoublingChainTableaux(benchmark::State& state) {
  const std::string text = doubling_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Problem p = parse_problem(text);
    const PreprocessedInput pre = flatten(p);
    benchmark::DoNotOptimize(run_tableaux(*p.table, pre));
  }
}
BENCHMARK(BM_DoublingChainTableaux)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_CrossCheck(benchmark::State& state) {
  const std::string text = read_file("four_applications.smt");
  Problem p = parse_problem(text);
  const PreprocessedInput pre = flatten(p);
  const Formula a = run_tableaux(*p.table, pre).ui.to_formula();
  const Formula b = conditional_ui(*p.table, pre).ui;
  for (auto _ : state) benchmark::DoNotOptimize(euf_equiv(*p.table, a, b));
}
BENCHMARK(BM_CrossCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
