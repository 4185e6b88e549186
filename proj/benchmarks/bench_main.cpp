#include <benchmark/benchmark.h>

#include "upcert/cli/corpus.hpp"
#include "upcert/decide.hpp"
#include "upcert/parse.hpp"
#include "upcert/roots.hpp"
#include "upcert/structure.hpp"

using namespace upcert;

namespace {

const char* kSextic = "1/6 z^6 - 186/53 z^5 + 1565/53 z^4 - 6630/53 z^3 + 28967/106 z^2 - 14460/53 z + 1";
const char* kWide = "1/3078 z^11 (z-1)^7 (162 z + i sqrt(1463) - 101) + 1";

void BM_IsolateRoots(benchmark::State& state) {
  const Poly p = parse_poly(kSextic).derivative();
  for (auto _ : state) benchmark::DoNotOptimize(isolate_roots(p, Rational(1, 1000000)));
}
BENCHMARK(BM_IsolateRoots)->Unit(benchmark::kMillisecond);

void BM_Structure(benchmark::State& state, const char* src) {
  const Poly p = parse_poly(src);
  for (auto _ : state) benchmark::DoNotOptimize(build_structure(p));
}
BENCHMARK_CAPTURE(BM_Structure, sextic, kSextic)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Structure, degree19, kWide)->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state, const char* src) {
  const Poly p = parse_poly(src);
  const StructureReport r = build_structure(p);
  const Query q{FieldKind::Complex, FunctionClass::Meromorphic};
  for (auto _ : state) benchmark::DoNotOptimize(decide(p, r, q));
}
BENCHMARK_CAPTURE(BM_Decide, sextic, kSextic)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, degree19, kWide)->Unit(benchmark::kMillisecond);

void BM_Corpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_corpus("", 1));
}
BENCHMARK(BM_Corpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
