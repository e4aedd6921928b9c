#include <benchmark/benchmark.h>

#include "msox/fixtures.hpp"
#include "msox/model_check.hpp"
#include "msox/mso_type.hpp"
#include "msox/pumping.hpp"
#include "msox/reductions.hpp"
#include "msox/succinct.hpp"

using namespace msox;

namespace {

ModelCheckOptions wide_mc() {
    ModelCheckOptions o;
    o.max_n_first_order = 4096;
    return o;
}

const PumpTriple& union_triple() {
    static const PumpTriple t = [] {
        PumpFixture fx = loop_union_fixture();
        return make_idempotent(extract_pump(fx.tree, fx.phi, fx.m, {}, wide_mc()));
    }();
    return t;
}

void bm_summary_rank2(benchmark::State& state) {
    const Graph g = cycle_graph(6, single_arc_signature());
    for (auto _ : state) benchmark::DoNotOptimize(type_of(g, 2));
}
BENCHMARK(bm_summary_rank2)->Unit(benchmark::kMillisecond);

void bm_models_first_order(benchmark::State& state) {
    const Signature sig = single_arc_signature();
    std::vector<int> succ(24);
    for (int i = 0; i < 24; ++i) succ[i] = (i + 1) % 24;
    const Graph g = functional_graph(succ, sig);
    const FormulaPtr f = deterministic_formula();
    for (auto _ : state) benchmark::DoNotOptimize(models(g, f, wide_mc()));
}
BENCHMARK(bm_models_first_order)->Unit(benchmark::kMillisecond);

void bm_pump_compile(benchmark::State& state) {
    const PumpTriple& t = union_triple();
    const long long ell = 1ll << state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(pump_circuit(t, ell));
}
BENCHMARK(bm_pump_compile)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void bm_pump_decode(benchmark::State& state) {
    const SuccinctGraph sg = pump_circuit(union_triple(), 16);
    for (auto _ : state) benchmark::DoNotOptimize(decode(sg));
}
BENCHMARK(bm_pump_decode)->Unit(benchmark::kMillisecond);

void bm_glued_eval(benchmark::State& state) {
    const PumpTriple& t = union_triple();
    std::vector<Decomposition> pieces;
    pieces.push_back(t.s);
    for (int i = 0; i < 16; ++i) pieces.push_back(t.r);
    pieces.push_back(t.e);
    for (auto _ : state) benchmark::DoNotOptimize(eval_delta_blocks(pieces));
}
BENCHMARK(bm_glued_eval)->Unit(benchmark::kMillisecond);

void bm_encode_decode(benchmark::State& state) {
    const Graph g = cycle_graph(8, single_arc_signature());
    for (auto _ : state) benchmark::DoNotOptimize(decode(encode_explicit(g)));
}
BENCHMARK(bm_encode_decode)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
