#include <benchmark/benchmark.h>

#include <random>

#include "normgraph/geometry.hpp"
#include "normgraph/graph.hpp"
#include "normgraph/graph_io.hpp"
#include "normgraph/search.hpp"

using namespace normgraph;

namespace {

const NormGraph& gamma4_q7() {
    static NormGraph g = NormGraph::build(7, 1, 4);
    return g;
}

void BM_FieldMul(benchmark::State& state) {
    FieldCtx F(7, 1, 4);
    std::mt19937_64 rng(1);
    std::vector<FieldElement> elems;
    for (int i = 0; i < 256; ++i) elems.push_back(F.element(rng() % F.big_order()));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.mul(elems[i % 256], elems[(i + 1) % 256]));
        ++i;
    }
}
BENCHMARK(BM_FieldMul);

void BM_Norm(benchmark::State& state) {
    FieldCtx F(7, 1, 4);
    std::mt19937_64 rng(2);
    std::vector<FieldElement> elems;
    for (int i = 0; i < 256; ++i) elems.push_back(F.element(rng() % F.big_order()));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.norm(elems[i++ % 256]));
    }
}
BENCHMARK(BM_Norm);

void BM_GraphBuild(benchmark::State& state) {
    const uint32_t p = uint32_t(state.range(0));
    const uint32_t t = uint32_t(state.range(1));
    for (auto _ : state) {
        NormGraph g = NormGraph::build(p, 1, t);
        benchmark::DoNotOptimize(g.order());
    }
}
BENCHMARK(BM_GraphBuild)->Args({3, 3})->Args({5, 3})->Args({7, 4})->Unit(benchmark::kMillisecond);

void BM_CommonNeighborhood(benchmark::State& state) {
    const NormGraph& g = gamma4_q7();
    std::mt19937_64 rng(3);
    const uint32_t k = uint32_t(state.range(0));
    std::vector<uint32_t> s(k);
    for (auto _ : state) {
        for (uint32_t i = 0; i < k; ++i) s[i] = uint32_t(rng() % g.order());
        benchmark::DoNotOptimize(g.common_neighborhood(s));
    }
}
BENCHMARK(BM_CommonNeighborhood)->Arg(2)->Arg(3)->Arg(5);

void BM_ThresholdSearch(benchmark::State& state) {
    NormGraph g = NormGraph::build(5, 1, 3);
    SearchSpec spec;
    spec.c = 3;
    spec.threshold = 3; // the t = 3 freeness bound
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_common_nbhd(g, spec).value);
    }
}
BENCHMARK(BM_ThresholdSearch)->Unit(benchmark::kMillisecond);

void BM_ExactSearch(benchmark::State& state) {
    NormGraph g = NormGraph::build(3, 1, 3);
    SearchSpec spec;
    spec.c = 3;
    spec.exact = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_common_nbhd(g.adjacency(), spec).value);
    }
}
BENCHMARK(BM_ExactSearch);

void BM_PerpInvolution(benchmark::State& state) {
    FieldCtx F(3, 1, 4);
    std::mt19937_64 rng(4);
    const uint32_t namb = ambient_size(F);
    std::vector<ProjVector> pts;
    for (int i = 0; i < 3; ++i) {
        ProjVector v(namb);
        for (uint32_t j = 0; j < namb; ++j) v[j] = F.element(rng() % F.big_order());
        pts.push_back(std::move(v));
    }
    ProjSubspace sub = span(F, pts);
    for (auto _ : state) {
        benchmark::DoNotOptimize(perp(F, perp(F, sub)).rank());
    }
}
BENCHMARK(BM_PerpInvolution)->Unit(benchmark::kMicrosecond);

void BM_Graph6Encode(benchmark::State& state) {
    const NormGraph& g = gamma4_q7();
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_graph6(g.adjacency()).size());
    }
}
BENCHMARK(BM_Graph6Encode)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
