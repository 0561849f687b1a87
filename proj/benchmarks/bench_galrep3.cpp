#include <benchmark/benchmark.h>

#include "galrep3/catalog.hpp"
#include "galrep3/fq.hpp"
#include "galrep3/report.hpp"
#include "galrep3/sieves.hpp"

using namespace galrep3;

namespace {

const std::string kDataDir = GALREP3_DATA_DIR;

const EigenTable& s2_table() {
    static EigenTable t = parse_table_file(kDataDir + "/s2.tbl");
    return t;
}

}  // namespace

// Full reducibility sieve over the weight-2 table with the standard probe pair.
static void BM_ReducibilitySieve(benchmark::State& state) {
    const EigenTable& t = s2_table();
    auto p1 = find_probe(t, 128, {1, 127});
    auto p2 = find_probe(t, 1, {0});
    p2->allowed_signs = {+1, -1};
    p2->group_id = p1->group_id;
    std::vector<Probe> probes{*p1, *p2};
    for (auto _ : state) {
        SieveReport rep = reducibility_sieve(t, probes);
        benchmark::DoNotOptimize(rep.candidates.size());
    }
}
BENCHMARK(BM_ReducibilitySieve);

// Root finding for random monic sextics in a degree-6 extension field.
static void BM_PolyRootsF13e6(benchmark::State& state) {
    const FqField* F = FqField::get(13, 6);
    u64 seed = 0x243f6a8885a308d3ull;
    auto rnd = [&]() {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return seed >> 33;
    };
    for (auto _ : state) {
        std::vector<FqElem> cs;
        for (int i = 0; i < 6; ++i)
            cs.push_back(F->make({rnd() % 13, rnd() % 13, rnd() % 13, rnd() % 13, rnd() % 13,
                                  rnd() % 13}));
        cs.push_back(F->one());
        auto roots = poly_roots(FqPoly::from_coeffs(F, cs));
        benchmark::DoNotOptimize(roots.size());
    }
}
BENCHMARK(BM_PolyRootsF13e6);

// Breadth-first closure of the order-216 normalizer of the extraspecial
// 3-group over F_19.
static void BM_GroupClosure216(benchmark::State& state) {
    const FqField* F = FqField::get(19, 1);
    ProjMatrix S = ProjMatrix::from_ints(F, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    ProjMatrix T = ProjMatrix::from_ints(F, {1, 0, 0, 0, 7, 0, 0, 0, 11});
    ProjMatrix V = ProjMatrix::from_ints(F, {1, 1, 1, 1, 7, 11, 1, 11, 7});
    ProjMatrix D = ProjMatrix::from_ints(F, {1, 0, 0, 0, 1, 0, 0, 0, 7});
    for (auto _ : state) {
        ClosureResult cl = group_closure({S, T, V, D});
        benchmark::DoNotOptimize(cl.elements.size());
    }
}
BENCHMARK(BM_GroupClosure216);

// Exhaustive unitariness check at a small prime.
static void BM_Lemma83Exhaustive(benchmark::State& state) {
    for (auto _ : state) {
        Lemma83Report rep = lemma83_verify(7);
        benchmark::DoNotOptimize(rep.irreducible_count);
    }
}
BENCHMARK(BM_Lemma83Exhaustive);

// End-to-end analysis of the weight-2 table up to a modest cutoff.
static void BM_AnalyzeS2(benchmark::State& state) {
    const EigenTable& t = s2_table();
    AnalysisOptions opts;
    opts.lmax = 60;
    opts.lemma_sample_size = 100;
    for (auto _ : state) {
        AnalysisReport rep = analyze(t, opts);
        benchmark::DoNotOptimize(rep.verdicts.size());
    }
}
BENCHMARK(BM_AnalyzeS2);

BENCHMARK_MAIN();
