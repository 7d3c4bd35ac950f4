#include "conicfib/census.hpp"
#include "conicfib/family.hpp"
#include "conicfib/localdens.hpp"
#include "conicfib/qlocal.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace conicfib;

namespace {

void BM_HilbertSymbolOdd(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<std::pair<Int, Int>> args;
    for (int i = 0; i < 4096; ++i) {
        Int a = 0, b = 0;
        while (!a) a = static_cast<Int>(rng() % 20001) - 10000;
        while (!b) b = static_cast<Int>(rng() % 20001) - 10000;
        args.emplace_back(a, b);
    }
    PlaceRef v = PlaceRef::odd(101);
    std::size_t i = 0;
    for (auto _ : state) {
        auto [a, b] = args[i++ & 4095];
        benchmark::DoNotOptimize(hilbert_symbol(a, b, v));
    }
}
BENCHMARK(BM_HilbertSymbolOdd);

void BM_EverywhereLocallySoluble(benchmark::State& state) {
    auto fam = builtin_family("planar");
    SpfSieve sieve(500);
    std::mt19937_64 rng(2);
    std::vector<std::vector<Int>> fibres;
    for (int i = 0; i < 4096; ++i) {
        std::vector<Int> t(3);
        for (auto& x : t)
            do { x = static_cast<Int>(rng() % 1001) - 500; } while (!x);
        fibres.push_back(t);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(everywhere_locally_soluble(fam, fibres[i++ & 4095], &sieve));
    }
}
BENCHMARK(BM_EverywhereLocallySoluble);

void BM_LambdaP(benchmark::State& state) {
    auto rd = build_residue_data(builtin_family("redei"));
    auto elems = enumerate_bmsub(rd);
    auto primes = primes_up_to(2000);
    std::size_t i = 1;  // skip 2
    for (auto _ : state) {
        if (++i >= primes.size()) i = 1;
        benchmark::DoNotOptimize(lambda_p(rd, elems[0], primes[i], LambdaMode::full));
    }
}
BENCHMARK(BM_LambdaP);

void BM_CensusPlanar(benchmark::State& state) {
    CensusRequest req;
    req.family = builtin_family("planar");
    req.mode = FamilyMode::affine;
    req.bound = state.range(0);
    req.threads = 1;
    req.primes_bound = 200;
    for (auto _ : state) {
        benchmark::DoNotOptimize(count(req).total);
    }
    state.SetItemsProcessed(state.iterations() * (2 * req.bound + 1) * (2 * req.bound + 1) *
                            (2 * req.bound + 1));
}
BENCHMARK(BM_CensusPlanar)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_RedeiCount(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(redei_count(state.range(0), 1, 200).total);
    }
}
BENCHMARK(BM_RedeiCount)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
