#include "nfs/dataset.hpp"
#include "nfs/kernels.hpp"
#include "nfs/training.hpp"

#include <benchmark/benchmark.h>

#include <map>

namespace {

struct Fixture {
    nfs::Dataset data;
    nfs::RuleBase tsk;
    nfs::RuleBase ma;
};

const Fixture& fixture(int grid_n) {
    static std::map<int, Fixture> cache;
    auto it = cache.find(grid_n);
    if (it == cache.end()) {
        auto d = nfs::four_gausses(10, 2, grid_n);
        nfs::TrainConfig cfg;
        cfg.n_rules = 8;
        auto tsk = nfs::initialize(d, cfg);
        cfg.kind = nfs::SystemKind::Mamdani;
        auto ma = nfs::initialize(d, cfg);
        it = cache.emplace(grid_n, Fixture{std::move(d), std::move(tsk), std::move(ma)}).first;
    }
    return it->second;
}

template <auto Kernel>
void run(benchmark::State& state, bool mamdani) {
    const auto& f = fixture(static_cast<int>(state.range(0)));
    const auto& rb = mamdani ? f.ma : f.tsk;
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(rb, f.data));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.data.size()));
    state.counters["threads"] = nfs::parallel::thread_count();
}

void BM_PredictSerial(benchmark::State& s) { run<nfs::serial::predict>(s, false); }
void BM_PredictParallel(benchmark::State& s) { run<nfs::parallel::predict>(s, false); }
void BM_GradientSerial(benchmark::State& s) { run<nfs::serial::mse_gradient>(s, true); }
void BM_GradientParallel(benchmark::State& s) { run<nfs::parallel::mse_gradient>(s, true); }
void BM_DesignSerial(benchmark::State& s) { run<nfs::serial::consequence_design>(s, false); }
void BM_DesignParallel(benchmark::State& s) { run<nfs::parallel::consequence_design>(s, false); }

}  // namespace

BENCHMARK(BM_PredictSerial)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_PredictParallel)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_GradientSerial)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_GradientParallel)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_DesignSerial)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_DesignParallel)->Arg(21)->Arg(101)->Arg(301);

BENCHMARK_MAIN();
