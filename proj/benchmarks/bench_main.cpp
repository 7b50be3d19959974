#include "trisum/arith.hpp"
#include "trisum/delta.hpp"
#include "trisum/experiment.hpp"
#include "trisum/expsums.hpp"
#include "trisum/sieve.hpp"
#include "trisum/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace trisum;

static void BM_Sieve(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(arith::D3Table::build(std::uint64_t(st.range(0))));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Sieve)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_D3Pointwise(benchmark::State& st) {
    std::uint64_t n = 1000003;
    for (auto _ : st) benchmark::DoNotOptimize(arith::d3_pointwise(n++));
}
BENCHMARK(BM_D3Pointwise);

static void BM_Kloosterman(benchmark::State& st) {
    const auto q = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(expsums::kloosterman(3, 5, q));
}
BENCHMARK(BM_Kloosterman)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_KloostermanRow(benchmark::State& st) {
    const auto q = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(expsums::kloosterman_row(3, q));
}
BENCHMARK(BM_KloostermanRow)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_GaussClosed(benchmark::State& st) {
    const QuadraticForm f{2, 3, 1};
    std::int64_t m = 0;
    for (auto _ : st) benchmark::DoNotOptimize(expsums::gauss_sum_closed(f, m++ % 97, 5, 3, 97));
}
BENCHMARK(BM_GaussClosed);

static void BM_GaussBrute(benchmark::State& st) {
    const QuadraticForm f{2, 3, 1};
    for (auto _ : st) benchmark::DoNotOptimize(expsums::gauss_sum_brute(f, 4, 5, 3, st.range(0)));
}
BENCHMARK(BM_GaussBrute)->Arg(97)->Arg(499);

static void BM_GTransform(benchmark::State& st) {
    const auto h = standard_bump(1, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(osc::G_transform(0, 10.0, osc::divisor_params(), h, osc::Variant::G).value);
}
BENCHMARK(BM_GTransform)->Unit(benchmark::kMillisecond);

static void BM_HTable(benchmark::State& st) {
    const auto h = standard_bump(1, 2);
    for (auto _ : st) benchmark::DoNotOptimize(osc::HTable(h, 0.01, 1e4).H0(1.0));
}
BENCHMARK(BM_HTable)->Unit(benchmark::kMillisecond);

static void BM_DeltaEval(benchmark::State& st) {
    const auto s = delta::build_scheme(st.range(0));
    std::vector<std::int64_t> ns;
    for (std::int64_t n = -100; n <= 100; ++n) ns.push_back(n);
    for (auto _ : st) benchmark::DoNotOptimize(delta::delta_eval_many(s, ns));
}
BENCHMARK(BM_DeltaEval)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_MainTerm(benchmark::State& st) {
    const auto s = experiment::make_setup({1, 1, 0}, st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(experiment::compute_S_main(s).value);
}
BENCHMARK(BM_MainTerm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
