#include <ghopt/ivf.hpp>
#include <ghopt/lasso.hpp>
#include <ghopt/problems.hpp>

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

using namespace ghopt;

namespace
{

Execution mode(const benchmark::State &state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

LassoDataset synthetic(std::size_t n, std::size_t l)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 5), w(0, 1);
    std::vector<LassoSample> samples;
    samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Interval> x;
        for (std::size_t i = 0; i < l; ++i) {
            const double a = u(rng);
            x.emplace_back(a, a + w(rng));
        }
        const double y = u(rng);
        samples.push_back({IntervalVector(std::move(x)), Interval(y, y + w(rng))});
    }
    return LassoDataset(std::move(samples));
}

const Interval tuning(0.03, 0.06);

void BM_CheckSubgradient(benchmark::State &state)
{
    auto ds = std::make_shared<const LassoDataset>(problems::interval_lasso_data());
    const Ivf e = make_error_ivf(ds, TuningParameter(tuning));
    const std::vector<double> beta{5.4, 8.4};
    const auto g = analytic_subgradient(*ds, beta, TuningParameter(tuning));
    const auto samples = random_samples(Box{{-20, -20}, {20, 20}}, 20000, 1);
    for (auto _ : state) {
        auto report = check_subgradient(e, beta, g, samples, {1e-7, mode(state)});
        benchmark::DoNotOptimize(report);
    }
    state.SetItemsProcessed(state.iterations() * samples.size());
}
BENCHMARK(BM_CheckSubgradient)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_CheckConvexity(benchmark::State &state)
{
    auto ds = std::make_shared<const LassoDataset>(problems::interval_lasso_data());
    const Ivf e = make_error_ivf(ds, TuningParameter(tuning));
    const Box box{{-20, -20}, {20, 20}};
    for (auto _ : state) {
        auto r = check_convexity(e, box, 20000, 2, {1e-9, mode(state)});
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_CheckConvexity)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_SquaredError(benchmark::State &state)
{
    const LassoDataset ds = synthetic(1 << 20, 4);
    const std::vector<double> beta{0.7, -1.2, 2.5, 0.1};
    const Reduction reduction = state.range(0) == 0 ? Reduction::sequential : Reduction::pairwise_parallel;
    for (auto _ : state) {
        benchmark::DoNotOptimize(error_e1(ds, beta, reduction));
    }
    state.SetItemsProcessed(state.iterations() * ds.sample_count());
}
BENCHMARK(BM_SquaredError)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_FitGrid(benchmark::State &state)
{
    const LassoDataset ds = problems::interval_lasso_data();
    std::vector<SolverConfig> configs;
    for (double w : {0.0, 0.3, 0.6, 1.0}) {
        for (std::vector<double> init : {std::vector<double>{11, 2}, std::vector<double>{6, 25}}) {
            SolverConfig cfg;
            cfg.w = w;
            cfg.max_iter = 2000;
            cfg.x0 = init;
            cfg.schedule = StepSchedule::shifted(7, 100000);
            configs.push_back(cfg);
        }
    }
    for (auto _ : state) {
        auto fits = fit_grid(ds, TuningParameter(tuning), configs, mode(state));
        benchmark::DoNotOptimize(fits);
    }
}
BENCHMARK(BM_FitGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
