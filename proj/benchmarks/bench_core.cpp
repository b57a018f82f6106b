#include "teig/bfgs.hpp"
#include "teig/generators.hpp"
#include "teig/rng.hpp"
#include "teig/sshopm.hpp"
#include "teig/variational.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_EvaluateForm(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const teig::SymmetricTensor a = teig::example1(n);
    teig::Rng rng(1);
    const Eigen::VectorXd x = teig::normalized_random_start(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(teig::evaluate_form(a, x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_EvaluateForm)->Arg(10)->Arg(20)->Arg(30);

void BM_Contract(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const teig::SymmetricTensor a = teig::example1(n);
    teig::Rng rng(2);
    const Eigen::VectorXd x = teig::normalized_random_start(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(teig::contract(a, x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_Contract)->Arg(10)->Arg(20)->Arg(30);

void BM_Symmetrize(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    teig::Rng rng(3);
    std::vector<double> raw(teig::dense_size(4, n));
    for (double& v : raw) v = rng.normal();
    const teig::SymmetricTensor t(4, n, raw, false);
    for (auto _ : state) benchmark::DoNotOptimize(teig::symmetrize(t));
}
BENCHMARK(BM_Symmetrize)->Arg(8)->Arg(16);

void BM_ValueAndGradient(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const teig::Objective obj(teig::Flavor::F1, 0.0, teig::example1(n),
                              teig::BOperator::identity_power(4, n));
    teig::Rng rng(4);
    const Eigen::VectorXd x = teig::normalized_random_start(n, rng);
    Eigen::VectorXd g(n);
    for (auto _ : state) benchmark::DoNotOptimize(obj.value_and_gradient(x, g));
}
BENCHMARK(BM_ValueAndGradient)->Arg(10)->Arg(30);

void BM_MinimizeSolve(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const teig::Objective obj(teig::Flavor::F1, 0.0, teig::example1(n),
                              teig::BOperator::identity_power(4, n));
    teig::Rng rng(5);
    const Eigen::VectorXd x0 = teig::normalized_random_start(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(teig::minimize(obj, x0));
}
BENCHMARK(BM_MinimizeSolve)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SshopmSolve(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const teig::SymmetricTensor a = teig::example1(n);
    teig::Rng rng(6);
    const Eigen::VectorXd x0 = teig::normalized_random_start(n, rng);
    teig::SshopmConfig cfg;
    cfg.alpha = -2.0;
    for (auto _ : state) benchmark::DoNotOptimize(teig::sshopm_run(a, x0, cfg));
}
BENCHMARK(BM_SshopmSolve)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
