#include <benchmark/benchmark.h>

#include "verdoorn/core_stats.hpp"
#include "verdoorn/estimators.hpp"
#include "verdoorn/synth.hpp"

using namespace verdoorn;

namespace {

synth::DgpConfig panel_config(std::size_t entities) {
    synth::DgpConfig c;
    c.n_entities = entities;
    c.n_intervals = 4;
    c.coefficients = {0.0, 0.7, 0.05, -0.05, 0.2};
    c.sigma_entity = 0.05;
    c.effects = synth::EffectKind::random;
    return c;
}

const std::vector<Variable> kAugmented{Variable::q, Variable::cq, Variable::fq, Variable::conc};

}  // namespace

static void BM_OlsFit(benchmark::State& state) {
    const auto n = state.range(0);
    synth::Rng rng(1);
    Eigen::MatrixXd X(n, 5);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        X(r, 0) = 1.0;
        for (int c = 1; c < 5; ++c) X(r, c) = rng.normal();
        y(r) = rng.normal();
    }
    const DesignMatrix design{X, true};
    for (auto _ : state) benchmark::DoNotOptimize(ols_fit(design, y));
}
BENCHMARK(BM_OlsFit)->Arg(20)->Arg(200)->Arg(2000);

static void BM_EstimateGls(benchmark::State& state) {
    const auto data = synth::generate(panel_config(static_cast<std::size_t>(state.range(0))));
    const auto slice = select_group(data.planted, Group::by_sector("synthetic"));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_gls(slice, kAugmented, Variable::p));
}
BENCHMARK(BM_EstimateGls)->Arg(5)->Arg(50)->Arg(500);

static void BM_MonteCarloReplication(benchmark::State& state) {
    const auto config = panel_config(50);
    const ModelSpec spec{Equation::verdoorn, EstimatorKind::gls, Group::by_sector("synthetic")};
    for (auto _ : state) benchmark::DoNotOptimize(synth::monte_carlo(config, spec, 1));
}
BENCHMARK(BM_MonteCarloReplication);
BENCHMARK_MAIN();
