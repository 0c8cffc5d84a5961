#include <cmath>
#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "lspred/learner.hpp"
#include "lspred/metrics.hpp"

using namespace lspred;

namespace {

// Uniform random contacts among `nodes` nodes over [0, 2000].
LinkStream random_stream(std::size_t nodes, std::size_t links, double end = 2000) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> node(0, nodes - 1);
    std::uniform_real_distribution<double> time(0, end);
    std::vector<LinkStream::LabeledLink> out;
    while (out.size() < links) {
        const auto u = node(rng);
        const auto v = node(rng);
        if (u != v) out.push_back({std::floor(time(rng)), std::to_string(u), std::to_string(v)});
    }
    return LinkStream::from_labeled(out, Interval(0, end));
}

void BM_ScoreAll(benchmark::State& state) {
    const auto s = random_stream(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const auto metrics = default_metrics();
    const auto pairs = candidate_pairs(s);
    for (auto _ : state) benchmark::DoNotOptimize(score_all(s, metrics, pairs));
    state.counters["pairs"] = static_cast<double>(pairs.size());
}
BENCHMARK(BM_ScoreAll)->Args({50, 2000})->Args({100, 10000})->Unit(benchmark::kMillisecond);

void BM_ObjectiveEvaluation(benchmark::State& state) {
    const auto s = random_stream(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const auto l1 = slice(s, Interval(0, 1000));
    const auto l2 = slice(s, Interval(1000, 2000));
    const TrainingProblem problem(l1, l2, default_metrics());
    const std::vector<double> alphas(problem.metrics().size(), 0.5);
    const auto w = problem.weights(alphas);
    for (auto _ : state) benchmark::DoNotOptimize(problem.f_score(w));
}
BENCHMARK(BM_ObjectiveEvaluation)->Args({50, 2000})->Args({100, 10000})->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
