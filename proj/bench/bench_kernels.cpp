// Serial reference kernels against the OpenMP kernels, plus end-to-end fit
// and leave-one-out timings. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "logreg/classify.hpp"
#include "logreg/fit.hpp"
#include "logreg/kernels.hpp"
#include "logreg/model.hpp"

namespace {

constexpr std::size_t kFeatures = 8;

struct Problem {
    logreg::Matrix x;
    std::vector<double> y;
    std::vector<double> beta;
};

Problem make_problem(std::size_t n, std::size_t k = kFeatures, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    const std::size_t p = k + 1;
    std::vector<double> beta(p);
    for (auto& b : beta) b = 0.5 * normal(rng);
    std::vector<double> design(n * p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            design[i * p + j] = j == 0 ? 1.0 : normal(rng);
            s += design[i * p + j] * beta[j];
        }
        y[i] = unit(rng) < logreg::logistic(s) ? 1.0 : 0.0;
    }
    return Problem{logreg::Matrix(n, p, std::move(design)), std::move(y), std::move(beta)};
}

template <auto Kernel>
void bm_newton_terms(benchmark::State& state) {
    const Problem pr = make_problem(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto terms = Kernel(pr.x, pr.y, pr.beta);
        benchmark::DoNotOptimize(terms);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void bm_log_likelihood(benchmark::State& state) {
    const Problem pr = make_problem(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        double ll = Kernel(pr.x, pr.y, pr.beta);
        benchmark::DoNotOptimize(ll);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void bm_gradient(benchmark::State& state) {
    const Problem pr = make_problem(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(pr.beta.size());
    for (auto _ : state) {
        Kernel(pr.x, pr.y, pr.beta, out);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

logreg::Dataset make_dataset(std::size_t n, std::size_t k) {
    Problem pr = make_problem(n, k, 7);
    return logreg::Dataset(std::move(pr.x), logreg::Vector(std::move(pr.y)), {});
}

void bm_fit(benchmark::State& state) {
    const logreg::Dataset d = make_dataset(static_cast<std::size_t>(state.range(0)), kFeatures);
    for (auto _ : state) {
        auto fit = logreg::fit_irls(d);
        benchmark::DoNotOptimize(fit);
    }
}

void bm_loocv(benchmark::State& state) {
    const logreg::Dataset d = make_dataset(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        auto report = logreg::loocv(d);
        benchmark::DoNotOptimize(report);
    }
}

}  // namespace

BENCHMARK(bm_newton_terms<logreg::kernels::serial::newton_terms>)
    ->Name("newton_terms/serial")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_newton_terms<logreg::kernels::newton_terms>)
    ->Name("newton_terms/parallel")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_log_likelihood<logreg::kernels::serial::log_likelihood>)
    ->Name("log_likelihood/serial")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_log_likelihood<logreg::kernels::log_likelihood>)
    ->Name("log_likelihood/parallel")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_gradient<logreg::kernels::serial::gradient>)
    ->Name("gradient/serial")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_gradient<logreg::kernels::gradient>)
    ->Name("gradient/parallel")
    ->RangeMultiplier(10)
    ->Range(1000, 1000000);
BENCHMARK(bm_fit)->Name("fit_irls")->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_loocv)->Name("loocv")->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
