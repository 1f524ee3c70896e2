#include <benchmark/benchmark.h>

#include "vecshap/game.hpp"
#include "vecshap/gaussian.hpp"
#include "vecshap/predictor.hpp"
#include "vecshap/random.hpp"
#include "vecshap/shapley.hpp"

using namespace vecshap;

namespace {

void BM_ShapleySubset(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const VectorGame v = random_game(rng, n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(shapley_subset(v));
    state.SetComplexityN(n);
}
BENCHMARK(BM_ShapleySubset)->Arg(10)->Arg(14)->Arg(18);

void BM_ShapleyPermutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const VectorGame v = random_game(rng, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(shapley_permutation(v));
}
BENCHMARK(BM_ShapleyPermutation)->Arg(6)->Arg(8)->Arg(9);

void BM_HarsanyiDividends(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    const VectorGame v = random_game(rng, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(harsanyi_dividends(v));
}
BENCHMARK(BM_HarsanyiDividends)->Arg(12)->Arg(16)->Arg(20);

void BM_MarginalSeminorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(4);
    const VectorGame v = random_game(rng, n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(marginal_seminorm(v));
}
BENCHMARK(BM_MarginalSeminorm)->Arg(10)->Arg(14)->Arg(18);

void BM_GaussianClosedForm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(5);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
    Eigen::MatrixXd b(n, 3);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) b(i, k) = rng.uniform(-1.0, 1.0);
    const LinearPredictor p(Eigen::VectorXd::Zero(3), b);
    const GaussianInput g(mu, random_spd(rng, n));
    for (auto _ : state) benchmark::DoNotOptimize(shap_linear_correlated(p, g, x));
}
BENCHMARK(BM_GaussianClosedForm)->Arg(6)->Arg(8)->Arg(10);

void BM_InterventionalExplain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(6);
    std::vector<std::vector<PolyTerm>> terms(2);
    terms[0].push_back({0.5, std::vector<int>(static_cast<std::size_t>(n), 0)});
    terms[0][0].exponents[0] = 1;
    terms[0][0].exponents[1] = 1;
    terms[1].push_back({1.0, std::vector<int>(static_cast<std::size_t>(n), 0)});
    terms[1][0].exponents[n - 1] = 2;
    const PolynomialPredictor f(n, 2, std::move(terms));
    std::vector<double> rows(static_cast<std::size_t>(n) * 32);
    for (double& v : rows) v = rng.uniform(-1.0, 1.0);
    const BackgroundSample bg(n, std::move(rows));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(explain(f, bg, x));
}
BENCHMARK(BM_InterventionalExplain)->Arg(8)->Arg(10)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
