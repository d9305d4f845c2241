#include "jhfem/jhfem.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace jhfem;

namespace {

const JhProblem& problem30()
{
    static const JhProblem p = JhProblem::from_degrees(30, 15);
    return p;
}

DofMap hermite_dofs(int n, int p)
{
    const auto bcs = jeffery_hamel_conditions();
    return DofMap(Mesh1D(n), ElementFamily::hermite(p), bcs);
}

} // namespace

static void BM_AssembleResidual(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(1));
    const DofMap dofs = hermite_dofs(static_cast<int>(state.range(0)), p);
    const auto x = poiseuille_initial_guess(dofs);
    const QuadratureRule& rule = gauss_legendre(required_points(p));
    for (auto _ : state) {
        auto r = assemble_residual(problem30(), dofs, x, rule);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssembleResidual)->ArgsProduct({{80, 320, 1280}, {3, 4, 5}});

static void BM_AssembleJacobian(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(1));
    const DofMap dofs = hermite_dofs(static_cast<int>(state.range(0)), p);
    const auto x = poiseuille_initial_guess(dofs);
    const QuadratureRule& rule = gauss_legendre(required_points(p));
    for (auto _ : state) {
        BandedMatrix j = assemble_jacobian(problem30(), dofs, x, rule);
        benchmark::DoNotOptimize(j);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssembleJacobian)->ArgsProduct({{80, 320, 1280}, {3, 4, 5}});

// random diagonally dominant band; pivoting pathologies are not the point here
static void BM_BandedLU(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    BandedMatrix a(n, k);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i > k ? i - k : 0; j < std::min(n, i + k + 1); ++j) {
            a.at(i, j) = u(rng);
        }
        a.at(i, i) += 2.0 * static_cast<double>(k) + 1.0;
    }
    std::vector<double> b(n, 1.0);
    for (auto _ : state) {
        const BandedLU lu(a);
        auto x = lu.solve(b);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BandedLU)->ArgsProduct({{256, 1024, 4096, 16384}, {3, 4, 5}})->Complexity();

static void BM_NewtonSolve(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    for (auto _ : state) {
        FemSolution sol = newton_solve(problem30(), Mesh1D(n), ElementFamily::hermite(p));
        if (!sol.converged) {
            state.SkipWithError("newton did not converge");
            break;
        }
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_NewtonSolve)->ArgsProduct({{40, 320}, {3, 4, 5}})->Unit(benchmark::kMillisecond);

static void BM_Shoot(benchmark::State& state)
{
    const JhProblem p = JhProblem::from_degrees(static_cast<double>(state.range(0)),
                                                static_cast<double>(state.range(1)));
    for (auto _ : state) {
        ReferenceSolution ref = shoot(p);
        benchmark::DoNotOptimize(ref.s);
    }
}
BENCHMARK(BM_Shoot)->Args({30, 15})->Args({110, 3})->Args({-80, 5})->Unit(benchmark::kMillisecond);

static void BM_EvaluateReference(benchmark::State& state)
{
    static const ReferenceSolution ref = shoot(problem30());
    double eta = 0.0;
    for (auto _ : state) {
        eta += 0.000123;
        if (eta > 1.0) {
            eta -= 1.0;
        }
        benchmark::DoNotOptimize(ref.eval(eta));
    }
}
BENCHMARK(BM_EvaluateReference);

static void BM_SolveModel(benchmark::State& state)
{
    const ModelConfig cfg{static_cast<int>(state.range(1)), static_cast<int>(state.range(0)),
                          state.range(2) == 0 ? Formulation::Galerkin : Formulation::LeastSquares};
    for (auto _ : state) {
        FemSolution sol = solve_model(cfg);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_SolveModel)->ArgsProduct({{32, 128}, {1, 5}, {0, 1}});

BENCHMARK_MAIN();
