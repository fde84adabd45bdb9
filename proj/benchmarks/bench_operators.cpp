#include <benchmark/benchmark.h>

#include <numbers>

#include "stokeslab/besov.hpp"
#include "stokeslab/fft.hpp"
#include "stokeslab/ladder.hpp"
#include "stokeslab/leray.hpp"
#include "stokeslab/model_operators.hpp"
#include "stokeslab/picard.hpp"
#include "stokeslab/synthetic.hpp"

using namespace stokeslab;

namespace {

SlabGrid grid_for(const benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto nz = static_cast<int>(state.range(1));
    return make_grid(n, n, 2 * std::numbers::pi, 2 * std::numbers::pi, nz, -8.0, 8.0);
}

}  // namespace

static void BM_ForwardInverse(benchmark::State& state) {
    const SlabGrid g = grid_for(state);
    Rng rng(1);
    const SpectralField f = random_smooth_field(g, 1, rng, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(inverse(f)));
    }
}
BENCHMARK(BM_ForwardInverse)->Args({32, 129})->Args({64, 257})->Unit(benchmark::kMillisecond);

static void BM_ExpConvolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<cplx> p(n, cplx(1.0, 0.0));
    std::vector<cplx> out(n);
    ExpConvolutionPlan plan(1.5, 0.01);
    for (auto _ : state) {
        plan.apply(p, out, KernelKind::even);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ExpConvolve)->Arg(257)->Arg(4097);

static void BM_ModelOperator(benchmark::State& state) {
    const SlabGrid g = grid_for(state);
    Rng rng(2);
    const SpectralField f = random_smooth_field(g, 1, rng, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_model_operator(f, ModelKind::D0, false));
    }
}
BENCHMARK(BM_ModelOperator)->Args({32, 129})->Args({64, 257})->Unit(benchmark::kMillisecond);

static void BM_BesovNorm(benchmark::State& state) {
    const SlabGrid g = grid_for(state);
    const DyadicLadder ladder = build_ladder(g);
    Rng rng(3);
    const SpectralField f = random_smooth_field(g, 1, rng, 1.0);
    const BesovIndex idx{0.0, Exponent::finite(4.0), Exponent::finite(1.0), Exponent::finite(2.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(besov_norm(ladder, f, idx));
    }
}
BENCHMARK(BM_BesovNorm)->Args({32, 129})->Args({64, 257})->Unit(benchmark::kMillisecond);

static void BM_ApplyD(benchmark::State& state) {
    const SlabGrid g = grid_for(state);
    Rng rng(4);
    const ForcingTensor F(random_smooth_field(g, 9, rng, 1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_D(F, false));
    }
}
BENCHMARK(BM_ApplyD)->Args({32, 129})->Args({64, 257})->Unit(benchmark::kMillisecond);

static void BM_NonlinearTerm(benchmark::State& state) {
    const SlabGrid g = grid_for(state);
    Rng rng(5);
    const VelocityField u(random_smooth_field(g, 3, rng, 1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nonlinear_term(u));
    }
}
BENCHMARK(BM_NonlinearTerm)->Args({32, 129})->Args({64, 257})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
