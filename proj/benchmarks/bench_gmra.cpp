#include <benchmark/benchmark.h>

#include <random>

#include "gmra/gmra.hpp"
#include "support/generators.hpp"

namespace {

using namespace gmra;

MSystem<Complex> random_journe_system(int splits) {
    const auto mf = journe_multiplicity();
    return flatten(generate_random_bank(mf, conjugate(mf), 7, RandomBankOptions{splits}), 1e-12);
}

void BM_ConjugateJourne(benchmark::State& state) {
    const auto mf = journe_multiplicity();
    for (auto _ : state) {
        benchmark::DoNotOptimize(conjugate(mf));
    }
}
BENCHMARK(BM_ConjugateJourne);

void BM_VerifyJourneExact(benchmark::State& state) {
    const auto bank = journe_bank();
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_orthogonality(bank));
    }
}
BENCHMARK(BM_VerifyJourneExact);

void BM_AssembleUnitary(benchmark::State& state) {
    const auto m = random_journe_system(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_unitary(m));
    }
    state.counters["cells"] = static_cast<double>(assemble_unitary(m).cells());
}
BENCHMARK(BM_AssembleUnitary)->Arg(1)->Arg(4)->Arg(16);

void BM_Act(benchmark::State& state) {
    const auto m = random_journe_system(static_cast<int>(state.range(0)));
    const auto k = random_loop_element(m.mf(), m.cm(), 3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(act(k, m));
    }
}
BENCHMARK(BM_Act)->Arg(1)->Arg(4)->Arg(16);

void BM_ConnectingElement(benchmark::State& state) {
    const auto from = random_journe_system(static_cast<int>(state.range(0)));
    const auto mf = journe_multiplicity();
    const auto to = flatten(generate_random_bank(mf, conjugate(mf), 8, RandomBankOptions{static_cast<int>(state.range(0))}), 1e-12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(connecting_element(from, to));
    }
}
BENCHMARK(BM_ConnectingElement)->Arg(1)->Arg(4)->Arg(16);

void BM_ScalingHaar(benchmark::State& state) {
    const auto m0 = haar_msystem().filters[0];
    const auto grid = make_grid(Rational(-2), Rational(2), Rational(1, 1024));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scaling_function(m0, 2, static_cast<int>(state.range(0)), grid));
    }
}
BENCHMARK(BM_ScalingHaar)->Arg(4)->Arg(16);

void BM_FrameSumClosedForm(benchmark::State& state) {
    const IndicatorWavelet f({{Rational(1, 7), Rational(9, 7)}});
    const int j = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame_sum(f, {journe_wavelet()}, 2, {-j, j}, {-64, 64}));
    }
}
BENCHMARK(BM_FrameSumClosedForm)->Arg(2)->Arg(6);

void BM_FrameSumQuadrature(benchmark::State& state) {
    const IndicatorWavelet f({{Rational(1, 7), Rational(9, 7)}});
    const Rational step(1, 7 * 256);
    const auto fg = f.sample(Rational(-3), Rational(3), step);
    const auto wg = journe_wavelet().sample(Rational(-3), Rational(3), step);
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame_sum(fg, {wg}, 2, {-2, 2}, {-16, 16}));
    }
}
BENCHMARK(BM_FrameSumQuadrature);

}  // namespace
BENCHMARK_MAIN();
