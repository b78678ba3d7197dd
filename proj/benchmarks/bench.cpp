#include <benchmark/benchmark.h>

#include "isobeam/families.hpp"
#include "isobeam/spectral.hpp"

using namespace isobeam;

static void BM_jet_mul(benchmark::State& state) {
    Jet a = exp(Jet::variable(0.3, 8));
    Jet b = sin(Jet::variable(0.3, 8));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_jet_mul);

static void BM_principal_residual(benchmark::State& state) {
    LieFamilySpec spec{parse("exp(z)"), 2.0, 1.0};
    BeamCoefficients coeffs = theorem1_coeff_fields(spec);
    for (auto _ : state) {
        Jet r = theorem1_r(spec, 0.4);
        Jet A = coeffs.A(0.4, 2);
        benchmark::DoNotOptimize(principal_residual(r, A, coeffs.B(0.4, 0).value()));
    }
}
BENCHMARK(BM_principal_residual);

static void BM_hyp2f1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp2f1(0.25, 7.0 / 12.0, 4.0 / 3.0, -0.8));
}
BENCHMARK(BM_hyp2f1);

static void BM_assemble(benchmark::State& state) {
    BeamCoefficients coeffs = unit_coeffs();
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(coeffs, {}, n, 1.0));
}
BENCHMARK(BM_assemble)->Arg(200)->Arg(1000);

static void BM_spectrum(benchmark::State& state) {
    DenseMatrix M = assemble(unit_coeffs(), {}, static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(M, 5));
}
BENCHMARK(BM_spectrum)->Arg(100)->Arg(300);

BENCHMARK_MAIN();
