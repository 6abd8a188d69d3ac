#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "wigner/fock_wigner.hpp"
#include "wigner/region_ops.hpp"
#include "wigner/regions.hpp"
#include "wigner/spectra.hpp"

using namespace wigner;

namespace {

// Hermitian matrix with a fixed random seed, for eigensolver timing.
FockMatrix synthetic_hermitian(int dim) {
    std::mt19937_64 rng(0xBE5C);
    auto unit = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53 - 0.5; };
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(unit(), unit());
    FockMatrix m;
    m.entries = 0.5 * (g + g.adjoint());
    m.hermitian = true;
    return m;
}

void bm_kernel_matrix(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const PhasePoint pt{0.7, -0.4};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix(dim, pt));
}

void bm_assemble_disk(benchmark::State& state) {
    const RegionSpec disk = RegionSpec::make_disk({0, 0}, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_region_operator(disk, 64, 64));
}

void bm_eigendecompose(benchmark::State& state) {
    const FockMatrix m = synthetic_hermitian(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(m, false));
}

void bm_disk_eigenvalue(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(disk_eigenvalue(20, 2.0));
}

void bm_wigner_function(benchmark::State& state) {
    const DensityMatrix rho = coherent_state(1.0, static_cast<int>(state.range(0))).rho;
    const PhasePoint pt{1.2, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(wigner_function(rho, pt));
}

}  // namespace

BENCHMARK(bm_kernel_matrix)->Arg(16)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_assemble_disk)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eigendecompose)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_disk_eigenvalue);
BENCHMARK(bm_wigner_function)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
