#include <benchmark/benchmark.h>

#include "ncrl/bloch_case1.hpp"
#include "ncrl/continuum_case3.hpp"
#include "ncrl/eigen.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/rng.hpp"
#include "ncrl/tomo_case2.hpp"

namespace {

using namespace ncrl;

void BM_EigenHermitian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SplitMix64 rng(12);
    const HermitianOperator a = random_hermitian(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(eigen_hermitian(a));
}
BENCHMARK(BM_EigenHermitian)->Arg(2)->Arg(4)->Arg(8);

void BM_SolveStateVector(benchmark::State& state) {
    const ThreeMeasurementSetup setup = special_family_setup(1.0);
    const ConditionalProbTriple probs(0.9, 0.9, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(solve_state_vector(setup, probs));
}
BENCHMARK(BM_SolveStateVector);

void BM_RegionScan(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_region(1.1, 1.5, 0.76, 1.0, 20));
}
BENCHMARK(BM_RegionScan);

void BM_ReconstructState(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MeasurementFrame frame = random_frame(3, n, n + 1);
    SplitMix64 rng(4);
    const HermitianOperator rho = random_density(rng, n);
    const ProbabilityTable table = born_table(rho, frame);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_state(frame, table));
}
BENCHMARK(BM_ReconstructState)->Arg(2)->Arg(3)->Arg(4);

void BM_WitnessSearch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MeasurementFrame frame = random_frame(8, n, n + 1);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(find_nonpsd_witness(frame, seed++));
}
BENCHMARK(BM_WitnessSearch)->Arg(2)->Arg(3);

void BM_BeltVerify(benchmark::State& state) {
    const BeltParameters params(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(verify_belt_born(params, 1000, 7));
}
BENCHMARK(BM_BeltVerify);

void BM_Lemma2Verify(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<MinimalProjection> basis = random_projection_spanning_set(21, n);
    SplitMix64 rng(22);
    const ComplexMatrix u = random_unitary(rng, n);
    std::vector<ComplexMatrix> images;
    for (const MinimalProjection& p : basis) images.push_back(conjugate_by(u, p.matrix()));
    std::vector<ProjectionMapSample> extra;
    for (int i = 0; i < 100; ++i) {
        const MinimalProjection p = random_minimal_projection(rng, n);
        extra.push_back({p, conjugate_by(u, p.matrix())});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(lemma2_verify(basis, images, images, extra, 5, 1e-9));
}
BENCHMARK(BM_Lemma2Verify)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
