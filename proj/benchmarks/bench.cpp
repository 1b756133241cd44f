// Microbenchmarks comparing the OpenMP-parallel denoisers against their
// serial reference implementations, plus the kernels that dominate them.

#include "agf/bipartite.hpp"
#include "agf/glr.hpp"
#include "agf/graphbio.hpp"
#include "agf/pipeline.hpp"
#include "agf/rng.hpp"
#include "agf/synth.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace agf;

const Image& noisy_image() {
    static const Image img = add_awgn(synth_shapes(192), {50.0, 1});
    return img;
}

AgfConfig agf_config() {
    AgfConfig cfg;
    cfg.patch_size = 24;
    cfg.cascades = 1;
    return cfg;
}

struct PatchFixture {
    WeightedGraph graph;
    std::vector<int> coloring;
    Laplacian lap;
    SpectralDecomposition dec;
    Eigen::VectorXd x;

    PatchFixture() {
        Rng rng(7);
        Patch p(24);
        for (double& v : p.values) v = 255.0 * rng.uniform();
        const FeatureMap f = compute_features(p, FeatureKind::intensity_coords);
        BipartitePair split = split_hv_diag(build_8connected_graph(f, 24, 0.2), 24);
        graph = std::move(split.hv);
        coloring = std::move(split.coloring_hv);
        lap = laplacian(graph, LaplacianKind::normalized);
        dec = eigendecompose(lap.matrix);
        x.resize(graph.nodes);
        for (int i = 0; i < graph.nodes; ++i) x[i] = rng.gaussian();
    }
};

const PatchFixture& fixture() {
    static const PatchFixture f;
    return f;
}

void BM_denoise_parallel(benchmark::State& state) {
    const AgfConfig cfg = agf_config();
    for (auto _ : state) benchmark::DoNotOptimize(denoise(noisy_image(), cfg));
}
BENCHMARK(BM_denoise_parallel)->Unit(benchmark::kMillisecond);

void BM_denoise_serial(benchmark::State& state) {
    const AgfConfig cfg = agf_config();
    for (auto _ : state) benchmark::DoNotOptimize(denoise_serial(noisy_image(), cfg));
}
BENCHMARK(BM_denoise_serial)->Unit(benchmark::kMillisecond);

void BM_glr_denoise_parallel(benchmark::State& state) {
    const AgfConfig acfg = agf_config();
    GlrConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(glr_denoise(noisy_image(), cfg, acfg));
}
BENCHMARK(BM_glr_denoise_parallel)->Unit(benchmark::kMillisecond);

void BM_glr_denoise_serial(benchmark::State& state) {
    const AgfConfig acfg = agf_config();
    GlrConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(glr_denoise_serial(noisy_image(), cfg, acfg));
}
BENCHMARK(BM_glr_denoise_serial)->Unit(benchmark::kMillisecond);

void BM_apply_exact(benchmark::State& state) {
    const PatchFixture& f = fixture();
    const FilterBank& bank = default_filterbank();
    for (auto _ : state) benchmark::DoNotOptimize(apply_exact(f.dec, bank.h0, f.x));
}
BENCHMARK(BM_apply_exact);

void BM_apply_chebyshev(benchmark::State& state) {
    const PatchFixture& f = fixture();
    const FilterBank& bank = default_filterbank();
    const auto h0 = [&bank](double l) { return bank.h0(l); };
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_chebyshev(f.lap.matrix, h0, 30, 2.0, f.x));
}
BENCHMARK(BM_apply_chebyshev);

void BM_eigendecompose_576(benchmark::State& state) {
    const PatchFixture& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(f.lap.matrix));
}
BENCHMARK(BM_eigendecompose_576)->Unit(benchmark::kMillisecond);

void BM_build_graph(benchmark::State& state) {
    Rng rng(9);
    Patch p(24);
    for (double& v : p.values) v = 255.0 * rng.uniform();
    const FeatureMap f = compute_features(p, FeatureKind::intensity_coords);
    for (auto _ : state) benchmark::DoNotOptimize(build_8connected_graph(f, 24, 0.2));
}
BENCHMARK(BM_build_graph);

} // namespace

BENCHMARK_MAIN();
