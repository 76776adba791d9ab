#include <benchmark/benchmark.h>

#include "r2dpca/classifier.hpp"
#include "r2dpca/dataset.hpp"
#include "r2dpca/linalg.hpp"
#include "r2dpca/projector.hpp"
#include "r2dpca/relaxation.hpp"
#include "r2dpca/rng.hpp"

namespace {

using namespace r2dpca;

Matrix random_symmetric(Rng& rng, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
    return m;
}

void BM_SymEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(17);
    const Matrix a = random_symmetric(rng, n);
    for (auto _ : state) {
        auto result = sym_eig(a, n);
        benchmark::DoNotOptimize(result.second.data());
    }
}
BENCHMARK(BM_SymEig)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_FitAxes(benchmark::State& state) {
    const LabeledDataset ds = synth_generate(5, 8, 32, 32, 0.05, 3);
    FitConfig cfg;
    cfg.s = static_cast<double>(state.range(0));
    cfg.p = 2.0;
    cfg.num_axes = 3;
    cfg.tol = 1e-10;
    for (auto _ : state) {
        const ProjectionModel model = g2dpca_fit(ds, cfg);
        benchmark::DoNotOptimize(model.objective_values.data());
    }
}
BENCHMARK(BM_FitAxes)->Arg(1)->Arg(2)->Arg(3);

void BM_RelaxedEig(benchmark::State& state) {
    const LabeledDataset ds = synth_generate(8, 6, 32, 32, 0.05, 5);
    const RelaxationVector relax = relaxation_vector(ds, compute_centering(ds));
    for (auto _ : state) {
        const ProjectionModel model = relaxed_2dpca_eig(ds, relax, 0.0, 5);
        benchmark::DoNotOptimize(model.objective_values.data());
    }
}
BENCHMARK(BM_RelaxedEig);

void BM_Classify(benchmark::State& state) {
    const LabeledDataset ds = synth_generate(10, 12, 24, 24, 0.05, 9);
    const auto [train, test] = split_per_class(ds, 8, 21);
    FitConfig cfg;
    cfg.num_axes = 5;
    const ProjectionModel model = g2dpca_fit(train, cfg);
    const Gallery gallery = build_gallery(train, model);
    std::size_t i = 0;
    for (auto _ : state) {
        const int label = classify(gallery, test.samples[i % test.samples.size()], model);
        benchmark::DoNotOptimize(label);
        ++i;
    }
}
BENCHMARK(BM_Classify);

} // namespace

BENCHMARK_MAIN();
