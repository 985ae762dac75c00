#include <benchmark/benchmark.h>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/filtration.hpp"
#include "shiftlab/hyperbolic1d.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/partition.hpp"
#include "shiftlab/plane_cover.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/splitting.hpp"

using namespace shiftlab;

namespace {

Polynomial z2() { return Polynomial({0.0, 0.0, 1.0}); }

void BM_apply_shift(benchmark::State& st) {
    const ShiftSpec s{static_cast<int>(st.range(0)), 1, 0.01, z2()};
    Point z(static_cast<std::size_t>(s.k));
    for (auto& c : z) c = Complex{0.3, 0.2};
    for (auto _ : st) {
        z = apply_shift(s, z);
        benchmark::DoNotOptimize(z);
        if (z.sup_norm() > 10.0) z[0] = z[1] = Complex{0.1, 0.0};
    }
}
BENCHMARK(BM_apply_shift)->Arg(3)->Arg(6);

void BM_jacobian(benchmark::State& st) {
    const ShiftSpec s{3, 2, 0.01, z2()};
    const Point z{0.6, Complex{0.0, 0.8}, 0.3};
    for (auto _ : st) benchmark::DoNotOptimize(jacobian(s, z, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_jacobian)->Arg(8)->Arg(32);

void BM_green_plus(benchmark::State& st) {
    const ShiftSpec s{3, 2, 0.01, z2()};
    const Point z{0.6, 1.1, Complex{0.3, 0.9}};
    for (auto _ : st) benchmark::DoNotOptimize(green_plus(s, z, 25));
}
BENCHMARK(BM_green_plus);

void BM_green_minus(benchmark::State& st) {
    const ShiftSpec s{3, 2, 0.01, z2()};
    const Point z{1.6, 0.1, Complex{0.3, 0.2}};
    for (auto _ : st) benchmark::DoNotOptimize(green_minus(s, z, 25));
}
BENCHMARK(BM_green_minus);

void BM_sample_mu_p(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sample_mu_p(z2(), static_cast<std::size_t>(st.range(0)), 100, 1));
}
BENCHMARK(BM_sample_mu_p)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_supp_mu_a(benchmark::State& st) {
    const ShiftSpec s{3, 2, 0.01, z2()};
    SuppConfig cfg;
    cfg.count = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(approximate_supp_mu_a(s, cfg));
}
BENCHMARK(BM_supp_mu_a)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_hausdorff(benchmark::State& st) {
    const auto a = sample_mu_p_nu(z2(), 2, static_cast<std::size_t>(st.range(0)), 1);
    const auto b = sample_mu_p_nu(z2(), 2, static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(hausdorff(a, b));
}
BENCHMARK(BM_hausdorff)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_plane_cover(benchmark::State& st) {
    const auto p = z2();
    const auto cloud = inverse_tree_cloud(p, 0.025);
    for (auto _ : st) benchmark::DoNotOptimize(build_plane_cover(p, cloud, 0.1, Box{}, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_plane_cover)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_certify_cones(benchmark::State& st) {
    const auto p = z2();
    const ShiftSpec s{3, 2, 1e-3, p};
    const auto cover = build_plane_cover(p, inverse_tree_cloud(p, 0.025), 0.1, Box{}, 400);
    CandidateConfig cc;
    cc.per_label = 100;
    std::vector<ShadowResult> orbits;
    for (const auto& c : julia_candidates(s, classify_hyperbolic(p), cc)) orbits.push_back(c.orbit);
    ConeConfig cfg;
    cfg.search = false;
    for (auto _ : st) benchmark::DoNotOptimize(certify_cones(s, cover, orbits, cfg));
}
BENCHMARK(BM_certify_cones)->Unit(benchmark::kMillisecond);

void BM_k_minus_fraction(benchmark::State& st) {
    const ShiftSpec s{3, 1, 0.5, z2()};
    for (auto _ : st) benchmark::DoNotOptimize(k_minus_interior_fraction(s, 2.0, 1000, 50));
}
BENCHMARK(BM_k_minus_fraction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
