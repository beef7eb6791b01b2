#include <benchmark/benchmark.h>

#include <random>

#include "setreg/regularity.hpp"
#include "setreg/solvers.hpp"

namespace {

using namespace setreg;

SetDescriptor randomPolyhedron(int dim, int rows, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<PolyRow> out;
    for (int i = 0; i < rows; ++i) {
        Vec n(dim);
        for (int j = 0; j < dim; ++j) n[j] = gauss(rng);
        n.normalize();
        out.push_back({n, 0.0});  // active at the origin
    }
    return SetDescriptor::polyhedron(std::move(out));
}

void BM_PolyhedronProject(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const SetDescriptor set = randomPolyhedron(dim, 2 * dim, 42);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    Vec z(dim);
    for (int j = 0; j < dim; ++j) z[j] = gauss(rng);
    for (auto _ : state) benchmark::DoNotOptimize(projectOne(set, z));
}
BENCHMARK(BM_PolyhedronProject)->Arg(2)->Arg(4)->Arg(6);

void BM_PairExtremalAngle(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Vec origin = Vec::Zero(dim);
    const SetDescriptor a = randomPolyhedron(dim, dim, 1);
    const SetDescriptor b = randomPolyhedron(dim, dim, 2);
    const ConeRep K1 = normal_cone(a, origin);
    const ConeRep K2 = normal_cone(b, origin);
    for (auto _ : state) benchmark::DoNotOptimize(cone_pair_extremal_angle(K1, K2));
}
BENCHMARK(BM_PairExtremalAngle)->Arg(2)->Arg(4);

void BM_EtaKernel(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Vec origin = Vec::Zero(dim);
    std::vector<SetDescriptor> sets;
    for (int i = 0; i < 3; ++i) sets.push_back(randomPolyhedron(dim, dim, 10 + i));
    for (auto _ : state) benchmark::DoNotOptimize(eta_hat_m_sets(sets, origin));
}
BENCHMARK(BM_EtaKernel)->Arg(2)->Arg(3);

void BM_CyclicProjections(benchmark::State& state) {
    const double theta = 30.0 * M_PI / 180.0;
    std::vector<SetDescriptor> lines{
        SetDescriptor::hyperplane((Vec(2) << 0.0, 1.0).finished(), 0.0),
        SetDescriptor::hyperplane((Vec(2) << -std::sin(theta), std::cos(theta)).finished(), 0.0)};
    SolverConfig cfg;
    cfg.x0 = (Vec(2) << 1.0, 0.0).finished();
    cfg.max_iterations = 500;
    for (auto _ : state) benchmark::DoNotOptimize(cyclic_projections(lines, cfg));
}
BENCHMARK(BM_CyclicProjections);

}  // namespace

BENCHMARK_MAIN();
