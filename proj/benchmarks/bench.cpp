#include <benchmark/benchmark.h>

#include "soundcone/evolution.hpp"
#include "soundcone/verify.hpp"

using namespace soundcone;

namespace {

void BM_HamiltonianAssembly(benchmark::State& state) {
  Graph g = make_path(int(state.range(0)));
  auto basis = std::make_shared<FockBasis>(g.n_sites, 3, 3);
  ModelParams p{1.0, 1.0, 0.0, {}};
  for (auto _ : state) {
    auto h = build_hamiltonian(g, p, basis);
    benchmark::DoNotOptimize(h.mat);
  }
  state.SetLabel("dim=" + std::to_string(basis->dim()));
}
BENCHMARK(BM_HamiltonianAssembly)->Arg(4)->Arg(6)->Arg(8);

void BM_DensePropagation(benchmark::State& state) {
  SectorModel model(make_path(int(state.range(0))),
                    ModelParams{1.0, 1.0, 0.0, {}}, 3);
  int N = 3;
  model.eigensystem(N);  // warm the cache; measure the apply only
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(model.basis(N)->dim());
  v.normalize();
  for (auto _ : state) {
    Eigen::VectorXcd w = dense_propagate(model, N, v, 0.05);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DensePropagation)->Arg(4)->Arg(6)->Arg(8);

void BM_KrylovPropagation(benchmark::State& state) {
  SectorModel model(make_path(int(state.range(0))),
                    ModelParams{1.0, 1.0, 0.0, {}}, 3);
  int N = 3;
  const auto& H = model.hamiltonian(N).mat;
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(model.basis(N)->dim());
  v.normalize();
  for (auto _ : state) {
    Eigen::VectorXcd w = krylov_propagate(H, v, 0.05, 1e-12);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_KrylovPropagation)->Arg(4)->Arg(6)->Arg(8);

void BM_Covariance(benchmark::State& state) {
  SectorModel model(make_path(int(state.range(0))),
                    ModelParams{1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2, 3}, 1.0);
  EvolvedEnsemble ens = as_ensemble(th);
  for (auto _ : state) {
    Eigen::MatrixXcd c = covariance(ens, model);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Covariance)->Arg(4)->Arg(6)->Arg(8);

void BM_PositivitySweep(benchmark::State& state) {
  Graph g = make_cycle(6);
  SectorModel model(g, ModelParams{1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 1.0);
  auto rho0 = apply_channel(th, add_boson_channel({0, 1, 2, 3, 4, 5}), model);
  Trajectory traj = evolve(rho0, model, th, uniform_grid(1.0, 0.05), {});
  for (auto _ : state) {
    auto res = positivity_check(traj, 1e-8);
    benchmark::DoNotOptimize(res.min_eigs);
  }
}
BENCHMARK(BM_PositivitySweep);

}  // namespace

BENCHMARK_MAIN();
