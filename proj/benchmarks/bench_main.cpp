#include <benchmark/benchmark.h>

#include "annealtrack/adiabatic.hpp"
#include "annealtrack/assoc_cost.hpp"
#include "annealtrack/builders.hpp"
#include "annealtrack/qubo.hpp"
#include "annealtrack/rng.hpp"
#include "annealtrack/samplers.hpp"

namespace at = annealtrack;

namespace {

at::IsingModel random_model(int n, std::uint64_t seed) {
  at::Rng rng(seed);
  at::IsingModel m;
  m.J.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.J(i, j) = m.J(j, i) = rng.uniform(-1.0, 1.0);
  m.h.resize(n);
  for (int i = 0; i < n; ++i) m.h(i) = rng.uniform(-1.0, 1.0);
  return m;
}

void BM_BruteForce(benchmark::State& state) {
  const at::Qubo q = at::ising_to_qubo(random_model(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) {
    auto r = at::brute_force_solve(q);
    benchmark::DoNotOptimize(r.e0);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BruteForce)->DenseRange(10, 20, 2)->Complexity();

void BM_SaRun(benchmark::State& state) {
  const at::IsingModel m = random_model(static_cast<int>(state.range(0)), 11);
  at::AnnealParams p;
  p.backend = at::Backend::sa;
  p.n_shots = 256;
  p.t_f_us = 50.0;
  p.seed = 3;
  for (auto _ : state) {
    auto r = at::run(m, p);
    benchmark::DoNotOptimize(r.e_hat0);
  }
}
BENCHMARK(BM_SaRun)->Arg(16)->Arg(36)->Arg(64);

void BM_Evolve(benchmark::State& state) {
  const at::HamiltonianPair pair = at::build_pair(random_model(static_cast<int>(state.range(0)), 5));
  for (auto _ : state) {
    auto traj = at::evolve(pair, 5.0, 20000, 0, 2);
    benchmark::DoNotOptimize(traj.final_norm);
  }
}
BENCHMARK(BM_Evolve)->Arg(6)->Arg(8)->Arg(10);

void BM_Spectrum(benchmark::State& state) {
  const at::HamiltonianPair pair = at::build_pair(random_model(static_cast<int>(state.range(0)), 5));
  const std::vector<double> grid = at::linspace(0.0, 1.0, 21);
  for (auto _ : state) {
    auto trace = at::spectrum(pair, grid, 4);
    benchmark::DoNotOptimize(trace.energies(0, 0));
  }
}
BENCHMARK(BM_Spectrum)->Arg(6)->Arg(8);

void BM_BuildMtda(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  at::ScenarioParams p;
  p.n_targets = n;
  at::Rng rng(13);
  std::vector<at::TargetState> preds;
  const at::MotionModel motion = at::motion_matrices(p);
  for (const auto& x : at::init_targets(p))
    preds.push_back(at::predict({x, at::default_initial_cov()}, motion));
  at::Scan scan;
  scan.k = 1;
  for (int j = 0; j <= n; ++j) scan.measurements.push_back(rng.uniform(0.0, 2.0 * n));
  for (auto _ : state) {
    const at::CostMatrix cm = at::build_cost_matrix(preds, scan, p);
    auto model = at::mtda_ising(cm);
    benchmark::DoNotOptimize(model.h.sum());
  }
}
BENCHMARK(BM_BuildMtda)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
