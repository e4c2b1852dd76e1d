#include <array>
#include <numbers>

#include <benchmark/benchmark.h>

#include "nonrecip/gaussian.hpp"
#include "nonrecip/master.hpp"
#include "nonrecip/models.hpp"
#include "nonrecip/trajectories.hpp"

using namespace nonrecip;

namespace {

master::LindbladModel recipe_model(std::size_t dim) {
  fock::HilbertSpace s({dim, dim});
  return master::build_directional_model(fock::annihilation(s, 0), fock::annihilation(s, 1),
                                         {0.5, 1.0, 0.5, -std::numbers::pi / 2.0});
}

void BM_LiouvillianMatrix(benchmark::State& state) {
  const auto model = recipe_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(master::liouvillian_matrix(model));
}
BENCHMARK(BM_LiouvillianMatrix)->Arg(3)->Arg(5)->Arg(8);

void BM_Rk4Evolution(benchmark::State& state) {
  const auto model = recipe_model(static_cast<std::size_t>(state.range(0)));
  const std::array<fock::Complex, 2> alphas{0.3, 0.2};
  const auto rho0 = fock::DensityMatrix::coherent(model.space(), alphas);
  for (auto _ : state) benchmark::DoNotOptimize(master::evolve(model, rho0, 1.0, 0.01));
}
BENCHMARK(BM_Rk4Evolution)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AmplifierScatteringSweep(benchmark::State& state) {
  const auto model = models::amplifier_model(models::AmplifierConfig::tuned(100.0, 1.0, models::CoherentSign::minus));
  for (auto _ : state) {
    for (int i = -200; i <= 200; ++i) benchmark::DoNotOptimize(gaussian::scattering(model, i / 40.0));
  }
}
BENCHMARK(BM_AmplifierScatteringSweep)->Unit(benchmark::kMicrosecond);

void BM_FeedforwardEnsemble(benchmark::State& state) {
  fock::HilbertSpace s({4, 4});
  const auto rho0 = fock::DensityMatrix::vacuum(s);
  trajectories::TrajectoryOptions opts;
  opts.t = 0.5;
  opts.dt = 0.0025;
  opts.sample_every = 40;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectories::feedforward_ensemble(fock::quadrature_x(s, 0), fock::quadrature_x(s, 1),
                                                                master::ff_param_map(1.0, 0.5), rho0, 1, opts,
                                                                static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_FeedforwardEnsemble)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
