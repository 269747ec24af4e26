#include <benchmark/benchmark.h>

#include <vector>

#include <decaycert/constants.hpp>
#include <decaycert/matrix_exp.hpp>
#include <decaycert/models.hpp>
#include <decaycert/rate_bounds.hpp>
#include <decaycert/semigroup.hpp>
#include <decaycert/spectrum.hpp>

using namespace decaycert;

namespace {

SystemPair system_of(const benchmark::State& state) {
  return random_sectorial(static_cast<int>(state.range(0)), 7, 0.5, 1.0);
}

void BM_Constants(benchmark::State& state) {
  const SystemPair sys = system_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(sys));
}

void BM_Certify(benchmark::State& state) {
  const ConstantSet c = compute_constants(system_of(state));
  const std::vector<double> bs;
  for (auto _ : state) benchmark::DoNotOptimize(certify(c, bs));
}

void BM_Eigenvalues(benchmark::State& state) {
  const Linearization lin = build_linearization(system_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(lin));
}

void BM_ExpmPade(benchmark::State& state) {
  const Matrix block = build_linearization(system_of(state)).block;
  for (auto _ : state) benchmark::DoNotOptimize(expm_pade(2.0 * block));
}

void BM_DecayCurve(benchmark::State& state) {
  const SystemPair sys = system_of(state);
  const ConstantSet c = compute_constants(sys);
  const RateCertificate cert = certify(c, std::vector<double>{0.0});
  const auto times = default_time_grid(10.0 / cert.omega);
  for (auto _ : state) benchmark::DoNotOptimize(decay_curve(sys, c, cert.theta_star, times));
}

}  // namespace

BENCHMARK(BM_Constants)->Arg(10)->Arg(30);
BENCHMARK(BM_Certify)->Arg(10)->Arg(30);
BENCHMARK(BM_Eigenvalues)->Arg(10)->Arg(30);
BENCHMARK(BM_ExpmPade)->Arg(10)->Arg(30);
BENCHMARK(BM_DecayCurve)->Arg(10)->Arg(30);
BENCHMARK_MAIN();
