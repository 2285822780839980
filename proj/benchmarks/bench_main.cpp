#include <benchmark/benchmark.h>

#include "sfpsd/kernels.hpp"
#include "sfpsd/oracle.hpp"
#include "sfpsd/psdlinalg.hpp"
#include "sfpsd/specialfn.hpp"

namespace {

void BM_Gamma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::gamma(sfpsd::Complex(3.7, 1.2)));
}
BENCHMARK(BM_Gamma);

void BM_HurwitzZeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::hurwitz_zeta(sfpsd::Complex(2.5, 0.3), 0.7));
}
BENCHMARK(BM_HurwitzZeta);

void BM_Theta3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::theta3(sfpsd::Complex(0.3, 0.1), 0.6));
}
BENCHMARK(BM_Theta3);

void BM_BuildMatrix(benchmark::State& state) {
  const auto family = sfpsd::kAllFamilies[static_cast<std::size_t>(state.range(0))];
  const sfpsd::MatrixSpec spec = sfpsd::random_spec(family, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::build_matrix(spec));
  state.SetLabel(spec.label);
}
BENCHMARK(BM_BuildMatrix)->DenseRange(0, 17);

void BM_PsdVerdict(benchmark::State& state) {
  const sfpsd::MatrixSpec spec = sfpsd::random_spec(sfpsd::KernelFamily::GAMMA, static_cast<std::size_t>(state.range(0)), 3);
  const sfpsd::HermitianMatrix m = sfpsd::build_matrix(spec);
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::psd_verdict(m));
}
BENCHMARK(BM_PsdVerdict)->Arg(4)->Arg(8)->Arg(16);

void BM_OracleQuadrature(benchmark::State& state) {
  const sfpsd::MatrixSpec spec = sfpsd::random_spec(sfpsd::KernelFamily::BETA, 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(sfpsd::oracle_matrix(spec));
}
BENCHMARK(BM_OracleQuadrature);

}  // namespace
BENCHMARK_MAIN();
