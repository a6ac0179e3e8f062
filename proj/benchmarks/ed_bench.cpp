#include <benchmark/benchmark.h>

#include "xyrevival/ed/dynamics.hpp"
#include "xyrevival/ed/eigensolver.hpp"
#include "xyrevival/ed/propagator.hpp"

using namespace xyrevival::ed;

namespace {

SpinHamiltonian xz(int n, std::optional<int> m = std::nullopt) {
  return build_xz_hamiltonian(n, 0.3, 4.0, Boundary::periodic, m.value_or(n), Parity::even,
                              BuildOptions{std::size_t{1} << 22});
}

}  // namespace

static void BM_BuildHamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(xz(n));
}
BENCHMARK(BM_BuildHamiltonian)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SparseMatvec(benchmark::State& state) {
  const auto h = xz(static_cast<int>(state.range(0)));
  ComplexVector x = ComplexVector::Random(h.dimension()), y;
  for (auto _ : state) {
    apply(h, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * h.matrix.nonZeros());
}
BENCHMARK(BM_SparseMatvec)->Arg(12)->Arg(16)->Arg(18);

static void BM_ChebyshevStep(benchmark::State& state) {
  const auto h = xz(16);
  ComplexVector psi = ComplexVector::Random(h.dimension());
  psi.normalize();
  const ChebyshevPropagator prop(h);
  for (auto _ : state) benchmark::DoNotOptimize(prop.step(psi, 1.0));
}
BENCHMARK(BM_ChebyshevStep)->Unit(benchmark::kMillisecond);

static void BM_ReturnAmplitudes(benchmark::State& state) {
  const auto h = xz(16);
  RealVector psi = RealVector::Ones(h.dimension()).normalized();
  const auto times = xyrevival::TimeGrid{20.0, 401}.points();
  const ChebyshevPropagator prop(h);
  for (auto _ : state) benchmark::DoNotOptimize(prop.return_amplitudes(psi, times));
}
BENCHMARK(BM_ReturnAmplitudes)->Unit(benchmark::kMillisecond);

static void BM_Diagonalize(benchmark::State& state) {
  const auto h = xz(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h));
  state.SetLabel("dim " + std::to_string(h.dimension()));
}
BENCHMARK(BM_Diagonalize)->Arg(8)->Arg(10)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_LanczosGroundState(benchmark::State& state) {
  const auto h = xz(16);
  GroundStateOptions opt;
  opt.dense_cap = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h, opt));
}
BENCHMARK(BM_LanczosGroundState)->Unit(benchmark::kMillisecond);
