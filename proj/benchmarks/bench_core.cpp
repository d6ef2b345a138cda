#include <benchmark/benchmark.h>

#include <random>

#include "worldline/evolution.hpp"
#include "worldline/hamiltonians.hpp"
#include "worldline/vqe.hpp"

using namespace worldline;

namespace {

OperatorMatrix random_hermitian(std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  OperatorMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = gauss(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

BuiltHamiltonian monopole() {
  auto spec = HamiltonianSpec::defaults(HamiltonianKind::MonopoleSU2);
  spec.variant = Variant{VariantKind::HermitianPart};
  return build_hamiltonian(spec);
}

}  // namespace

static void HermitianEig(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto values = hermitian_eigenvalues(h);
    benchmark::DoNotOptimize(values);
  }
}
BENCHMARK(HermitianEig)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BuildCartesian(benchmark::State& state) {
  const auto spec = HamiltonianSpec::defaults(HamiltonianKind::LandauCartesian);
  for (auto _ : state) {
    auto h = build_hamiltonian(spec);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BuildCartesian)->Unit(benchmark::kMillisecond);

static void PauliDecomposeMonopole(benchmark::State& state) {
  const auto h = monopole();
  for (auto _ : state) {
    auto terms = pauli_decompose(h.matrix);
    benchmark::DoNotOptimize(terms);
  }
}
BENCHMARK(PauliDecomposeMonopole)->Unit(benchmark::kMillisecond);

static void TrotterStep(benchmark::State& state) {
  const auto h = build_hamiltonian(HamiltonianSpec::defaults(HamiltonianKind::LandauCartesian));
  const auto terms = pauli_decompose(h.matrix);
  const auto psi = StateVector::basis_state(h.qubits, 0);
  for (auto _ : state) {
    auto out = trotter_evolve(terms, 0.01, 1, psi);
    benchmark::DoNotOptimize(out);
  }
  state.counters["terms"] = static_cast<double>(terms.terms.size());
}
BENCHMARK(TrotterStep)->Unit(benchmark::kMicrosecond);

static void ObjectiveEvaluation(benchmark::State& state) {
  const auto h = state.range(0) == 8 ? build_hamiltonian(HamiltonianSpec::defaults(HamiltonianKind::LandauCartesian)) : monopole();
  VariationalObjective objective(h.matrix, h.qubits, AnsatzTemplate{3});
  std::vector<double> params(objective.parameter_count(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(objective(params));
}
BENCHMARK(ObjectiveEvaluation)->Arg(8)->Arg(9)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
