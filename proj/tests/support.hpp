#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles/dense.hpp"
#include "worldline/circuits.hpp"
#include "worldline/operator_algebra.hpp"

namespace testing_support {

inline oracle::Mat to_dense(const worldline::OperatorMatrix& m) {
  oracle::Mat out = oracle::zeros(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline oracle::Vec to_dense(const worldline::StateVector& s) {
  return oracle::Vec(s.amplitudes().begin(), s.amplitudes().end());
}

inline worldline::OperatorMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  worldline::OperatorMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = gauss(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = worldline::Complex(gauss(rng), gauss(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

inline worldline::StateVector random_state(std::size_t n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<worldline::Complex> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) a = {gauss(rng), gauss(rng)};
  return worldline::StateVector::from_amplitudes(std::move(amps));
}

inline double state_distance(const worldline::StateVector& a, const worldline::StateVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace testing_support
