#include "worldline/circuits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "worldline/errors.hpp"

namespace worldline {

namespace {

std::size_t dim_for(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 30) {
    throw Error(ErrorCode::InvalidSize, "qubit count must be in [1, 30], got " + std::to_string(n_qubits));
  }
  return std::size_t{1} << n_qubits;
}

void require_qubit(std::size_t qubit, std::size_t n_qubits) {
  if (qubit >= n_qubits) {
    throw Error(ErrorCode::QubitOutOfRange,
                "qubit " + std::to_string(qubit) + " on a " + std::to_string(n_qubits) + "-qubit register");
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amps_(dim_for(n_qubits)) { amps_[0] = 1.0; }

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != dim_for(n_qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count " + std::to_string(amps_.size()) + " for " +
                                                  std::to_string(n_qubits) + " qubits");
  }
}

StateVector StateVector::basis_state(std::size_t n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw Error(ErrorCode::NotPowerOfTwo, "amplitude count " + std::to_string(dim));
  }
  double sq = 0.0;
  for (const Complex& a : amplitudes) sq += std::norm(a);
  if (!(sq > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero vector cannot be normalized");
  const double scale = 1.0 / std::sqrt(sq);
  for (Complex& a : amplitudes) a *= scale;
  return StateVector(static_cast<std::size_t>(std::countr_zero(dim)), std::move(amplitudes));
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const Complex& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

void StateVector::apply_ry(std::size_t qubit, double theta) {
  require_qubit(qubit, n_qubits_);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amps_[k];
      const Complex a1 = amps_[k + stride];
      amps_[k] = c * a0 - s * a1;
      amps_[k + stride] = s * a0 + c * a1;
    }
  }
}

void StateVector::apply_cz(std::size_t control, std::size_t target) {
  require_qubit(control, n_qubits_);
  require_qubit(target, n_qubits_);
  if (control == target) throw Error(ErrorCode::QubitOutOfRange, "CZ needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & mask) == mask) amps_[k] = -amps_[k];
  }
}

void StateVector::apply_unitary(const OperatorMatrix& u) { amps_ = u.apply(amps_); }

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product of different registers");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) sum += std::conj(a[k]) * b[k];
  return sum;
}

StateVector apply_ry(StateVector state, std::size_t qubit, double theta) {
  state.apply_ry(qubit, theta);
  return state;
}

StateVector apply_cz(StateVector state, std::size_t control, std::size_t target) {
  state.apply_cz(control, target);
  return state;
}

StateVector ansatz_state(const AnsatzConfig& cfg) {
  if (cfg.n_qubits == 0) throw Error(ErrorCode::InvalidConfig, "ansatz needs at least one qubit");
  if (cfg.params.size() != cfg.parameter_count()) {
    throw Error(ErrorCode::InvalidConfig, "ansatz expects " + std::to_string(cfg.parameter_count()) +
                                              " parameters, got " + std::to_string(cfg.params.size()));
  }
  const std::size_t n = cfg.n_qubits;
  StateVector state(n);
  for (std::size_t layer = 0; layer <= cfg.depth; ++layer) {
    if (layer > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) state.apply_cz(i, j);
      }
    }
    for (std::size_t q = 0; q < n; ++q) state.apply_ry(q, cfg.params[layer * n + q]);
  }
  return state;
}

double expectation(const StateVector& state, const OperatorMatrix& h) {
  if (h.dim() != state.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension " + std::to_string(h.dim()) +
                                                  " vs register dimension " + std::to_string(state.dim()));
  }
  const auto amps = state.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const Complex value = psi.dot(h.matrix() * psi);  // Eigen's dot conjugates the left operand
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, h.max_abs())) {
    throw Error(ErrorCode::NotHermitian, "expectation has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace worldline
