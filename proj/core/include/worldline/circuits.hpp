#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "worldline/operator_algebra.hpp"

namespace worldline {

/// n-qubit register of 2^n amplitudes.  Qubit q is bit q of the basis index,
/// so qubit 0 is the least significant factor of a Kronecker product.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(std::size_t n_qubits);
  // Takes the amplitudes as given; the length must be 2^n_qubits.
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  static StateVector basis_state(std::size_t n_qubits, std::size_t index);
  // Normalizes; length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t index) const { return amps_[index]; }

  double norm() const;

  // In-place gates.  The free functions below return new states.
  void apply_ry(std::size_t qubit, double theta);
  void apply_cz(std::size_t control, std::size_t target);
  void apply_unitary(const OperatorMatrix& u);

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

StateVector apply_ry(StateVector state, std::size_t qubit, double theta);
StateVector apply_cz(StateVector state, std::size_t control, std::size_t target);

enum class Entanglement { Full };

/// Hardware-efficient Ry form: a rotation layer on every qubit, then `depth`
/// blocks of [CZ on every pair i < j, rotation layer].  params[l * n + q] is
/// the angle on qubit q in rotation layer l.
struct AnsatzConfig {
  std::size_t n_qubits = 1;
  std::size_t depth = 3;
  Entanglement entanglement = Entanglement::Full;
  std::vector<double> params;

  std::size_t parameter_count() const noexcept { return n_qubits * (depth + 1); }
};

StateVector ansatz_state(const AnsatzConfig& cfg);

// Re <psi|H|psi>; throws NotHermitian when the imaginary residue exceeds
// 1e-10 * max(1, max|H|).
double expectation(const StateVector& state, const OperatorMatrix& h);

}  // namespace worldline
