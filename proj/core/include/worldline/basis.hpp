#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "worldline/operator_algebra.hpp"

// Elementary operator matrices in truncated oscillator and position bases.
//
// Oscillator basis: Q and P are the N x N truncations of (a + a^dagger)/sqrt2
// and i(a^dagger - a)/sqrt2 in number states.  Position basis: Q is a diagonal
// symmetric grid of N points with spacing sqrt(2 pi / N); P is obtained by
// conjugating Q with the symmetric discrete Fourier (Sylvester) matrix.
namespace worldline::basis {

OperatorMatrix osc_q(std::size_t n);
OperatorMatrix osc_p(std::size_t n);

// The N x N block of Q^2 (resp. P^2) computed in dimension N+1.  Unlike
// osc_q(n) * osc_q(n) this keeps the number-state diagonal j + 1/2 intact in
// the last row.
OperatorMatrix osc_q_squared(std::size_t n);
OperatorMatrix osc_p_squared(std::size_t n);

// Grid values sqrt(2 pi / 4n) * (2j - (n + 1)) for one-based j = 1..n.
std::vector<double> position_grid(std::size_t n);

OperatorMatrix pos_q(std::size_t n);
OperatorMatrix sylvester_f(std::size_t n);
// F^dagger pos_q F
OperatorMatrix pos_p(std::size_t n);

// Worldline fermion factor [[0, 1], [0, 0]].
OperatorMatrix fermion_factor();

OperatorMatrix pauli_x();
OperatorMatrix pauli_y();
OperatorMatrix pauli_z();

// I_{d0} (x) ... (x) op (x) ... (x) I_{dlast} with op in position `slot`.
OperatorMatrix place(const OperatorMatrix& op, std::size_t slot, std::span<const std::size_t> dims);

// log2(dim); throws NotPowerOfTwo otherwise.
std::size_t qubit_count(std::size_t dim);

}  // namespace worldline::basis
