#include "worldline/basis.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "worldline/errors.hpp"

namespace worldline::basis {

namespace {

void require_size(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "truncation size must be at least 2, got " + std::to_string(n));
}

// 2j - (n + 1) for zero-based j, i.e. the one-based grid label shifted.
double centered_label(std::size_t j, std::size_t n) {
  return 2.0 * static_cast<double>(j + 1) - static_cast<double>(n + 1);
}

}  // namespace

OperatorMatrix osc_q(std::size_t n) {
  require_size(n);
  OperatorMatrix q(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double v = std::sqrt(static_cast<double>(j + 1)) / std::numbers::sqrt2;
    q(j, j + 1) = v;
    q(j + 1, j) = v;
  }
  return q;
}

OperatorMatrix osc_p(std::size_t n) {
  require_size(n);
  OperatorMatrix p(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double v = std::sqrt(static_cast<double>(j + 1)) / std::numbers::sqrt2;
    p(j, j + 1) = Complex(0.0, -v);
    p(j + 1, j) = Complex(0.0, v);
  }
  return p;
}

namespace {

OperatorMatrix leading_block(const OperatorMatrix& big, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return OperatorMatrix(Eigen::MatrixXcd(big.matrix().topLeftCorner(k, k)));
}

}  // namespace

OperatorMatrix osc_q_squared(std::size_t n) {
  require_size(n);
  const OperatorMatrix q = osc_q(n + 1);
  return leading_block(q * q, n);
}

OperatorMatrix osc_p_squared(std::size_t n) {
  require_size(n);
  const OperatorMatrix p = osc_p(n + 1);
  return leading_block(p * p, n);
}

std::vector<double> position_grid(std::size_t n) {
  require_size(n);
  const double spacing = std::sqrt(2.0 * std::numbers::pi / (4.0 * static_cast<double>(n)));
  std::vector<double> grid(n);
  for (std::size_t j = 0; j < n; ++j) grid[j] = spacing * centered_label(j, n);
  return grid;
}

OperatorMatrix pos_q(std::size_t n) {
  const auto grid = position_grid(n);
  return OperatorMatrix::diagonal(grid);
}

OperatorMatrix sylvester_f(std::size_t n) {
  require_size(n);
  const double dn = static_cast<double>(n);
  const double phase_unit = 2.0 * std::numbers::pi / (4.0 * dn);
  const double norm = 1.0 / std::sqrt(dn);
  OperatorMatrix f(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      f(j, k) = norm * std::exp(Complex(0.0, phase_unit * centered_label(j, n) * centered_label(k, n)));
    }
  }
  return f;
}

OperatorMatrix pos_p(std::size_t n) {
  const OperatorMatrix f = sylvester_f(n);
  return f.adjoint() * pos_q(n) * f;
}

OperatorMatrix fermion_factor() { return OperatorMatrix{{0.0, 1.0}, {0.0, 0.0}}; }

OperatorMatrix pauli_x() { return OperatorMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
OperatorMatrix pauli_y() { return OperatorMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
OperatorMatrix pauli_z() { return OperatorMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

OperatorMatrix place(const OperatorMatrix& op, std::size_t slot, std::span<const std::size_t> dims) {
  if (slot >= dims.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "slot " + std::to_string(slot) + " outside " + std::to_string(dims.size()) + " factors");
  }
  if (dims[slot] != op.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator of dimension " + std::to_string(op.dim()) +
                                                  " placed in factor of dimension " + std::to_string(dims[slot]));
  }
  std::size_t before = 1;
  std::size_t after = 1;
  for (std::size_t k = 0; k < slot; ++k) before *= dims[k];
  for (std::size_t k = slot + 1; k < dims.size(); ++k) after *= dims[k];

  const OperatorMatrix right = after == 1 ? op : kron(op, OperatorMatrix::identity(after));
  return before == 1 ? right : kron(OperatorMatrix::identity(before), right);
}

std::size_t qubit_count(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw Error(ErrorCode::NotPowerOfTwo, "dimension " + std::to_string(dim) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace worldline::basis
