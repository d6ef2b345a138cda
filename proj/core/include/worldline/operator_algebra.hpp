#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace worldline {

using Complex = std::complex<double>;

inline constexpr double kDefaultSpectralFloor = 1e-8;

// Relative tolerance accepted by the Hermitian-only routines below:
// max|A - A^dagger| <= kHermitianTolerance * max(1, max|A|).
inline constexpr double kHermitianTolerance = 1e-10;

/// Dense square complex matrix. Every operator and unitary in the library is
/// one of these; the dimension is always the row (and column) count.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(std::size_t dim);
  explicit OperatorMatrix(Eigen::MatrixXcd entries);
  OperatorMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static OperatorMatrix identity(std::size_t dim);
  static OperatorMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
  Complex& operator()(std::size_t row, std::size_t col) { return m_(row, col); }

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  OperatorMatrix adjoint() const;
  // (A + A^dagger) / 2
  OperatorMatrix hermitian_part() const;

  double max_abs() const;
  double frobenius_norm() const;
  // max |A[j,k] - conj(A[k,j])|
  double hermiticity_defect() const;
  // Hermitian when the defect is at most rel_tol * max|A| (or rel_tol for a
  // zero matrix).
  bool is_hermitian(double rel_tol = 1e-12) const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(Complex scale);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator-(OperatorMatrix op) { return op *= -1.0; }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
  friend OperatorMatrix operator*(Complex scale, OperatorMatrix op) { return op *= scale; }
  friend OperatorMatrix operator*(OperatorMatrix op, Complex scale) { return op *= scale; }
  friend OperatorMatrix operator*(double scale, OperatorMatrix op) { return op *= scale; }
  friend OperatorMatrix operator*(OperatorMatrix op, double scale) { return op *= scale; }

  std::vector<Complex> apply(std::span<const Complex> vec) const;

 private:
  Eigen::MatrixXcd m_;
};

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// (a (x) b)[i*dim(b)+j, k*dim(b)+l] = a[i,k] * b[j,l]
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix kron(std::span<const OperatorMatrix> factors);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  OperatorMatrix eigenvectors;      // column k pairs with eigenvalues[k]
};

// Throws Error{NotHermitian} when the input fails kHermitianTolerance.
EigenSystem hermitian_eig(const OperatorMatrix& a);
std::vector<double> hermitian_eigenvalues(const OperatorMatrix& a);

// Spectrum of an arbitrary square matrix, sorted by real part then imaginary
// part.
std::vector<Complex> general_eigenvalues(const OperatorMatrix& a);

/// Spectral function V diag(f(lambda_k)) V^dagger of a Hermitian matrix.
///
/// Eigenvalues with |lambda| < floor are replaced by +floor before f is
/// applied, so inverse powers stay finite on truncated radial operators.
/// Pass floor = 0 to disable the clamp.
OperatorMatrix matrix_function(const OperatorMatrix& a,
                               const std::function<double(double)>& f,
                               double floor = kDefaultSpectralFloor);

// exp(-i h t), computed spectrally.
OperatorMatrix evolve_unitary(const OperatorMatrix& h, double t);

}  // namespace worldline
