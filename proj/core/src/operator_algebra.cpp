#include "worldline/operator_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "worldline/errors.hpp"

namespace worldline {

namespace {

void require_square_nonempty(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidSize, "operator matrix must be square with positive dimension");
  }
}

void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

void require_hermitian(const OperatorMatrix& a) {
  const double scale = std::max(1.0, a.max_abs());
  const double defect = a.hermiticity_defect();
  if (defect > kHermitianTolerance * scale) {
    throw Error(ErrorCode::NotHermitian,
                "max |A - A^dagger| = " + std::to_string(defect));
  }
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve(const OperatorMatrix& a,
                                                      Eigen::DecompositionOptions opts) {
  require_hermitian(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix(), opts);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "Hermitian eigensolver did not converge");
  }
  return solver;
}

}  // namespace

OperatorMatrix::OperatorMatrix(std::size_t dim)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {
  require_square_nonempty(m_);
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  require_square_nonempty(m_);
}

OperatorMatrix::OperatorMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  m_ = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::InvalidSize, "row length differs from row count");
    }
    Eigen::Index c = 0;
    for (const Complex& v : row) m_(r, c++) = v;
    ++r;
  }
  require_square_nonempty(m_);
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return OperatorMatrix(Eigen::MatrixXcd::Identity(n, n));
}

OperatorMatrix OperatorMatrix::diagonal(std::span<const double> values) {
  OperatorMatrix out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out(k, k) = values[k];
  return out;
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(Eigen::MatrixXcd(m_.adjoint())); }

OperatorMatrix OperatorMatrix::hermitian_part() const {
  return OperatorMatrix(Eigen::MatrixXcd(0.5 * (m_ + m_.adjoint())));
}

double OperatorMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double OperatorMatrix::frobenius_norm() const { return m_.norm(); }

double OperatorMatrix::hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

bool OperatorMatrix::is_hermitian(double rel_tol) const {
  const double scale = max_abs();
  return hermiticity_defect() <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_dim(*this, rhs);
  m_ += rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_same_dim(*this, rhs);
  m_ -= rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex scale) {
  m_ *= scale;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_dim(lhs, rhs);
  return OperatorMatrix(Eigen::MatrixXcd(lhs.m_ * rhs.m_));
}

std::vector<Complex> OperatorMatrix::apply(std::span<const Complex> vec) const {
  if (vec.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(vec.size()) +
                                                  " vs operator dimension " + std::to_string(dim()));
  }
  Eigen::Map<const Eigen::VectorXcd> in(vec.data(), static_cast<Eigen::Index>(vec.size()));
  Eigen::VectorXcd out = m_ * in;
  return {out.data(), out.data() + out.size()};
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index k = 0; k < na; ++k) {
      out.block(i * nb, k * nb, nb, nb) = a.matrix()(i, k) * b.matrix();
    }
  }
  return OperatorMatrix(std::move(out));
}

OperatorMatrix kron(std::span<const OperatorMatrix> factors) {
  if (factors.empty()) return OperatorMatrix::identity(1);
  OperatorMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

EigenSystem hermitian_eig(const OperatorMatrix& a) {
  auto solver = solve(a, Eigen::ComputeEigenvectors);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  return EigenSystem{std::vector<double>(vals.data(), vals.data() + vals.size()),
                     OperatorMatrix(solver.eigenvectors())};
}

std::vector<double> hermitian_eigenvalues(const OperatorMatrix& a) {
  auto solver = solve(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

std::vector<Complex> general_eigenvalues(const OperatorMatrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.matrix(), false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "complex eigensolver did not converge");
  }
  const Eigen::VectorXcd& vals = solver.eigenvalues();
  std::vector<Complex> out(vals.data(), vals.data() + vals.size());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

OperatorMatrix matrix_function(const OperatorMatrix& a, const std::function<double(double)>& f,
                               double floor) {
  auto solver = solve(a, Eigen::ComputeEigenvectors);
  Eigen::VectorXd mapped = solver.eigenvalues();
  for (Eigen::Index k = 0; k < mapped.size(); ++k) {
    double lambda = mapped(k);
    if (std::abs(lambda) < floor) lambda = floor;
    mapped(k) = f(lambda);
  }
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return OperatorMatrix(Eigen::MatrixXcd(v * mapped.cast<Complex>().asDiagonal() * v.adjoint()));
}

OperatorMatrix evolve_unitary(const OperatorMatrix& h, double t) {
  auto solver = solve(h, Eigen::ComputeEigenvectors);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) phases(k) = std::exp(Complex(0.0, -vals(k) * t));
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return OperatorMatrix(Eigen::MatrixXcd(v * phases.asDiagonal() * v.adjoint()));
}

}  // namespace worldline
