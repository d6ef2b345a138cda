#include <doctest.h>

#include <cmath>
#include <numbers>

#include "worldline/basis.hpp"
#include "worldline/errors.hpp"

using namespace worldline;

TEST_CASE("oscillator commutator is i except for the truncation corner") {
  for (std::size_t n : {2u, 4u, 16u}) {
    const auto c = commutator(basis::osc_q(n), basis::osc_p(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex expect = 0.0;
        if (i == j) expect = (i + 1 == n) ? Complex(0.0, 1.0 - static_cast<double>(n)) : Complex(0.0, 1.0);
        CHECK(std::abs(c(i, j) - expect) < 1e-12);
      }
  }
}

TEST_CASE("oscillator operators are Hermitian and tridiagonal") {
  const auto q = basis::osc_q(5), p = basis::osc_p(5);
  CHECK(q.is_hermitian());
  CHECK(p.is_hermitian());
  CHECK(q(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(q(3, 4).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(q(0, 2) == Complex(0));
}

TEST_CASE("projected squares keep the number diagonal") {
  const std::size_t n = 6;
  const auto q2 = basis::osc_q_squared(n), p2 = basis::osc_p_squared(n);
  const auto h = 0.5 * (q2 + p2);
  for (std::size_t j = 0; j < n; ++j) CHECK(h(j, j).real() == doctest::Approx(j + 0.5));
  // the plain product loses half a quantum in the last row
  const auto naive = 0.5 * (basis::osc_q(n) * basis::osc_q(n) + basis::osc_p(n) * basis::osc_p(n));
  CHECK(naive(n - 1, n - 1).real() == doctest::Approx((n - 1) * 0.5));
}

TEST_CASE("position grid is symmetric with spacing sqrt(2 pi / n)") {
  const std::size_t n = 16;
  const auto g = basis::position_grid(n);
  for (std::size_t j = 0; j < n; ++j) CHECK(g[j] == doctest::Approx(-g[n - 1 - j]));
  CHECK(g[1] - g[0] == doctest::Approx(std::sqrt(2.0 * std::numbers::pi / n)));
}

TEST_CASE("Sylvester matrix is unitary and squares to the parity") {
  for (std::size_t n : {2u, 4u, 8u}) {
    const auto f = basis::sylvester_f(n);
    CHECK(max_abs_diff(f * f.adjoint(), OperatorMatrix::identity(n)) < 1e-12);
    const auto f2 = f * f;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(f2(i, j) - Complex((i + j + 1 == n) ? 1.0 : 0.0)) < 1e-12);
    const auto p = basis::pos_p(n);
    CHECK(p.is_hermitian(1e-12));
    CHECK(max_abs_diff(p, f.adjoint() * basis::pos_q(n) * f) < 1e-12);
  }
}

TEST_CASE("place pads with identities and commutes across slots") {
  const std::size_t dims[] = {2, 3, 2};
  const auto x = basis::pauli_x();
  const auto a = basis::place(x, 0, dims);
  const auto b = basis::place(basis::pauli_z(), 2, dims);
  CHECK(a.dim() == 12);
  CHECK(max_abs_diff(a * b, b * a) < 1e-15);
  CHECK(max_abs_diff(a, kron(x, OperatorMatrix::identity(6))) < 1e-15);
  CHECK_THROWS_AS(basis::place(x, 1, dims), Error);
}

TEST_CASE("fermion factor and qubit count") {
  const auto psi = basis::fermion_factor();
  CHECK(psi(0, 1) == Complex(1));
  CHECK(max_abs_diff(psi * psi, OperatorMatrix(2)) == 0.0);
  CHECK(basis::qubit_count(256) == 8);
  try {
    basis::qubit_count(12);
    FAIL("expected NotPowerOfTwo");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPowerOfTwo);
  }
}

TEST_CASE("size below two is rejected") {
  CHECK_THROWS_AS(basis::osc_q(1), Error);
  CHECK_THROWS_AS(basis::position_grid(0), Error);
}
