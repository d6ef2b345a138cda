#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles/special.hpp"
#include "worldline/analytic.hpp"
#include "worldline/errors.hpp"

using namespace worldline;
using namespace worldline::analytic;

namespace {

// Independent transcription of the Cartesian kernel.
Complex kernel_reference(const CartesianKernelQuery& q) {
  const double u = q.b_field * q.t / 2.0;
  const double dx = q.x_f - q.x_i, dy = q.y_f - q.y_i, dz = q.z_f - q.z_i;
  const Complex pre = std::pow(1.0 / (2.0 * std::numbers::pi * q.t), 1.5) * (u / std::sin(u));
  const Complex zpart = std::exp(Complex(0.0, dz * dz / (2.0 * q.t)));
  const double planar = dx * dx + dy * dy + q.b_field * (q.y_f * q.x_i - q.x_f * q.y_i);
  return pre * zpart * std::exp(Complex(0.0, u * std::cos(u) / std::sin(u) * planar));
}

}  // namespace

TEST_CASE("Landau energies") {
  CHECK(landau_energy(2.0, 0) == doctest::Approx(1.0));
  CHECK(landau_energy(-2.0, 1) == doctest::Approx(3.0));
  CHECK(polar_energy(2.0, 0, 0) == doctest::Approx(1.0));
  CHECK(polar_energy(2.0, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("Cartesian kernel matches an independent transcription") {
  const CartesianKernelQuery q{0.3, -0.1, 0.2, 0.7, 0.4, -0.5, 0.8, 1.7};
  const Complex ours = kernel_cartesian(q), ref = kernel_reference(q);
  CHECK(std::abs(ours - ref) < 1e-13 * std::abs(ref));
}

TEST_CASE("Cartesian kernel approaches its free limit") {
  CartesianKernelQuery q{0.1, 0.2, 0.0, 0.4, -0.3, 0.5, 0.7, 0.0};
  const Complex free = kernel_cartesian_free(q);
  CHECK(std::abs(kernel_cartesian(q) - free) < 1e-15 * std::abs(free));
  q.b_field = 1e-6;
  CHECK(std::abs(kernel_cartesian(q) - free) < 1e-4 * std::abs(free));
}

TEST_CASE("kernel singular times are rejected") {
  CartesianKernelQuery q{0, 0, 0, 1, 0, 0, 2.0 * std::numbers::pi / 2.0, 2.0};
  try {
    kernel_cartesian(q);
    FAIL("expected SingularTime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularTime);
  }
  PolarKernelQuery p{0.5, 0, 0.4, 0, std::numbers::pi, 2.0, 8};
  CHECK_THROWS_AS(kernel_polar(p), Error);
}

TEST_CASE("Bessel I agrees with its integral representation") {
  for (int nu : {0, 1, 3, 7})
    for (Complex z : {Complex(0.5, 0), Complex(0, -2.3), Complex(1.2, -0.7), Complex(-4.0, 3.0)}) {
      const Complex ours = bessel_i(nu, z), ref = oracle::bessel_i_integral(nu, z);
      CHECK(std::abs(ours - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  CHECK(bessel_i(0, 0.0) == Complex(1));
  CHECK(bessel_i(2, 0.0) == Complex(0));
  CHECK(bessel_i(-3, Complex(0.4, 0.2)) == bessel_i(3, Complex(0.4, 0.2)));
}

TEST_CASE("polar kernel converges in m_max") {
  PolarKernelQuery q{0.5, 0.3, 0.4, 1.1, 0.3, 2.0, 10};
  const Complex k10 = kernel_polar(q);
  q.m_max = 20;
  const Complex k20 = kernel_polar(q);
  CHECK(std::abs(k10 - k20) < 1e-10);
  CHECK(std::abs(k20) > 0.0);
}

TEST_CASE("Wu-Yang fixed point stays constant") {
  const auto traj = wu_yang_solve(0.5, 5.0, 100, 1.0, 0.0);
  REQUIRE(traj.size() == 101);
  for (const auto& s : traj) {
    CHECK(s.g == 1.0);
    CHECK(s.gprime == 0.0);
  }
}

TEST_CASE("Wu-Yang trajectory follows the small-r series and a fine reference") {
  const double r0 = 0.05;
  const auto traj = wu_yang_solve(r0, 0.1, 40, wu_yang_series_small(r0), wu_yang_series_small_derivative(r0));
  CHECK(traj.back().r == doctest::Approx(0.1));
  CHECK(std::abs(traj.back().g - wu_yang_series_small(0.1)) < 1e-6);
  const auto ref = oracle::wu_yang_reference(r0, 0.1, wu_yang_series_small(r0), wu_yang_series_small_derivative(r0), 100000);
  CHECK(std::abs(traj.back().g - ref.g) < 1e-9);
}

TEST_CASE("Wu-Yang argument checks") {
  CHECK_THROWS_AS(wu_yang_solve(0.0, 1.0, 10, 1.0, 0.0), Error);
  CHECK_THROWS_AS(wu_yang_solve(0.1, 1.0, 5, 1.0, 0.0), Error);
  CHECK(wu_yang_series_large(2.0) == doctest::Approx(1.0 - 0.5 + 0.75 / 4.0));
  CHECK(wu_yang_series_small_derivative(0.2) == doctest::Approx(-0.4 + 1.2 * 0.008));
}
