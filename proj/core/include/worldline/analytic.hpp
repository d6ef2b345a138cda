#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Closed-form and ODE references for a charged particle in a constant
// magnetic field and for the SU(2) Wu-Yang radial equation.
namespace worldline::analytic {

using Complex = std::complex<double>;

// |B| (n + 1/2)
double landau_energy(double b_field, int n);
// (n + 1 - m) B / 2
double polar_energy(double b_field, int n, int m);

struct CartesianKernelQuery {
  double x_i = 0.0, y_i = 0.0, z_i = 0.0;
  double x_f = 0.0, y_f = 0.0, z_f = 0.0;
  double t = 1.0;
  double b_field = 0.0;
};

struct PolarKernelQuery {
  double rho_i = 0.0, phi_i = 0.0;
  double rho_f = 0.0, phi_f = 0.0;
  double t = 1.0;
  double b_field = 0.0;
  int m_max = 16;
};

// Required separation of sin(B t / 2) from zero.
inline constexpr double kKernelSingularity = 1e-9;

/// Propagator in Cartesian coordinates, transcribed term by term:
///
///   (1/(2 pi T))^{3/2} (BT/2)/sin(BT/2) exp(i (z_f-z_i)^2 / (2T))
///     * exp[ i(BT/2)/tan(BT/2) ((x_f-x_i)^2 + (y_f-y_i)^2 + B(y_f x_i - x_f y_i)) ]
///
/// Leaving z_i = z_f gives the planar restriction used against the 2D matrix
/// model.  B = 0 is evaluated through the sin(u)/u -> 1 limit; otherwise
/// throws SingularTime when |sin(BT/2)| <= kKernelSingularity.
Complex kernel_cartesian(const CartesianKernelQuery& q);

// The B -> 0 limit of the formula above, written out directly.
Complex kernel_cartesian_free(const CartesianKernelQuery& q);

/// Propagator in polar coordinates as a Bessel sum over m in [-m_max, m_max]:
///
///   (1/(2 pi i)) (B/2)/sin(BT/2) exp(-B/4 (rho_f^2 + rho_i^2))
///     * exp(i B/4 (rho_f^2 + rho_i^2) e^{-iBT/2} / sin(BT/2))
///     * sum_m exp(i m (phi_f - phi_i + BT/2)) I_|m|(-i (B/2) rho_f rho_i / sin(BT/2))
Complex kernel_polar(const PolarKernelQuery& q);

// Modified Bessel I_nu(z) for integer order and complex z with |z| < 20, by
// its power series; stops once the term ratio falls below 1e-16.
Complex bessel_i(int nu, Complex z);

struct WuYangSample {
  double r;
  double g;
  double gprime;
};

/// Classic fixed-step RK4 for g'' = g (g^2 - 1) / r^2 from r_start to r_end.
/// Returns steps + 1 samples including both end points.
std::vector<WuYangSample> wu_yang_solve(double r_start, double r_end, std::size_t steps, double g_start,
                                        double gprime_start);

// 1 - r^2 + (3/10) r^4 and its derivative
double wu_yang_series_small(double r);
double wu_yang_series_small_derivative(double r);
// 1 - 1/r + (3/4) / r^2
double wu_yang_series_large(double r);

}  // namespace worldline::analytic
