#include "worldline/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "worldline/errors.hpp"

namespace worldline::analytic {

namespace {

constexpr Complex kI{0.0, 1.0};

double checked_sine(double b_field, double t) {
  const double s = std::sin(b_field * t / 2.0);
  if (std::abs(s) <= kKernelSingularity) {
    throw Error(ErrorCode::SingularTime, "sin(B t / 2) = " + std::to_string(s) + " is singular");
  }
  return s;
}

}  // namespace

double landau_energy(double b_field, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Landau level index must be non-negative");
  return std::abs(b_field) * (n + 0.5);
}

double polar_energy(double b_field, int n, int m) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "radial quantum number must be non-negative");
  return (n + 1 - m) * b_field / 2.0;
}

Complex kernel_cartesian(const CartesianKernelQuery& q) {
  if (!(q.t > 0.0)) throw Error(ErrorCode::SingularTime, "kernel needs T > 0");
  const double u = q.b_field * q.t / 2.0;
  double ratio_sin = 1.0;  // u / sin u
  double ratio_tan = 1.0;  // u / tan u
  if (q.b_field != 0.0) {
    const double s = checked_sine(q.b_field, q.t);
    ratio_sin = u / s;
    ratio_tan = u * std::cos(u) / s;
  }
  const double dx = q.x_f - q.x_i;
  const double dy = q.y_f - q.y_i;
  const double dz = q.z_f - q.z_i;
  const double prefactor = std::pow(1.0 / (2.0 * std::numbers::pi * q.t), 1.5) * ratio_sin;
  const double bracket = dx * dx + dy * dy + q.b_field * (q.y_f * q.x_i - q.x_f * q.y_i);
  return prefactor * std::exp(kI * (dz * dz / (2.0 * q.t))) * std::exp(kI * ratio_tan * bracket);
}

Complex kernel_cartesian_free(const CartesianKernelQuery& q) {
  if (!(q.t > 0.0)) throw Error(ErrorCode::SingularTime, "kernel needs T > 0");
  const double dx = q.x_f - q.x_i;
  const double dy = q.y_f - q.y_i;
  const double dz = q.z_f - q.z_i;
  const double prefactor = std::pow(1.0 / (2.0 * std::numbers::pi * q.t), 1.5);
  return prefactor * std::exp(kI * (dz * dz / (2.0 * q.t) + dx * dx + dy * dy));
}

Complex bessel_i(int nu, Complex z) {
  if (nu < 0) nu = -nu;  // I_{-n} = I_n for integer order
  if (std::abs(z) >= 20.0) {
    throw Error(ErrorCode::InvalidArgument, "bessel_i series limited to |z| < 20");
  }
  const Complex half = z / 2.0;
  Complex term = 1.0;
  for (int k = 1; k <= nu; ++k) term *= half / static_cast<double>(k);
  if (nu > 0 && z == Complex(0.0)) return 0.0;

  const Complex quarter_sq = half * half;
  Complex sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= quarter_sq / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (std::abs(term) <= 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

Complex kernel_polar(const PolarKernelQuery& q) {
  if (q.m_max < 1) throw Error(ErrorCode::InvalidArgument, "m_max must be at least 1");
  const double b = q.b_field;
  const double s = checked_sine(b, q.t);
  const double radial_sq = q.rho_f * q.rho_f + q.rho_i * q.rho_i;

  const Complex prefactor = (1.0 / (2.0 * std::numbers::pi * kI)) * (b / 2.0) / s;
  const Complex gauss = std::exp(-b / 4.0 * radial_sq);
  const Complex phase = std::exp(kI * (b / 4.0) * radial_sq * std::exp(-kI * (b * q.t / 2.0)) / s);
  const Complex argument = -kI * (b / 2.0) * q.rho_f * q.rho_i / s;
  const double angle = q.phi_f - q.phi_i + b * q.t / 2.0;

  Complex sum = bessel_i(0, argument);
  for (int m = 1; m <= q.m_max; ++m) {
    const Complex bessel = bessel_i(m, argument);
    sum += (std::exp(kI * (m * angle)) + std::exp(-kI * (m * angle))) * bessel;
  }
  return prefactor * gauss * phase * sum;
}

std::vector<WuYangSample> wu_yang_solve(double r_start, double r_end, std::size_t steps, double g_start,
                                        double gprime_start) {
  if (!(r_start > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_start must be positive");
  if (steps < 10) throw Error(ErrorCode::InvalidArgument, "need at least 10 steps");
  const double h = (r_end - r_start) / static_cast<double>(steps);
  if (!(h > 0.0) || r_start + h == r_start) {
    throw Error(ErrorCode::StepUnderflow, "degenerate r grid [" + std::to_string(r_start) + ", " +
                                              std::to_string(r_end) + "]");
  }

  // y = (g, g'), y' = (g', g (g^2 - 1) / r^2)
  auto accel = [](double r, double g) { return g * (g * g - 1.0) / (r * r); };

  std::vector<WuYangSample> out;
  out.reserve(steps + 1);
  double g = g_start;
  double gp = gprime_start;
  out.push_back({r_start, g, gp});
  for (std::size_t k = 0; k < steps; ++k) {
    const double r = r_start + static_cast<double>(k) * h;
    const double k1g = gp;
    const double k1p = accel(r, g);
    const double k2g = gp + 0.5 * h * k1p;
    const double k2p = accel(r + 0.5 * h, g + 0.5 * h * k1g);
    const double k3g = gp + 0.5 * h * k2p;
    const double k3p = accel(r + 0.5 * h, g + 0.5 * h * k2g);
    const double k4g = gp + h * k3p;
    const double k4p = accel(r + h, g + h * k3g);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    gp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    out.push_back({r_start + static_cast<double>(k + 1) * h, g, gp});
  }
  return out;
}

double wu_yang_series_small(double r) { return 1.0 - r * r + 0.3 * r * r * r * r; }

double wu_yang_series_small_derivative(double r) { return -2.0 * r + 1.2 * r * r * r; }

double wu_yang_series_large(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "large-r series needs r > 0");
  return 1.0 - 1.0 / r + 0.75 / (r * r);
}

}  // namespace worldline::analytic
