#include "eternal/waves.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eternal/errors.hpp"

namespace eternal {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

cplx soliton(cplx xi) {
  const cplx ch = std::cosh(xi / kSqrt2);
  if (std::abs(ch) < 1e-12) throw PoleError("soliton pole at xi = i pi sqrt(2) (k + 1/2)");
  return -1.0 + 3.0 / (ch * ch);
}

double soliton(double xi) {
  const double s = 1.0 / std::cosh(xi / kSqrt2);
  return -1.0 + 3.0 * s * s;
}

double soliton_second_derivative(double xi) {
  const double s = 1.0 / std::cosh(xi / kSqrt2);
  const double s2 = s * s;
  return 6.0 * s2 - 9.0 * s2 * s2;
}

double soliton_residual(double xi) {
  const double g = soliton(xi);
  return std::abs(soliton_second_derivative(xi) + g * g - 1.0);
}

WaveParams wave_params(double c) {
  if (!(c >= 0.0)) throw DomainError("wave speed must be >= 0");
  WaveParams w;
  w.c = c;
  const double root = std::sqrt(c * c + 8.0);
  w.mu_minus = 0.5 * (-c + root);
  w.p = 4.0 * std::numbers::pi / (-c + root);
  const double disc = c * c - 8.0;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    w.mu_plus[0] = 0.5 * (-c + r);
    w.mu_plus[1] = 0.5 * (-c - r);
    w.mu_plus_real = true;
  } else {
    const double r = std::sqrt(-disc);
    w.mu_plus[0] = cplx(-0.5 * c, 0.5 * r);
    w.mu_plus[1] = cplx(-0.5 * c, -0.5 * r);
  }
  return w;
}

std::vector<double> resonant_speeds(int m_max) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  std::vector<double> out;
  for (int m = 1; m <= m_max; ++m) {
    const double sm = std::sqrt(static_cast<double>(m));
    out.push_back(kSqrt2 * (sm + 1.0 / sm));
  }
  return out;
}

bool mu_plus_ratio_rational(double c, int max_den, double tol) {
  const WaveParams w = wave_params(c);
  if (!w.mu_plus_real) return false;
  const double ratio = w.mu_plus[1].real() / w.mu_plus[0].real();
  for (int q = 1; q <= max_den; ++q) {
    const double pq = ratio * q;
    if (std::abs(pq - std::round(pq)) < tol * q) return true;
  }
  return false;
}

}  // namespace eternal
