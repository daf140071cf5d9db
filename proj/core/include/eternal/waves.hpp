#pragma once

#include <complex>
#include <vector>

namespace eternal {

using cplx = std::complex<double>;

struct WaveParams {
  double c = 0.0;
  double mu_minus = 0.0;  // unstable eigenvalue at W = -1
  double p = 0.0;         // 2 pi / mu_minus
  cplx mu_plus[2];        // eigenvalue pair at W = +1
  bool mu_plus_real = false;
};

/// Gamma(xi) = -1 + 3 sech^2(xi / sqrt 2). Throws PoleError near cosh(xi / sqrt 2) = 0.
cplx soliton(cplx xi);
double soliton(double xi);
/// Gamma'' in closed form.
double soliton_second_derivative(double xi);
/// |Gamma'' + Gamma^2 - 1| at xi.
double soliton_residual(double xi);

WaveParams wave_params(double c);

/// c_m = sqrt 2 (sqrt m + 1 / sqrt m), m = 1..m_max.
std::vector<double> resonant_speeds(int m_max);

/// True when mu_plus(c) is a real pair whose ratio is p / q with q <= max_den within tol.
bool mu_plus_ratio_rational(double c, int max_den = 1000, double tol = 1e-10);

}  // namespace eternal
