#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eternal/cosine_series.hpp"

namespace eternal {

using cplx = std::complex<double>;

enum class Basis { NeumannHalf, PeriodicUnit };

std::string to_string(Basis b);

/// Complex field on a spatial Fourier basis, at ray position r and inclination theta.
///
/// NeumannHalf: w(x) = sum_{k<N} a_k cos(2 pi k x) on [0, 1/2], coeffs = a_0..a_{N-1}.
/// PeriodicUnit: w(x) = sum_{|k|<N} c_k exp(2 pi i k x) on [0, 1), coeffs = c_{-(N-1)}..c_{N-1}.
struct ComplexField {
  Basis basis = Basis::NeumannHalf;
  std::vector<cplx> coeffs;
  double r = 0.0;
  double theta = 0.0;

  static ComplexField neumann(const CosineSeries& profile, std::size_t N);
  static ComplexField constant(cplx value, Basis basis, std::size_t N);
  /// Periodic field from (k, c_k) pairs, |k| < N.
  static ComplexField periodic(const std::vector<std::pair<int, cplx>>& modes, std::size_t N);

  std::size_t modes() const;
  cplx coefficient(int k) const;  // a_k or c_k
  cplx operator()(double x) const;

  double l2_norm() const;
  double gradient_norm() const;  // ||w_x||_{L2}
  double h1_norm() const;
  /// Maximum modulus over the dealiased transform grid.
  double sup_norm() const;
  /// Real parts sampled on the transform grid restricted to the physical interval.
  std::vector<double> grid_values_real() const;
  bool finite() const;

  ComplexField conj() const;
  ComplexField operator-(const ComplexField& other) const;
};

/// One fourth-order exponential time differencing step of
/// exp(-i theta) w_r = w_xx + 6 w^2 - lambda at the field's own theta.
ComplexField step(const ComplexField& state, double dr, double lambda);

/// Fixed-step integration to r_end (last step shortened).
ComplexField integrate_fixed(const ComplexField& w0, double lambda, double r_end, double dr);

enum class BlowupReason { NORM_THRESHOLD, STEP_COLLAPSE, HORIZON, STOPPED };

std::string to_string(BlowupReason r);

struct EvolveOptions {
  double tol = 1e-9;  // step-doubling error per unit ray length
  double dr_initial = 1e-4;
  double dr_min = 1e-12;
  double dr_max = 0.05;
  double norm_threshold = 1e8;
  std::size_t max_steps = 2000000;
  int bisection_iterations = 30;
};

struct HistorySample {
  double r = 0.0;
  double h1 = 0.0;
  double sup = 0.0;
  double gradient = 0.0;
  cplx at_zero;  // w(r, 0)
};

struct BlowupRecord {
  double r_star_lower = 0.0;
  bool diverged = false;
  double final_h1 = 0.0;
  double final_sup = 0.0;
  BlowupReason reason = BlowupReason::HORIZON;
  bool non_sectorial = false;      // |theta| = pi/2
  bool gradient_bound_ok = true;   // ||w_x(r)|| <= 1.1 ||w_x(0)|| exp(12 C r), C = running sup
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::vector<HistorySample> history;
  ComplexField final_state;
};

/// Observer called after every accepted step; returning true stops the run.
using StepObserver = std::function<bool(const ComplexField&)>;

/// Adaptive integration along the ray until r_max, norm threshold, step collapse or observer stop.
BlowupRecord integrate_ray(const ComplexField& w0, double lambda, double r_max,
                           const EvolveOptions& opts = {}, const StepObserver& observer = {});

BlowupRecord detect_blowup(const ComplexField& w0, double lambda, double r_max,
                           const EvolveOptions& opts = {});

/// i psi_s = psi_xx + 6 psi^2 - lambda, for s from 0 to s_end (either sign).
BlowupRecord schrodinger_evolve(const ComplexField& psi0, double s_end, double lambda,
                                const EvolveOptions& opts = {});

/// || conj(S^{-s} psi0) - S^{s}(conj psi0) ||_{H1}; NaN if either leg diverges.
double reversibility_defect(const ComplexField& psi0, double s, double lambda,
                            const EvolveOptions& opts = {});

struct ShootResult {
  int n = 1;
  double h = 0.0;
  double lambda = 0.0;
  int direction = -1;
  double eps = 0.0;
  double mu0 = 0.0;
  bool converged = false;           // reached W_0 within target_distance in H1
  bool monotone = true;             // w decreased at every grid point on every step
  double distance_to_target = 0.0;  // sup-norm distance to W_0 at the end
  BlowupRecord record;
};

inline constexpr std::size_t kDefaultModes = 256;

/// Launch from W_n + direction * eps * phi_0 along theta = 0. eps = 0 picks 1e-5 ||W_n||.
ShootResult heteroclinic_shoot(int n, double h, int direction, double eps = 0.0,
                               double r_max = 10.0, std::size_t N = kDefaultModes,
                               const EvolveOptions& opts = {});

struct BoundarySample {
  double s = 0.0;
  bool schrodinger_ok = true;  // imaginary leg reached i s
  bool finite = false;         // real leg stopped before r_cap
  double r_star = 0.0;
  BlowupReason reason = BlowupReason::HORIZON;
};

struct BoundaryScan {
  std::vector<BoundarySample> samples;
  bool corner_found = false;
  double corner_r = 0.0;
  double corner_s = 0.0;
};

/// r*(s) by an imaginary leg to i s followed by a real leg toward r_cap.
BoundaryScan analyticity_boundary(const ComplexField& gamma0, const std::vector<double>& s_grid,
                                  double lambda, double r_cap, const EvolveOptions& opts = {},
                                  unsigned jobs = 1);

}  // namespace eternal
