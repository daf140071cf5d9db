#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace eternal {

using cplx = std::complex<double>;

inline constexpr double kRootSeparation = 1e-8;
inline constexpr double kPoleGuard = 1e-12;

/// Monic polynomial f(w) = prod_j (w - e_j) with simple roots.
class PolyField {
 public:
  explicit PolyField(std::vector<cplx> roots);

  /// f(w) = w^d - 1 with e_j = exp(2 pi i j / d).
  static PolyField cyclotomic(int d);

  int degree() const { return static_cast<int>(roots_.size()); }
  const std::vector<cplx>& roots() const { return roots_; }
  /// c_0..c_d with c_d = 1.
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  const std::vector<cplx>& derivatives() const { return fprime_; }  // f'(e_j)
  const std::vector<cplx>& etas() const { return etas_; }           // 1 / f'(e_j)

  cplx operator()(cplx w) const;
  cplx derivative(cplx w) const;
  /// g(z) = z^d f(1/z); g(0) = 1.
  cplx reversed(cplx z) const;

 private:
  std::vector<cplx> roots_;
  std::vector<cplx> coeffs_;
  std::vector<cplx> fprime_;
  std::vector<cplx> etas_;
};

/// Gamma(t) = -tanh t. Throws PoleError within kPoleGuard of i pi / 2 + i pi Z.
cplx quadratic_orbit(cplx t);

struct IntegrateOptions {
  double rtol = 1e-12;
  double atol = 1e-13;
  double escape = 1e12;
  /// d = 2 only: continue through w = infinity in the chart z = 1 / w.
  bool through_infinity = false;
  std::size_t max_steps = 1000000;
};

struct TrajectoryPoint {
  cplx t;
  cplx w;  // infinity is reported as (inf, inf)
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  cplx final_w;
  bool escaped = false;
  cplx escape_t;  // parameter where |w| first exceeded the escape radius
  std::size_t steps = 0;
};

/// Adaptive Dormand-Prince integration of dw/dt = f(w) along a polyline in complex t.
Trajectory integrate(const PolyField& f, cplx w0, const std::vector<cplx>& path,
                     const IntegrateOptions& opts = {});

enum class LatticeClass { Z, Z2, R, RxZ, R2, AMBIGUOUS };

std::string to_string(LatticeClass c);

struct SubsetSum {
  std::uint32_t mask = 0;
  cplx sum;
};

struct PeriodLattice {
  std::vector<cplx> generators;  // 2 pi i eta_1 .. 2 pi i eta_{d-1}
  std::vector<SubsetSum> subset_sums;  // proper nonempty subsets of all eta (d <= 20)
  int real_rank = 0;
  LatticeClass closure = LatticeClass::AMBIGUOUS;
};

inline constexpr double kRelationHeight = 1e6;

/// Closure type of the additive subgroup of C generated by the given numbers.
LatticeClass classify_lattice(const std::vector<cplx>& generators, double tol = 1e-9);

PeriodLattice period_lattice(const PolyField& f, double tol = 1e-9);

/// Proper nonempty J with |sum_{j in J} Re eta_j| < tol, as bit masks over root indices.
std::vector<std::uint32_t> degeneracy_scan(const PolyField& f, double tol = 1e-9);

/// Second order reversible example w'' + w'^2 + w^2 - 3 w = 0.
struct ReversibleReport {
  double t0 = 0.0;
  double t1 = 0.0;
  double w_end = 0.0;
  double v_end = 0.0;
  double invariant0 = 0.0;          // I = e^{2w} (v^2/2 + w^2/2 - 2w + 1)
  double invariant_drift = 0.0;     // max |I - I(t0)|
  double energy0 = 0.0;             // E = v^2/2 - (e^{-2w} - 1 + 2w - w^2/2)
  double energy_drift = 0.0;        // max |E - E(t0)|
  double exact_solution_residual = 0.0;  // max residual of 2 + sqrt(2) cos t at samples
  std::vector<std::pair<double, double>> samples;  // (t, w)
};

ReversibleReport reversible_example_check(double w0, double v0, double t0, double t1,
                                          std::size_t samples = 200);

/// First integral I and the level function E of the reversible example.
double reversible_invariant(double w, double v);
double reversible_energy(double w, double v);

/// Turning point w* > 0 of the homoclinic orbit of w = 0 (I = 1, v = 0).
double reversible_homoclinic_turning_point();

// Runs the homoclinic orbit over [0, span] with the turning point at span / 2, so the
// unstable direction of w = 0 only amplifies errors over half the run.
ReversibleReport reversible_homoclinic_check(double span = 20.0, std::size_t samples = 2000);

}  // namespace eternal
