#include "eternal/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eternal/elliptic.hpp"
#include "eternal/errors.hpp"
#include "eternal/parallel.hpp"
#include "eternal/spectrum.hpp"
#include "fourier.hpp"

namespace eternal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Phi {
  cplx p1, p2, p3;
};

// phi_l(z) = sum_j z^j / (j + l)!
Phi phi_functions(cplx z) {
  if (std::abs(z) < 1.0) {
    Phi out{0.0, 0.0, 0.0};
    cplx term = 1.0;  // z^j / j!
    for (int j = 0; j < 30; ++j) {
      const double jd = j;
      out.p1 += term / (jd + 1.0);
      out.p2 += term / ((jd + 1.0) * (jd + 2.0));
      out.p3 += term / ((jd + 1.0) * (jd + 2.0) * (jd + 3.0));
      term *= z / (jd + 1.0);
    }
    return out;
  }
  const cplx ez = std::exp(z);
  const cplx p1 = (ez - 1.0) / z;
  const cplx p2 = (ez - 1.0 - z) / (z * z);
  const cplx p3 = (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
  return {p1, p2, p3};
}

std::size_t storage_size(Basis b, std::size_t N) { return b == Basis::NeumannHalf ? N : 2 * N - 1; }

// Wavenumber magnitude of storage slot i.
std::size_t wavenumber(Basis b, std::size_t N, std::size_t i) {
  if (b == Basis::NeumannHalf) return i;
  const long k = static_cast<long>(i) - static_cast<long>(N - 1);
  return static_cast<std::size_t>(k < 0 ? -k : k);
}

std::size_t zero_slot(Basis b, std::size_t N) { return b == Basis::NeumannHalf ? 0 : N - 1; }

double mode_measure(Basis b, std::size_t k) {
  if (b == Basis::PeriodicUnit) return 1.0;
  return k == 0 ? 0.5 : 0.25;
}

class Stepper {
 public:
  Stepper(Basis basis, std::size_t N, double theta)
      : basis_(basis),
        N_(N),
        K_(N - 1),
        conv_(detail::good_fft_size(3 * (N - 1) + 1)),
        rot_(std::polar(1.0, theta)),
        full_(2 * (N - 1) + 1),
        L_(storage_size(basis, N)) {
    for (std::size_t i = 0; i < L_.size(); ++i) {
      const double wk = kTwoPi * static_cast<double>(wavenumber(basis, N, i));
      L_[i] = rot_ * (-wk * wk);
    }
  }

  std::size_t grid_size() const { return conv_.size(); }

  // Grid values of the field over [0, 1) (even extension for Neumann).
  std::span<cplx> grid(const std::vector<cplx>& u) {
    load(u);
    conv_.to_grid(full_, K_);
    return conv_.grid();
  }

  // e^{i theta} (6 u^2 - lambda)
  void nonlinear(const std::vector<cplx>& u, double lambda, std::vector<cplx>& out) {
    load(u);
    conv_.to_grid(full_, K_);
    conv_.square_to_spectrum(full_, K_);
    out.resize(u.size());
    if (basis_ == Basis::NeumannHalf) {
      out[0] = full_[K_];
      for (std::size_t k = 1; k < N_; ++k) out[k] = full_[K_ + k] + full_[K_ - k];
    } else {
      std::copy(full_.begin(), full_.end(), out.begin());
    }
    for (auto& v : out) v *= 6.0;
    out[zero_slot(basis_, N_)] -= lambda;
    for (auto& v : out) v *= rot_;
  }

  void set_step(double h) {
    if (h == h_) return;
    h_ = h;
    const std::size_t n = L_.size();
    E_.resize(n);
    E2_.resize(n);
    Q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx z = h * L_[i];
      const Phi full = phi_functions(z);
      const Phi half = phi_functions(0.5 * z);
      E_[i] = std::exp(z);
      E2_[i] = std::exp(0.5 * z);
      Q_[i] = 0.5 * h * half.p1;
      f1_[i] = h * (full.p1 - 3.0 * full.p2 + 4.0 * full.p3);
      f2_[i] = h * (full.p2 - 2.0 * full.p3);
      f3_[i] = h * (-full.p2 + 4.0 * full.p3);
    }
  }

  std::vector<cplx> advance(const std::vector<cplx>& u, double h, double lambda) {
    set_step(h);
    const std::size_t n = u.size();
    nonlinear(u, lambda, Nu_);
    a_.resize(n);
    for (std::size_t i = 0; i < n; ++i) a_[i] = E2_[i] * u[i] + Q_[i] * Nu_[i];
    nonlinear(a_, lambda, Na_);
    b_.resize(n);
    for (std::size_t i = 0; i < n; ++i) b_[i] = E2_[i] * u[i] + Q_[i] * Na_[i];
    nonlinear(b_, lambda, Nb_);
    c_.resize(n);
    for (std::size_t i = 0; i < n; ++i) c_[i] = E2_[i] * a_[i] + Q_[i] * (2.0 * Nb_[i] - Nu_[i]);
    nonlinear(c_, lambda, Nc_);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = E_[i] * u[i] + f1_[i] * Nu_[i] + 2.0 * f2_[i] * (Na_[i] + Nb_[i]) + f3_[i] * Nc_[i];
    return out;
  }

 private:
  void load(const std::vector<cplx>& u) {
    if (basis_ == Basis::NeumannHalf) {
      full_[K_] = u[0];
      for (std::size_t k = 1; k < N_; ++k) {
        full_[K_ + k] = 0.5 * u[k];
        full_[K_ - k] = 0.5 * u[k];
      }
    } else {
      std::copy(u.begin(), u.end(), full_.begin());
    }
  }

  Basis basis_;
  std::size_t N_, K_;
  detail::Convolver conv_;
  cplx rot_;
  std::vector<cplx> full_;
  std::vector<cplx> L_;
  double h_ = -1.0;
  std::vector<cplx> E_, E2_, Q_, f1_, f2_, f3_;
  std::vector<cplx> Nu_, Na_, Nb_, Nc_, a_, b_, c_;
};

double weighted_norm(const ComplexField& f, bool with_l2, bool with_grad) {
  const std::size_t N = f.modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const std::size_t k = wavenumber(f.basis, N, i);
    const double wk = kTwoPi * static_cast<double>(k);
    const double weight = (with_l2 ? 1.0 : 0.0) + (with_grad ? wk * wk : 0.0);
    sum += weight * mode_measure(f.basis, k) * std::norm(f.coeffs[i]);
  }
  return std::sqrt(sum);
}

double sup_of(Stepper& st, const std::vector<cplx>& u) {
  double m = 0.0;
  for (const cplx& v : st.grid(u)) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const std::vector<cplx>& u) {
  for (const cplx& v : u)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexField with_coeffs(const ComplexField& like, std::vector<cplx> coeffs, double r) {
  ComplexField out;
  out.basis = like.basis;
  out.coeffs = std::move(coeffs);
  out.r = r;
  out.theta = like.theta;
  return out;
}

}  // namespace

std::string to_string(Basis b) { return b == Basis::NeumannHalf ? "NEUMANN_HALF" : "PERIODIC_UNIT"; }

std::string to_string(BlowupReason r) {
  switch (r) {
    case BlowupReason::NORM_THRESHOLD: return "NORM_THRESHOLD";
    case BlowupReason::STEP_COLLAPSE: return "STEP_COLLAPSE";
    case BlowupReason::HORIZON: return "HORIZON";
    case BlowupReason::STOPPED: return "STOPPED";
  }
  return "UNKNOWN";
}

ComplexField ComplexField::neumann(const CosineSeries& profile, std::size_t N) {
  if (N < 1) throw std::invalid_argument("field needs at least one mode");
  ComplexField f;
  f.basis = Basis::NeumannHalf;
  f.coeffs.assign(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) f.coeffs[k] = profile[k];
  return f;
}

ComplexField ComplexField::constant(cplx value, Basis basis, std::size_t N) {
  if (N < 1) throw std::invalid_argument("field needs at least one mode");
  ComplexField f;
  f.basis = basis;
  f.coeffs.assign(storage_size(basis, N), 0.0);
  f.coeffs[zero_slot(basis, N)] = value;
  return f;
}

ComplexField ComplexField::periodic(const std::vector<std::pair<int, cplx>>& modes, std::size_t N) {
  ComplexField f = constant(0.0, Basis::PeriodicUnit, N);
  for (const auto& [k, c] : modes) {
    if (static_cast<std::size_t>(std::abs(k)) >= N) throw std::invalid_argument("mode beyond truncation");
    f.coeffs[static_cast<std::size_t>(k + static_cast<int>(N) - 1)] += c;
  }
  return f;
}

std::size_t ComplexField::modes() const {
  return basis == Basis::NeumannHalf ? coeffs.size() : (coeffs.size() + 1) / 2;
}

cplx ComplexField::coefficient(int k) const {
  const std::size_t N = modes();
  if (basis == Basis::NeumannHalf) {
    if (k < 0) k = -k;
    return static_cast<std::size_t>(k) < N ? coeffs[static_cast<std::size_t>(k)] : 0.0;
  }
  if (static_cast<std::size_t>(std::abs(k)) >= N) return 0.0;
  return coeffs[static_cast<std::size_t>(k + static_cast<int>(N) - 1)];
}

cplx ComplexField::operator()(double x) const {
  cplx sum = 0.0;
  const std::size_t N = modes();
  if (basis == Basis::NeumannHalf) {
    for (std::size_t k = 0; k < N; ++k) sum += coeffs[k] * std::cos(kTwoPi * static_cast<double>(k) * x);
  } else {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double k = static_cast<double>(static_cast<long>(i) - static_cast<long>(N - 1));
      sum += coeffs[i] * std::polar(1.0, kTwoPi * k * x);
    }
  }
  return sum;
}

double ComplexField::l2_norm() const { return weighted_norm(*this, true, false); }
double ComplexField::gradient_norm() const { return weighted_norm(*this, false, true); }
double ComplexField::h1_norm() const { return weighted_norm(*this, true, true); }

double ComplexField::sup_norm() const {
  Stepper st(basis, modes(), theta);
  return sup_of(st, coeffs);
}

std::vector<double> ComplexField::grid_values_real() const {
  Stepper st(basis, modes(), theta);
  auto g = st.grid(coeffs);
  const std::size_t count = basis == Basis::NeumannHalf ? g.size() / 2 + 1 : g.size();
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = g[j].real();
  return out;
}

bool ComplexField::finite() const { return all_finite(coeffs); }

ComplexField ComplexField::conj() const {
  ComplexField out = *this;
  if (basis == Basis::NeumannHalf) {
    for (auto& c : out.coeffs) c = std::conj(c);
  } else {
    // conj(sum c_k e^{ikx}) = sum conj(c_{-k}) e^{ikx}
    const std::size_t n = coeffs.size();
    for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = std::conj(coeffs[n - 1 - i]);
  }
  return out;
}

ComplexField ComplexField::operator-(const ComplexField& other) const {
  if (basis != other.basis || coeffs.size() != other.coeffs.size())
    throw std::invalid_argument("field shapes differ");
  ComplexField out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] -= other.coeffs[i];
  return out;
}

ComplexField step(const ComplexField& state, double dr, double lambda) {
  if (!(dr > 0.0)) throw std::invalid_argument("step requires dr > 0");
  Stepper st(state.basis, state.modes(), state.theta);
  return with_coeffs(state, st.advance(state.coeffs, dr, lambda), state.r + dr);
}

ComplexField integrate_fixed(const ComplexField& w0, double lambda, double r_end, double dr) {
  if (!(dr > 0.0)) throw std::invalid_argument("integrate_fixed requires dr > 0");
  Stepper st(w0.basis, w0.modes(), w0.theta);
  std::vector<cplx> u = w0.coeffs;
  const double start = w0.r;
  const auto steps = static_cast<std::size_t>(std::ceil((r_end - start) / dr - 1e-9));
  double r = start;
  for (std::size_t i = 0; i < steps; ++i) {
    const double h = std::min(dr, r_end - r);
    if (h <= 0.0) break;
    u = st.advance(u, h, lambda);
    r = i + 1 == steps ? r_end : r + h;
  }
  return with_coeffs(w0, std::move(u), r);
}

BlowupRecord integrate_ray(const ComplexField& w0, double lambda, double r_max,
                           const EvolveOptions& opts, const StepObserver& observer) {
  Stepper st(w0.basis, w0.modes(), w0.theta);
  BlowupRecord rec;
  rec.non_sectorial = std::abs(std::cos(w0.theta)) < 1e-12;

  std::vector<cplx> u = w0.coeffs;
  double r = w0.r;
  const double r_end = w0.r + r_max;
  double dr = std::min(opts.dr_initial, r_max);
  const double grad0 = w0.gradient_norm();
  double sup_max = 0.0;

  auto record = [&](const std::vector<cplx>& v, double at) {
    ComplexField f = with_coeffs(w0, v, at);
    HistorySample s;
    s.r = at;
    s.h1 = f.h1_norm();
    s.gradient = f.gradient_norm();
    s.sup = sup_of(st, v);
    cplx z = 0.0;
    for (const cplx& c : v) z += c;
    s.at_zero = z;
    sup_max = std::max(sup_max, s.sup);
    const double bound = 1.1 * grad0 * std::exp(12.0 * sup_max * (at - w0.r)) + 1e-12 * (1.0 + grad0);
    if (std::isfinite(bound) && s.gradient > bound) rec.gradient_bound_ok = false;
    rec.history.push_back(s);
    return s;
  };

  HistorySample last = record(u, r);
  rec.reason = BlowupReason::HORIZON;

  while (r < r_end) {
    if (rec.steps >= opts.max_steps) break;
    const double h = std::min(dr, r_end - r);
    std::vector<cplx> full = st.advance(u, h, lambda);
    std::vector<cplx> half = st.advance(u, 0.5 * h, lambda);
    half = st.advance(half, 0.5 * h, lambda);

    double err = std::numeric_limits<double>::infinity();
    if (all_finite(full) && all_finite(half)) {
      ComplexField diff = with_coeffs(w0, half, 0.0);
      for (std::size_t i = 0; i < half.size(); ++i) diff.coeffs[i] -= full[i];
      err = diff.h1_norm() / std::max(1.0, with_coeffs(w0, half, 0.0).h1_norm());
    }
    const double allowed = std::max(opts.tol * h, 256.0 * std::numeric_limits<double>::epsilon());
    if (!(err <= allowed)) {
      ++rec.rejected;
      const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(allowed / err, 0.25)) : 0.25;
      dr = h * std::min(0.9, factor);
      if (dr < opts.dr_min) {
        rec.reason = BlowupReason::STEP_COLLAPSE;
        break;
      }
      continue;
    }

    ++rec.steps;
    const double h1_new = with_coeffs(w0, half, 0.0).h1_norm();
    if (h1_new >= opts.norm_threshold) {
      // Shrink the final step to locate the threshold crossing.
      double lo = 0.0, hi = h;
      for (int it = 0; it < opts.bisection_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        std::vector<cplx> trial = st.advance(u, mid, lambda);
        if (all_finite(trial) && with_coeffs(w0, trial, 0.0).h1_norm() < opts.norm_threshold) lo = mid;
        else hi = mid;
      }
      rec.reason = BlowupReason::NORM_THRESHOLD;
      rec.diverged = true;
      r += h;
      u = std::move(half);
      last = record(u, r);
      rec.r_star_lower = r - h + lo;
      break;
    }

    u = std::move(half);
    r = (r_end - r <= h) ? r_end : r + h;
    last = record(u, r);
    const double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.25) : 2.0;
    dr = std::min(opts.dr_max, h * std::clamp(grow, 0.2, 2.0));
    if (observer && observer(with_coeffs(w0, u, r))) {
      rec.reason = BlowupReason::STOPPED;
      break;
    }
  }

  if (rec.reason != BlowupReason::NORM_THRESHOLD) rec.r_star_lower = r;
  rec.final_h1 = last.h1;
  rec.final_sup = last.sup;
  rec.final_state = with_coeffs(w0, std::move(u), r);
  return rec;
}

BlowupRecord detect_blowup(const ComplexField& w0, double lambda, double r_max, const EvolveOptions& opts) {
  return integrate_ray(w0, lambda, r_max, opts);
}

BlowupRecord schrodinger_evolve(const ComplexField& psi0, double s_end, double lambda,
                                const EvolveOptions& opts) {
  ComplexField start = psi0;
  start.r = 0.0;
  // i psi_s = F(psi) is the ray t = -i s, theta = -pi/2, for s > 0.
  start.theta = s_end >= 0.0 ? -0.5 * kPi : 0.5 * kPi;
  if (s_end == 0.0) {
    BlowupRecord rec;
    rec.final_state = start;
    rec.final_h1 = start.h1_norm();
    rec.final_sup = start.sup_norm();
    rec.non_sectorial = true;
    return rec;
  }
  return integrate_ray(start, lambda, std::abs(s_end), opts);
}

double reversibility_defect(const ComplexField& psi0, double s, double lambda, const EvolveOptions& opts) {
  const BlowupRecord back = schrodinger_evolve(psi0, -s, lambda, opts);
  const BlowupRecord fwd = schrodinger_evolve(psi0.conj(), s, lambda, opts);
  if (back.reason != BlowupReason::HORIZON || fwd.reason != BlowupReason::HORIZON)
    return std::numeric_limits<double>::quiet_NaN();
  ComplexField a = back.final_state.conj();
  a.theta = fwd.final_state.theta;
  return (a - fwd.final_state).h1_norm();
}

ShootResult heteroclinic_shoot(int n, double h, int direction, double eps, double r_max, std::size_t N,
                               const EvolveOptions& opts) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +1 or -1");
  const BranchPoint bp = branch_point(n, h);
  const SpectrumReport spec = eigen(bp.profile);
  if (spec.eigenvalues.empty() || !(spec.eigenvalues[0] > 0.0))
    throw DomainError("equilibrium has no unstable direction");

  ShootResult res;
  res.n = n;
  res.h = h;
  res.lambda = bp.lambda;
  res.direction = direction;
  res.mu0 = spec.eigenvalues[0];
  res.eps = eps > 0.0 ? eps : 1e-5 * bp.profile.l2_norm();

  CosineSeries start = bp.profile;
  CosineSeries phi0 = spec.eigenvectors[0];
  phi0 *= direction * res.eps;
  start += phi0;
  const ComplexField w0 = ComplexField::neumann(start, N);
  const double target = homogeneous_equilibria(bp.lambda).stable;

  if (direction > 0) {
    res.record = detect_blowup(w0, bp.lambda, r_max, opts);
    res.distance_to_target = std::numeric_limits<double>::infinity();
    return res;
  }

  std::vector<double> previous = w0.grid_values_real();
  auto observer = [&](const ComplexField& f) {
    std::vector<double> now = f.grid_values_real();
    double scale = 1.0;
    for (double v : now) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < now.size(); ++j)
      if (now[j] > previous[j] + 1e-11 * scale) res.monotone = false;
    previous = std::move(now);
    ComplexField diff = f;
    diff.coeffs[0] -= target;
    return diff.h1_norm() < 1e-9;
  };
  res.record = integrate_ray(w0, bp.lambda, r_max, opts, observer);
  double dist = 0.0;
  for (double v : res.record.final_state.grid_values_real()) dist = std::max(dist, std::abs(v - target));
  for (const cplx& c : res.record.final_state.coeffs) dist = std::max(dist, std::abs(c.imag()));
  res.distance_to_target = dist;
  res.converged = res.record.reason == BlowupReason::STOPPED && dist < 1e-6;
  return res;
}

BoundaryScan analyticity_boundary(const ComplexField& gamma0, const std::vector<double>& s_grid, double lambda,
                                  double r_cap, const EvolveOptions& opts, unsigned jobs) {
  auto one = [&](double s) {
    BoundarySample out;
    out.s = s;
    ComplexField start = gamma0;
    if (s != 0.0) {
      const BlowupRecord leg = schrodinger_evolve(gamma0, s, lambda, opts);
      if (leg.reason != BlowupReason::HORIZON) {
        out.schrodinger_ok = false;
        out.r_star = std::numeric_limits<double>::quiet_NaN();
        out.reason = leg.reason;
        return out;
      }
      start = leg.final_state;
    }
    start.r = 0.0;
    start.theta = 0.0;
    const BlowupRecord rec = detect_blowup(start, lambda, r_cap, opts);
    out.reason = rec.reason;
    out.finite = rec.reason == BlowupReason::NORM_THRESHOLD || rec.reason == BlowupReason::STEP_COLLAPSE;
    out.r_star = out.finite ? rec.r_star_lower : r_cap;
    return out;
  };

  BoundaryScan scan;
  scan.samples = parallel_map(s_grid, one, jobs);
  for (const auto& smp : scan.samples) {
    if (!smp.finite) continue;
    if (!scan.corner_found || smp.r_star < scan.corner_r) {
      scan.corner_found = true;
      scan.corner_r = smp.r_star;
      scan.corner_s = smp.s;
    }
  }
  return scan;
}

}  // namespace eternal
