#include "eternal/scalar_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "eternal/errors.hpp"

namespace eternal {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
using State2 = std::array<double, 2>;

// Integer relations a (rows) with a^T X ~ 0 for every column of X, via LLL.
struct RelationSearch {
  std::vector<std::vector<long long>> relations;
  bool ambiguous = false;
};

RelationSearch integer_relations(const std::vector<std::vector<double>>& X, double tol) {
  const std::size_t m = X.size();
  const std::size_t J = m == 0 ? 0 : X[0].size();
  const long double W = 1.0L / tol;
  const std::size_t dim = m + J;
  std::vector<std::vector<long double>> b(m, std::vector<long double>(dim, 0.0L));
  for (std::size_t i = 0; i < m; ++i) {
    b[i][i] = 1.0L;
    for (std::size_t j = 0; j < J; ++j) b[i][m + j] = W * static_cast<long double>(X[i][j]);
  }

  auto dot = [&](const std::vector<long double>& u, const std::vector<long double>& v) {
    long double s = 0.0L;
    for (std::size_t k = 0; k < dim; ++k) s += u[k] * v[k];
    return s;
  };

  std::vector<std::vector<long double>> bstar(m);
  std::vector<std::vector<long double>> mu(m, std::vector<long double>(m, 0.0L));
  std::vector<long double> B(m);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      bstar[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = B[j] > 0.0L ? dot(b[i], bstar[j]) / B[j] : 0.0L;
        for (std::size_t k = 0; k < dim; ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
      }
      B[i] = dot(bstar[i], bstar[i]);
    }
  };

  gram_schmidt();
  std::size_t k = 1;
  int guard = 0;
  while (k < m && guard++ < 100000) {
    for (std::size_t jj = k; jj-- > 0;) {
      const long double q = std::round(mu[k][jj]);
      if (q != 0.0L) {
        for (std::size_t c = 0; c < dim; ++c) b[k][c] -= q * b[jj][c];
        gram_schmidt();
      }
    }
    if (B[k] >= (0.75L - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }

  RelationSearch out;
  for (const auto& row : b) {
    std::vector<long long> a(m);
    long double height = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = static_cast<long long>(std::llround(row[i]));
      height = std::max(height, std::fabs(row[i]));
    }
    if (height == 0.0L || height > kRelationHeight) continue;
    long double residual = 0.0L;
    for (std::size_t j = 0; j < J; ++j) {
      long double s = 0.0L;
      for (std::size_t i = 0; i < m; ++i) s += static_cast<long double>(a[i]) * X[i][j];
      residual = std::max(residual, std::fabs(s));
    }
    // Generic vectors obey the Dirichlet rate residual ~ height^-e; only markedly better ones are suspicious.
    const long double e = static_cast<long double>(m - J) / static_cast<long double>(J);
    if (residual <= tol) out.relations.push_back(std::move(a));
    else if (residual <= 1e3L * tol && residual * std::pow(height, e) < 1e-3L) out.ambiguous = true;
  }
  return out;
}

int rank_of(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(rows[i][j]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  return static_cast<int>(lu.rank());
}

int real_rank(const std::vector<cplx>& g, double tol) {
  if (g.empty()) return 0;
  Eigen::MatrixXd M(2, static_cast<Eigen::Index>(g.size()));
  for (std::size_t j = 0; j < g.size(); ++j) {
    M(0, static_cast<Eigen::Index>(j)) = g[j].real();
    M(1, static_cast<Eigen::Index>(j)) = g[j].imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  return s(1) > tol * s(0) ? 2 : 1;
}

}  // namespace

PolyField::PolyField(std::vector<cplx> roots) : roots_(std::move(roots)) {
  const std::size_t d = roots_.size();
  if (d < 2) throw DomainError("polynomial field needs degree >= 2");
  double scale = 1.0;
  for (const cplx& e : roots_) scale = std::max(scale, std::abs(e));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(roots_[i] - roots_[j]) < kRootSeparation * scale)
        throw DomainError("roots are not simple within separation tolerance");

  coeffs_.assign(1, 1.0);
  for (const cplx& e : roots_) {
    std::vector<cplx> next(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      next[k + 1] += coeffs_[k];
      next[k] -= e * coeffs_[k];
    }
    coeffs_ = std::move(next);
  }
  for (std::size_t j = 0; j < d; ++j) {
    cplx p = 1.0;
    for (std::size_t i = 0; i < d; ++i)
      if (i != j) p *= roots_[j] - roots_[i];
    fprime_.push_back(p);
    etas_.push_back(1.0 / p);
  }
}

PolyField PolyField::cyclotomic(int d) {
  if (d < 2) throw DomainError("cyclotomic field needs d >= 2");
  std::vector<cplx> roots;
  for (int j = 0; j < d; ++j) roots.push_back(std::polar(1.0, 2.0 * kPi * j / d));
  return PolyField(std::move(roots));
}

cplx PolyField::operator()(cplx w) const {
  cplx s = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) s = s * w + coeffs_[k];
  return s;
}

cplx PolyField::derivative(cplx w) const {
  cplx s = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) s = s * w + static_cast<double>(k) * coeffs_[k];
  return s;
}

cplx PolyField::reversed(cplx z) const {
  // z^d f(1/z) = sum_k c_k z^{d-k}
  cplx s = 0.0;
  for (const cplx& c : coeffs_) s = s * z + c;
  return s;
}

cplx quadratic_orbit(cplx t) {
  const double k = std::round(t.imag() / kPi - 0.5);
  const cplx pole(0.0, kPi * (k + 0.5));
  if (std::abs(t - pole) < kPoleGuard) throw PoleError("tanh pole at i pi / 2 + i pi Z");
  return -std::tanh(t);
}

Trajectory integrate(const PolyField& f, cplx w0, const std::vector<cplx>& path, const IntegrateOptions& opts) {
  if (path.size() < 2) throw std::invalid_argument("integration path needs at least two vertices");
  if (opts.through_infinity && f.degree() != 2)
    throw DomainError("continuation through infinity is regular only for d = 2");

  Trajectory traj;
  bool in_z = false;
  State2 x{w0.real(), w0.imag()};
  const cplx inf(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  auto current_w = [&]() -> cplx {
    const cplx v(x[0], x[1]);
    if (!in_z) return v;
    return v == 0.0 ? inf : 1.0 / v;
  };
  traj.points.push_back({path.front(), w0});

  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplx ta = path[seg];
    const cplx dt = path[seg + 1] - ta;
    auto sys = [&](const State2& s, State2& ds, double) {
      const cplx v(s[0], s[1]);
      // dz/dt = -z^2 f(1/z) = -g(z) for d = 2
      const cplx rhs = in_z ? -f.reversed(v) * dt : f(v) * dt;
      ds[0] = rhs.real();
      ds[1] = rhs.imag();
    };
    auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State2>());
    double sigma = 0.0;
    double ds = 1e-3;
    while (sigma < 1.0) {
      if (++traj.steps > opts.max_steps) throw NumericalError("integration step budget exhausted");
      double h = std::min(ds, 1.0 - sigma);
      const bool last = h == 1.0 - sigma;
      const auto res = stepper.try_step(sys, x, sigma, h);
      if (res != odeint::success) {
        ds = h;
        if (ds < 1e-16) {
          traj.escaped = true;
          traj.escape_t = ta + sigma * dt;
          traj.final_w = current_w();
          return traj;
        }
        continue;
      }
      if (last) sigma = 1.0;
      ds = h;
      const cplx v(x[0], x[1]);
      if (!in_z && std::abs(v) > opts.escape) {
        traj.escaped = true;
        traj.escape_t = ta + sigma * dt;
        traj.final_w = v;
        traj.points.push_back({traj.escape_t, v});
        return traj;
      }
      if (opts.through_infinity) {
        if (!in_z && std::abs(v) > 2.0) {
          const cplx z = 1.0 / v;
          x = {z.real(), z.imag()};
          in_z = true;
          stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State2>());
        } else if (in_z && std::abs(v) > 2.0) {
          const cplx w = 1.0 / v;
          x = {w.real(), w.imag()};
          in_z = false;
          stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State2>());
        }
      }
      traj.points.push_back({ta + sigma * dt, current_w()});
    }
  }
  traj.final_w = current_w();
  return traj;
}

std::string to_string(LatticeClass c) {
  switch (c) {
    case LatticeClass::Z: return "Z";
    case LatticeClass::Z2: return "Z2";
    case LatticeClass::R: return "R";
    case LatticeClass::RxZ: return "RxZ";
    case LatticeClass::R2: return "R2";
    case LatticeClass::AMBIGUOUS: return "AMBIGUOUS";
  }
  return "AMBIGUOUS";
}

LatticeClass classify_lattice(const std::vector<cplx>& generators, double tol) {
  std::vector<cplx> g;
  double scale = 0.0;
  for (const cplx& v : generators) scale = std::max(scale, std::abs(v));
  for (const cplx& v : generators)
    if (std::abs(v) > tol * scale) g.push_back(v);
  if (g.empty()) throw DomainError("no nonzero generators");

  const int r = real_rank(g, tol);
  if (r == 1) {
    cplx u = g[0] / std::abs(g[0]);
    std::vector<std::vector<double>> X;
    for (const cplx& v : g) X.push_back({(v * std::conj(u)).real() / scale});
    if (g.size() == 1) return LatticeClass::Z;
    const RelationSearch rel = integer_relations(X, tol);
    if (rel.ambiguous) return LatticeClass::AMBIGUOUS;
    const int q_rank = static_cast<int>(g.size()) - rank_of(rel.relations, g.size());
    return q_rank == 1 ? LatticeClass::Z : LatticeClass::R;
  }

  // Basis pair with the best conditioned parallelogram.
  std::size_t ia = 0, ib = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double area = std::abs((std::conj(g[i]) * g[j]).imag()) / (std::abs(g[i]) * std::abs(g[j]));
      if (area > best) {
        best = area;
        ia = i;
        ib = j;
      }
    }
  const cplx b1 = g[ia], b2 = g[ib];
  const double det = (std::conj(b1) * b2).imag();
  std::vector<double> p, q;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j == ia || j == ib) continue;
    // g = p b1 + q b2 by Cramer's rule
    p.push_back((std::conj(g[j]) * b2).imag() / det);
    q.push_back((std::conj(b1) * g[j]).imag() / det);
  }
  if (p.empty()) return LatticeClass::Z2;

  const std::size_t J = p.size();
  std::vector<std::vector<double>> X(2 + J, std::vector<double>(J, 0.0));
  for (std::size_t j = 0; j < J; ++j) {
    X[0][j] = p[j];
    X[1][j] = q[j];
    X[2 + j][j] = -1.0;
  }
  const RelationSearch rel = integer_relations(X, tol);
  if (rel.ambiguous) return LatticeClass::AMBIGUOUS;
  std::vector<std::vector<long long>> kl;
  for (const auto& a : rel.relations) kl.push_back({a[0], a[1]});
  switch (rank_of(kl, 2)) {
    case 2: return LatticeClass::Z2;
    case 1: return LatticeClass::RxZ;
    default: return LatticeClass::R2;
  }
}

PeriodLattice period_lattice(const PolyField& f, double tol) {
  PeriodLattice out;
  const auto& eta = f.etas();
  const cplx two_pi_i(0.0, 2.0 * kPi);
  for (std::size_t j = 1; j < eta.size(); ++j) out.generators.push_back(two_pi_i * eta[j]);
  const std::size_t d = eta.size();
  if (d <= 20) {
    const std::uint32_t full = (1u << d) - 1u;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (mask & (1u << j)) s += eta[j];
      out.subset_sums.push_back({mask, s});
    }
  }
  out.real_rank = real_rank(out.generators, tol);
  out.closure = classify_lattice(out.generators, tol);
  return out;
}

std::vector<std::uint32_t> degeneracy_scan(const PolyField& f, double tol) {
  const auto& eta = f.etas();
  const std::size_t d = eta.size();
  if (d > 20) throw DomainError("degeneracy scan enumerates subsets for d <= 20 only");
  double scale = 1.0;
  for (const cplx& e : eta) scale = std::max(scale, std::abs(e));
  std::vector<std::uint32_t> out;
  const std::uint32_t full = (1u << d) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      if (mask & (1u << j)) s += eta[j].real();
    if (std::abs(s) < tol * scale) out.push_back(mask);
  }
  return out;
}

double reversible_invariant(double w, double v) {
  return std::exp(2.0 * w) * (0.5 * v * v + 0.5 * w * w - 2.0 * w + 1.0);
}

double reversible_energy(double w, double v) {
  return 0.5 * v * v - (std::exp(-2.0 * w) - 1.0 + 2.0 * w - 0.5 * w * w);
}

double reversible_homoclinic_turning_point() {
  auto g = [](double w) { return std::exp(-2.0 * w) - 1.0 + 2.0 * w - 0.5 * w * w; };
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(g, 2.0, 4.0, tol, iters);
  return 0.5 * (lo + hi);
}

ReversibleReport reversible_homoclinic_check(double span, std::size_t samples) {
  if (!(span > 0.0)) throw DomainError("span must be positive");
  const ReversibleReport half = reversible_example_check(reversible_homoclinic_turning_point(), 0.0, 0.0, 0.5 * span, 2);
  // time reversal maps the outgoing state at span/2 to the incoming one at -span/2
  return reversible_example_check(half.w_end, -half.v_end, 0.0, span, samples);
}

ReversibleReport reversible_example_check(double w0, double v0, double t0, double t1, std::size_t samples) {
  if (samples < 2) samples = 2;
  ReversibleReport rep;
  rep.t0 = t0;
  rep.t1 = t1;
  rep.invariant0 = reversible_invariant(w0, v0);
  rep.energy0 = reversible_energy(w0, v0);

  auto sys = [](const State2& s, State2& ds, double) {
    ds[0] = s[1];
    ds[1] = -s[1] * s[1] - s[0] * s[0] + 3.0 * s[0];
  };
  std::vector<double> times(samples);
  for (std::size_t i = 0; i < samples; ++i)
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);

  State2 x{w0, v0};
  auto observer = [&](const State2& s, double t) {
    rep.samples.emplace_back(t, s[0]);
    rep.invariant_drift = std::max(rep.invariant_drift, std::abs(reversible_invariant(s[0], s[1]) - rep.invariant0));
    rep.energy_drift = std::max(rep.energy_drift, std::abs(reversible_energy(s[0], s[1]) - rep.energy0));
    rep.w_end = s[0];
    rep.v_end = s[1];
  };
  const double dt0 = (t1 >= t0 ? 1.0 : -1.0) * 1e-3;
  odeint::integrate_times(odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State2>()), sys, x,
                          times.begin(), times.end(), dt0, observer);

  const double r2 = std::numbers::sqrt2;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = times[i];
    const double w = 2.0 + r2 * std::cos(t);
    const double v = -r2 * std::sin(t);
    const double a = -r2 * std::cos(t);
    rep.exact_solution_residual = std::max(rep.exact_solution_residual, std::abs(a + v * v + w * w - 3.0 * w));
  }
  return rep;
}

}  // namespace eternal
