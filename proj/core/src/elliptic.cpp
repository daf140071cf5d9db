#include "eternal/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eternal/errors.hpp"

namespace eternal {

namespace {

constexpr double kPi = std::numbers::pi;
// sigma3(k) <= zeta(3) k^3
constexpr double kZeta3 = 1.2020569031595942;
constexpr std::size_t kMaxTruncation = 200000;

void check_branch_args(int n, double h) {
  if (n < 1) throw DomainError("mode n must be >= 1, got " + std::to_string(n));
  if (!(std::abs(h) < 1.0)) throw DomainError("modular coordinate requires |h| < 1");
}

// Certified bound on 240 sum_{k>K} sigma3(k) h^{2k}, relative to the leading 1.
double lambda_tail_bound(double h, std::size_t K) {
  const double q = h * h;
  const double k1 = static_cast<double>(K + 1);
  const double ratio = std::pow((k1 + 1.0) / k1, 3) * q;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return 240.0 * kZeta3 * k1 * k1 * k1 * std::pow(q, k1) / (1.0 - ratio);
}

// Certified bound on sum_{k>K} 8 k |h|^k / (1 - h^{2k}), relative to (n pi)^2.
// Also dominates the tail of the constant term eta.
double profile_tail_bound(double h, std::size_t K) {
  const double a = std::abs(h);
  const double k1 = static_cast<double>(K + 1);
  const double ratio = (k1 + 1.0) / k1 * a;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return 8.0 * k1 * std::pow(a, k1) / ((1.0 - std::pow(a, 2.0 * k1)) * (1.0 - ratio));
}

}  // namespace

std::uint64_t sigma3(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("sigma3 requires k >= 1");
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    const std::uint64_t e = k / d;
    sum += d * d * d;
    if (e != d) sum += e * e * e;
  }
  return sum;
}

double pitchfork_lambda(int n) {
  const double np = n * kPi;
  return 2.0 / 3.0 * np * np * np * np;
}

std::size_t default_truncation(double h, double tol) {
  if (h == 0.0) return 0;
  if (!(std::abs(h) < 1.0)) throw DomainError("modular coordinate requires |h| < 1");
  std::size_t K = 32;
  const double guess = std::ceil(std::log(tol) / std::log(std::abs(h)));
  if (guess > static_cast<double>(K)) K = static_cast<std::size_t>(guess);
  while (lambda_tail_bound(h, K) >= tol || profile_tail_bound(h, K) >= tol) {
    K += K / 4 + 1;
    if (K > kMaxTruncation) throw TruncationError("no truncation certifies the tail tolerance");
  }
  return K;
}

double lambda_of_h(int n, double h, std::size_t K, double tail_tol) {
  check_branch_args(n, h);
  if (h == 0.0) return pitchfork_lambda(n);
  if (lambda_tail_bound(h, K) >= tail_tol)
    throw TruncationError("lambda series tail exceeds tolerance at K = " + std::to_string(K));
  const double q = h * h;
  // Sum small terms first.
  double series = 0.0;
  for (std::size_t k = K; k >= 1; --k)
    series += static_cast<double>(sigma3(k)) * std::pow(q, static_cast<double>(k));
  return pitchfork_lambda(n) * (1.0 + 240.0 * series);
}

double lambda_of_h(int n, double h) {
  check_branch_args(n, h);
  return lambda_of_h(n, h, default_truncation(h));
}

CosineSeries equilibrium_profile(int n, double h, std::size_t K, double tail_tol) {
  check_branch_args(n, h);
  const double scale = (n * kPi) * (n * kPi);
  if (h == 0.0) return CosineSeries::constant(scale / 3.0);
  if (profile_tail_bound(h, K) >= tail_tol)
    throw TruncationError("profile tail exceeds tolerance at K = " + std::to_string(K));

  std::vector<double> coeffs(static_cast<std::size_t>(n) * K + 1, 0.0);
  double eta_sum = 0.0;
  for (std::size_t k = K; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const double hk = std::pow(h, kd);
    const double h2k = hk * hk;
    coeffs[static_cast<std::size_t>(n) * k] = scale * 8.0 * kd * hk / (1.0 - h2k);
    eta_sum += kd * h2k / (1.0 - h2k);
  }
  coeffs[0] = scale * (1.0 / 3.0 - 8.0 * eta_sum);
  return CosineSeries(std::move(coeffs));
}

CosineSeries equilibrium_profile(int n, double h) {
  check_branch_args(n, h);
  return equilibrium_profile(n, h, default_truncation(h));
}

std::pair<CosineSeries, double> rescale(const CosineSeries& profile, double lambda, int m) {
  if (m < 1) throw std::invalid_argument("rescale factor must be >= 1");
  const auto mm = static_cast<std::size_t>(m);
  std::vector<double> out(mm * profile.truncation() + 1, 0.0);
  const double s = static_cast<double>(m) * m;
  for (std::size_t k = 0; k < profile.size(); ++k) out[mm * k] = s * profile[k];
  return {CosineSeries(std::move(out)), s * s * lambda};
}

double residual(const CosineSeries& profile, double lambda) {
  CosineSeries r = profile.second_derivative();
  r += 6.0 * profile.product(profile);
  r -= CosineSeries::constant(lambda);
  return r.l2_norm();
}

HomogeneousEquilibria homogeneous_equilibria(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("homogeneous equilibria require lambda > 0");
  const double w = std::sqrt(lambda / 6.0);
  return {-w, w};
}

BranchPoint branch_point(int n, double h, double tail_tol) {
  check_branch_args(n, h);
  BranchPoint p;
  p.n = n;
  p.h = h;
  p.theta = h == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(std::abs(h)) / kPi;
  const std::size_t K = default_truncation(h, tail_tol);
  p.lambda = h == 0.0 ? pitchfork_lambda(n) : lambda_of_h(n, h, K, tail_tol);
  p.profile = equilibrium_profile(n, h, K, tail_tol);
  p.residual = residual(p.profile, p.lambda);
  return p;
}

double h_of_lambda(int n, double lambda, int sign, double h_max) {
  const double lo_lambda = pitchfork_lambda(n);
  if (lambda < lo_lambda) throw DomainError("lambda below the pitchfork point has no W_n");
  if (lambda_of_h(n, h_max) < lambda) throw DomainError("lambda beyond the bracketed branch");
  double lo = 0.0;
  double hi = h_max;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_of_h(n, mid) < lambda) lo = mid;
    else hi = mid;
  }
  const double h = 0.5 * (lo + hi);
  return sign < 0 ? -h : h;
}

}  // namespace eternal
