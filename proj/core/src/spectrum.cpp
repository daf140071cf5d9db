#include "eternal/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eternal/errors.hpp"

namespace eternal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double basis_scale(std::size_t k) { return k == 0 ? std::numbers::sqrt2 : 2.0; }

// int_0^{1/2} cos(2 pi m x) cos(2 pi m x) dx
double mode_weight(std::size_t m) { return m == 0 ? 0.5 : 0.25; }

std::vector<double> descending_eigenvalues(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t effective_truncation(const CosineSeries& profile) {
  double peak = 0.0;
  for (double a : profile.coeffs()) peak = std::max(peak, std::abs(a));
  std::size_t K = 0;
  for (std::size_t k = 0; k < profile.size(); ++k)
    if (std::abs(profile[k]) > 1e-17 * peak) K = k;
  return K;
}

Eigen::MatrixXd assemble_operator(const CosineSeries& profile, std::size_t N) {
  const std::size_t K = effective_truncation(profile);
  if (N == 0 || N < 2 * K)
    throw AccuracyError("Galerkin dimension " + std::to_string(N) + " below 2K = " +
                        std::to_string(2 * K));
  Eigen::MatrixXd M(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = k; l < N; ++l) {
      const std::size_t diff = k > l ? k - l : l - k;
      const std::size_t sum = k + l;
      double v = 0.0;
      if (diff <= K) v += profile[diff] * mode_weight(diff);
      if (sum <= K) v += profile[sum] * mode_weight(sum);
      v *= 6.0 * basis_scale(k) * basis_scale(l);
      if (k == l) {
        const double wk = kTwoPi * static_cast<double>(k);
        v -= wk * wk;
      }
      M(k, l) = v;
      M(l, k) = v;
    }
  }
  return M;
}

SpectrumReport eigen(const CosineSeries& profile, std::size_t N, std::size_t vectors) {
  const std::size_t K = effective_truncation(profile);
  if (N == 0) N = 4 * K + 32;
  const Eigen::MatrixXd M = assemble_operator(profile, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");

  SpectrumReport rep;
  rep.N = N;
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  rep.eigenvalues.resize(N);
  for (std::size_t i = 0; i < N; ++i) rep.eigenvalues[i] = vals(static_cast<Eigen::Index>(N - 1 - i));

  for (std::size_t i = 0; i < N; ++i) {
    if (rep.eigenvalues[i] > 0.0) ++rep.morse_index;
    if (i + 1 < N && rep.eigenvalues[i] - rep.eigenvalues[i + 1] < kDegeneracyTolerance)
      rep.near_degenerate = true;
  }

  const std::size_t keep = std::min(vectors, N);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto col = static_cast<Eigen::Index>(N - 1 - i);
    std::vector<double> a(N);
    for (std::size_t k = 0; k < N; ++k)
      a[k] = vecs(static_cast<Eigen::Index>(k), col) * basis_scale(k);
    CosineSeries phi(std::move(a));
    if (phi(0.0) < 0.0) phi *= -1.0;
    if (phi.sign_changes() != static_cast<int>(i)) rep.sturm_consistent = false;
    rep.eigenvectors.push_back(std::move(phi));
  }

  const std::vector<double> fine = descending_eigenvalues(assemble_operator(profile, 2 * N));
  const std::size_t check = std::min<std::size_t>(11, N);
  // eigenvalues near zero carry roundoff of the whole spectrum's scale
  const double scale = std::max(1.0, std::abs(fine[0]));
  for (std::size_t i = 0; i < check; ++i) {
    const double rel = std::abs(fine[i] - rep.eigenvalues[i]) / std::max(scale, std::abs(fine[i]));
    rep.refinement_change = std::max(rep.refinement_change, rel);
  }
  rep.converged = rep.refinement_change < kSpectrumRefineTolerance;
  return rep;
}

PerturbationCoefficients perturbation_coefficients(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("perturbation_mu requires n >= 1, k >= 0");
  const double n2 = static_cast<double>(n) * n;
  const double k2 = static_cast<double>(k) * k;
  PerturbationCoefficients c;
  c.mu0 = n2 - k2;
  if (2 * k == n) {
    c.mu1 = 12.0 * n2;
    c.mu2 = 48.0 * n2;
  } else {
    c.mu2 = 24.0 * n2 * (11.0 * n2 + 4.0 * k2) / (n2 - 4.0 * k2);
  }
  return c;
}

double perturbation_mu(int n, int k, double h) {
  const auto c = perturbation_coefficients(n, k);
  return kFourPiSq * (c.mu0 + h * (c.mu1 + h * c.mu2));
}

std::vector<double> target_spectrum(double lambda, std::size_t count) {
  if (!(lambda > 0.0)) throw DomainError("target spectrum requires lambda > 0");
  const double s = 2.0 * std::sqrt(6.0 * lambda);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double wk = kTwoPi * static_cast<double>(k);
    out[k] = -s - wk * wk;
  }
  return out;
}

std::vector<double> homogeneous_spectrum(double lambda, std::size_t count) {
  if (!(lambda > 0.0)) throw DomainError("homogeneous spectrum requires lambda > 0");
  const double s = 2.0 * std::sqrt(6.0 * lambda);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double wk = kTwoPi * static_cast<double>(k);
    out[k] = s - wk * wk;
  }
  return out;
}

int homogeneous_morse_index(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("homogeneous spectrum requires lambda > 0");
  const double s = 2.0 * std::sqrt(6.0 * lambda);
  int count = 0;
  for (;; ++count) {
    const double wk = kTwoPi * count;
    if (wk * wk >= s) break;
  }
  return count;
}

}  // namespace eternal
