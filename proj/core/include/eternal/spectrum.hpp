#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "eternal/cosine_series.hpp"

namespace eternal {

inline constexpr double kDegeneracyTolerance = 1e-8;
inline constexpr double kSpectrumRefineTolerance = 1e-9;

/// Matrix of L = d^2/dx^2 + 12 W in the orthonormal cosine basis of L2(0, 1/2),
/// e_0 = sqrt(2), e_k = 2 cos(2 pi k x), modes 0..N-1.
/// Throws AccuracyError when N < 2 K, K the last nonzero harmonic of the profile.
Eigen::MatrixXd assemble_operator(const CosineSeries& profile, std::size_t N);

struct SpectrumReport {
  std::vector<double> eigenvalues;         // descending
  std::vector<CosineSeries> eigenvectors;  // L2-normalized, cosine coefficients
  int morse_index = 0;
  std::size_t N = 0;
  bool near_degenerate = false;
  bool converged = false;
  double refinement_change = 0.0;  // max relative change of mu_0..mu_10 under N -> 2N
  bool sturm_consistent = true;    // eigenvector k has k sign changes
};

/// Galerkin spectrum of the linearization at the profile. N = 0 picks 4 K + 32.
/// `vectors` bounds how many leading eigenvectors are stored.
SpectrumReport eigen(const CosineSeries& profile, std::size_t N = 0, std::size_t vectors = 12);

/// Effective truncation: last harmonic with a coefficient above 1e-17 of the peak.
std::size_t effective_truncation(const CosineSeries& profile);

/// Second order expansion 4 pi^2 (mu0 + mu1 h + mu2 h^2) of mu_k along W_n.
/// The mu2 formula is singular at k = n/2, which takes its own branch.
double perturbation_mu(int n, int k, double h);

struct PerturbationCoefficients {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};
PerturbationCoefficients perturbation_coefficients(int n, int k);

/// mu_{+,k} = -2 sqrt(6 lambda) - (2 pi k)^2 at W_0, k = 0..count-1.
std::vector<double> target_spectrum(double lambda, std::size_t count);

/// mu_{inf,k} = 2 sqrt(6 lambda) - (2 pi k)^2 at W_inf, k = 0..count-1.
std::vector<double> homogeneous_spectrum(double lambda, std::size_t count);

/// Number of k >= 0 with (2 pi k)^2 < 2 sqrt(6 lambda).
int homogeneous_morse_index(double lambda);

}  // namespace eternal
