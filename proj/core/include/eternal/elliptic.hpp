#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "eternal/cosine_series.hpp"

namespace eternal {

inline constexpr double kDefaultTailTolerance = 1e-13;

/// Sum of cubes of all divisors of k (including 1 and k). Throws std::invalid_argument for k = 0.
std::uint64_t sigma3(std::uint64_t k);

/// Bifurcation point lambda_{n0} = (2/3) (n pi)^4 of the n-th pitchfork.
double pitchfork_lambda(int n);

/// Adaptive truncation: max(32, ceil(log tol / log|h|)), then grown until the
/// geometric tail bounds of both the lambda series and the profile coefficients
/// drop below tol. Returns 0 for h = 0.
std::size_t default_truncation(double h, double tol = kDefaultTailTolerance);

/// lambda_n(h) = (2/3)(n pi)^4 (1 + 240 sum_{k<=K} sigma3(k) h^{2k}).
/// Throws DomainError for |h| >= 1 or n < 1, TruncationError when the certified
/// relative tail at K exceeds tail_tol.
double lambda_of_h(int n, double h, std::size_t K, double tail_tol = kDefaultTailTolerance);
double lambda_of_h(int n, double h);

/// Real equilibrium W_n at modular coordinate h as a cosine series with
/// harmonics 0..n*K. Only multiples of n are nonzero. h = 0 returns the
/// exact constant (n pi)^2 / 3.
CosineSeries equilibrium_profile(int n, double h, std::size_t K,
                                 double tail_tol = kDefaultTailTolerance);
CosineSeries equilibrium_profile(int n, double h);

/// x -> m^2 W(m x), lambda -> m^4 lambda. Maps a solution of the
/// equilibrium problem onto another (reflection-periodic extension).
std::pair<CosineSeries, double> rescale(const CosineSeries& profile, double lambda, int m);

/// L2(0,1/2) norm of W_xx + 6 W^2 - lambda, evaluated exactly in coefficient space.
double residual(const CosineSeries& profile, double lambda);

struct HomogeneousEquilibria {
  double stable;    ///< W_0 = -sqrt(lambda/6)
  double unstable;  ///< W_inf = +sqrt(lambda/6)
};

HomogeneousEquilibria homogeneous_equilibria(double lambda);

/// One point on the bifurcation diagram of W_n.
struct BranchPoint {
  int n = 1;
  double h = 0.0;
  double theta = 0.0;  ///< h = +-exp(-pi theta); +inf at h = 0
  double lambda = 0.0;
  CosineSeries profile;
  double residual = 0.0;

  double value_at_zero() const { return profile(0.0); }
};

BranchPoint branch_point(int n, double h, double tail_tol = kDefaultTailTolerance);

/// Inverse of lambda_of_h on the branch with sign(h) = sign, by monotone bisection.
/// Requires lambda >= pitchfork_lambda(n).
double h_of_lambda(int n, double lambda, int sign = 1, double h_max = 0.9);

}  // namespace eternal
