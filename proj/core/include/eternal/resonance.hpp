#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eternal {

enum class ResonanceVerdict { NO_IDENTICAL_RESONANCE, WITNESS_FOUND };

std::string to_string(ResonanceVerdict v);

/// mu_j = m . mu with a nonnegative multi-index m over indices 0..d-1.
struct ResonanceWitness {
  int j = 0;
  std::vector<std::uint32_t> m;

  int order() const;  // |m|
  bool operator==(const ResonanceWitness&) const = default;
};

struct ResonanceCertificate {
  int n = 0;
  int d = 0;
  int max_order = 2;               // orders h^0..h^max_order were checked
  int search_bound = 0;            // largest |m| enumerated
  std::vector<std::size_t> survivors;  // survivors[p] = count satisfying orders 0..p
  std::vector<ResonanceWitness> order0_solutions;
  std::vector<ResonanceWitness> witnesses;  // satisfy every checked order
  bool order1_vacuous = false;     // no index k < d equals n/2
  ResonanceVerdict verdict = ResonanceVerdict::NO_IDENTICAL_RESONANCE;
};

/// Exact order-by-order search for relations among the unstable eigenvalue
/// expansions of W_n restricted to the top d eigenvalues.
/// bound_override = 0 uses ceil(n^2 / (2n - 1)).
ResonanceCertificate identical_resonance_check(int n, int d, int max_order = 2,
                                               int bound_override = 0);

int resonance_search_bound(int n);

/// d < 1 + n / sqrt(2), decided exactly as 2 (d - 1)^2 < n^2.
bool fast_bound_check(int n, int d);

struct PythagoreanCase {
  mpz_class a, b, n, d;
};

/// Convergents a/b of 1 + sqrt(2) starting at 5/2.
std::vector<PythagoreanCase> pythagorean_worst_cases(std::size_t count);

/// lambda'_m = (2/3) pi^4 n^4 m^2 / (m - 1)^2 for m = 2..m_max.
std::vector<double> homogeneous_resonant_lambdas(int n, int m_max);

struct NumericResonance {
  int j = 0;
  std::vector<std::uint32_t> m;
  double defect = 0.0;
};

inline constexpr double kNumericResonanceTolerance = 1e-8;

/// All |mu_j - m . mu| < tol * mu_0 with 2 <= |m| <= min(m_max, ceil(mu_0 / mu_last) + 1).
std::vector<NumericResonance> numeric_resonance_scan(const std::vector<double>& mu, int m_max,
                                                     double tol = kNumericResonanceTolerance);

}  // namespace eternal
