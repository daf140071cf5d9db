#include "eternal/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "eternal/errors.hpp"

namespace eternal {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericalError("integer overflow in resonance search");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw NumericalError("integer overflow in resonance search");
  return r;
}

mpq_class mu1_coefficient(int n, int k) {
  return 2 * k == n ? mpq_class(12) * n * n : mpq_class(0);
}

mpq_class mu2_coefficient(int n, int k) {
  const mpz_class n2 = mpz_class(n) * n;
  const mpz_class k2 = mpz_class(k) * k;
  if (2 * k == n) return mpq_class(48 * n2);
  mpq_class q(24 * n2 * (11 * n2 + 4 * k2), n2 - 4 * k2);
  q.canonicalize();
  return q;
}

// Enumerates m over indices first..d-1 with sum m_k c_k = remaining.
struct Order0Search {
  const std::vector<std::int64_t>& c;
  int bound;
  int j;
  std::vector<std::uint32_t> m;
  std::vector<ResonanceWitness>& out;

  void run(std::size_t first, std::int64_t remaining, int used) {
    if (remaining == 0) {
      if (used >= 2) out.push_back({j, m});
      return;
    }
    if (first == c.size() || used == bound) return;
    const std::int64_t ck = c[first];
    const std::int64_t most = std::min<std::int64_t>(remaining / ck, bound - used);
    for (std::int64_t t = most; t >= 0; --t) {
      m[first] = static_cast<std::uint32_t>(t);
      run(first + 1, checked_sub(remaining, checked_mul(t, ck)), used + static_cast<int>(t));
    }
    m[first] = 0;
  }
};

}  // namespace

std::string to_string(ResonanceVerdict v) {
  return v == ResonanceVerdict::NO_IDENTICAL_RESONANCE ? "NO_IDENTICAL_RESONANCE" : "WITNESS_FOUND";
}

int ResonanceWitness::order() const {
  return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

int resonance_search_bound(int n) {
  if (n < 1) throw std::invalid_argument("mode n must be >= 1");
  const std::int64_t num = checked_mul(n, n);
  const std::int64_t den = 2 * static_cast<std::int64_t>(n) - 1;
  return static_cast<int>((num + den - 1) / den);
}

ResonanceCertificate identical_resonance_check(int n, int d, int max_order, int bound_override) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("identical_resonance_check requires 1 <= d <= n");
  if (max_order < 0 || max_order > 2) throw std::invalid_argument("orders h^0..h^2 only");

  ResonanceCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.max_order = max_order;
  cert.search_bound = bound_override > 0 ? bound_override : resonance_search_bound(n);
  cert.order1_vacuous = !(n % 2 == 0 && n / 2 < d);

  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  const std::int64_t n2 = checked_mul(n, n);
  for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = checked_sub(n2, checked_mul(k, k));

  for (int j = 0; j < d; ++j) {
    Order0Search search{c, cert.search_bound, j, std::vector<std::uint32_t>(c.size(), 0),
                        cert.order0_solutions};
    search.run(0, c[static_cast<std::size_t>(j)], 0);
  }
  cert.survivors.push_back(cert.order0_solutions.size());

  std::vector<ResonanceWitness> alive = cert.order0_solutions;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<ResonanceWitness> next;
    for (const auto& w : alive) {
      mpq_class lhs = order == 1 ? mu1_coefficient(n, w.j) : mu2_coefficient(n, w.j);
      mpq_class rhs = 0;
      for (int k = 0; k < d; ++k) {
        const auto mk = w.m[static_cast<std::size_t>(k)];
        if (mk == 0) continue;
        rhs += mpq_class(mk) * (order == 1 ? mu1_coefficient(n, k) : mu2_coefficient(n, k));
      }
      if (lhs == rhs) next.push_back(w);
    }
    alive = std::move(next);
    cert.survivors.push_back(alive.size());
  }
  cert.witnesses = std::move(alive);
  cert.verdict = cert.witnesses.empty() ? ResonanceVerdict::NO_IDENTICAL_RESONANCE
                                        : ResonanceVerdict::WITNESS_FOUND;
  return cert;
}

bool fast_bound_check(int n, int d) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("fast_bound_check requires 1 <= d <= n");
  const mpz_class dm1 = d - 1;
  return 2 * dm1 * dm1 < mpz_class(n) * n;
}

std::vector<PythagoreanCase> pythagorean_worst_cases(std::size_t count) {
  if (count == 0) throw std::invalid_argument("count must be >= 1");
  std::vector<PythagoreanCase> out;
  mpz_class a = 5, b = 2;
  for (std::size_t i = 0; i < count; ++i) {
    PythagoreanCase p;
    p.a = a;
    p.b = b;
    p.n = a * a + b * b;
    mpz_class x = a * a - b * b;
    mpz_class y = 2 * a * b;
    p.d = (x > y ? x : y) + 1;
    out.push_back(p);
    mpz_class na = 2 * a + b;
    b = a;
    a = na;
  }
  return out;
}

std::vector<double> homogeneous_resonant_lambdas(int n, int m_max) {
  if (n < 1 || m_max < 2) throw std::invalid_argument("requires n >= 1 and m_max >= 2");
  const double pi4 = std::pow(std::numbers::pi, 4);
  const double n4 = std::pow(static_cast<double>(n), 4);
  std::vector<double> out;
  for (int m = 2; m <= m_max; ++m) {
    const double r = static_cast<double>(m) / (m - 1);
    out.push_back(2.0 / 3.0 * pi4 * n4 * r * r);
  }
  return out;
}

std::vector<NumericResonance> numeric_resonance_scan(const std::vector<double>& mu, int m_max,
                                                     double tol) {
  if (mu.empty()) throw std::invalid_argument("numeric_resonance_scan requires a nonempty spectrum");
  for (double v : mu)
    if (!(v > 0.0)) throw std::invalid_argument("numeric_resonance_scan requires positive eigenvalues");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const double mu0 = mu.front();
  const double ratio_bound = std::ceil(mu0 / mu.back()) + 1.0;
  const int bound = static_cast<int>(std::min<double>(m_max, ratio_bound));
  const double abs_tol = tol * mu0;
  std::vector<NumericResonance> hits;
  std::vector<std::uint32_t> m(mu.size(), 0);

  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double target = mu[j];
    auto rec = [&](auto&& self, std::size_t first, double sum, int used) -> void {
      if (used >= 2 && std::abs(target - sum) < abs_tol)
        hits.push_back({static_cast<int>(j), m, target - sum});
      if (first == mu.size() || used == bound) return;
      for (std::size_t k = first; k < mu.size(); ++k) {
        if (sum + mu[k] > target + abs_tol) continue;
        ++m[k];
        self(self, k, sum + mu[k], used + 1);
        --m[k];
      }
    };
    rec(rec, 0, 0.0, 0);
  }
  return hits;
}

}  // namespace eternal
