#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <eternal/elliptic.hpp>
#include <eternal/errors.hpp>

using namespace eternal;
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

// Pointwise residual W'' + 6 W^2 - lambda by midpoint quadrature, independent of the
// coefficient-space product used by the library.
double quadrature_residual(const CosineSeries& w, double lambda, int samples = 4000) {
  const CosineSeries wxx = w.second_derivative();
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = 0.5 * (i + 0.5) / samples;
    const double v = w(x);
    const double r = wxx(x) + 6.0 * v * v - lambda;
    sum += r * r;
  }
  return std::sqrt(sum * 0.5 / samples);
}

}  // namespace

TEST_CASE("sigma3 sums cubes of divisors") {
  CHECK(sigma3(1) == 1);
  CHECK(sigma3(2) == 9);
  CHECK(sigma3(6) == 252);
  CHECK(sigma3(12) == 1 + 8 + 27 + 64 + 216 + 1728);
  CHECK_THROWS_AS(sigma3(0), std::invalid_argument);
}

TEST_CASE("pitchfork values") {
  CHECK(lambda_of_h(1, 0.0) == doctest::Approx(2.0 / 3.0 * std::pow(kPi, 4)).epsilon(1e-15));
  CHECK(lambda_of_h(2, 0.0) == doctest::Approx(16.0 * 2.0 / 3.0 * std::pow(kPi, 4)).epsilon(1e-15));
  CHECK(pitchfork_lambda(3) == doctest::Approx(2.0 / 3.0 * std::pow(3 * kPi, 4)).epsilon(1e-15));
}

TEST_CASE("lambda_of_h against a 50 digit summation") {
  for (double h : {0.1, -0.3, 0.6}) {
    Float50 hh(h), h2 = hh * hh, pw = 1, s = 0;
    for (int k = 1; k <= 200; ++k) {
      pw *= h2;
      Float50 d3 = 0;
      for (int d = 1; d <= k; ++d)
        if (k % d == 0) d3 += Float50(d) * d * d;
      s += d3 * pw;
    }
    const Float50 pi = boost::math::constants::pi<Float50>();
    const Float50 ref = Float50(2) / 3 * pi * pi * pi * pi * (1 + 240 * s);
    CHECK(std::abs(lambda_of_h(1, h) - ref.convert_to<double>()) < 1e-12 * ref.convert_to<double>());
  }
}

TEST_CASE("domain and truncation errors") {
  CHECK_THROWS_AS(lambda_of_h(1, 1.0), DomainError);
  CHECK_THROWS_AS(lambda_of_h(1, -1.2), DomainError);
  CHECK_THROWS_AS(lambda_of_h(0, 0.1), DomainError);
  CHECK_THROWS_AS(lambda_of_h(1, 0.9, 3), TruncationError);
  CHECK_THROWS_AS(equilibrium_profile(1, 0.9, 3), TruncationError);
  CHECK_THROWS_AS(homogeneous_equilibria(0.0), DomainError);
  CHECK_THROWS_AS(homogeneous_equilibria(-1.0), DomainError);
}

TEST_CASE("constant branch at h = 0") {
  const auto w = equilibrium_profile(1, 0.0);
  CHECK(w.truncation() == 0);
  CHECK(w[0] == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-15));
  CHECK(residual(w, pitchfork_lambda(1)) < 1e-12);
}

TEST_CASE("profile coefficients follow the closed form") {
  const double h = 0.2;
  const int n = 2;
  const auto w = equilibrium_profile(n, h);
  for (int k = 1; k <= 6; ++k) {
    const double expected = std::pow(n * kPi, 2) * 8.0 * k * std::pow(h, k) / (1.0 - std::pow(h, 2 * k));
    CHECK(w[static_cast<std::size_t>(n * k)] == doctest::Approx(expected).epsilon(1e-13));
    CHECK(w[static_cast<std::size_t>(n * k - 1)] == 0.0);
  }
  double eta = 1.0 / 3.0;
  for (int k = 1; k < 60; ++k) eta -= 8.0 * k * std::pow(h, 2 * k) / (1.0 - std::pow(h, 2 * k));
  CHECK(w[0] == doctest::Approx(std::pow(n * kPi, 2) * eta).epsilon(1e-13));
}

TEST_CASE("lower branch has a negative first harmonic") {
  const auto w = equilibrium_profile(1, -0.05);
  CHECK(w[1] < 0.0);
  CHECK(equilibrium_profile(1, 0.05)[1] > 0.0);
}

TEST_CASE("residual oracle on branch points") {
  for (int n : {1, 2, 3})
    for (double h : {-0.3, -0.1, 0.05, 0.1, 0.4}) {
      CAPTURE(n);
      CAPTURE(h);
      const auto w = equilibrium_profile(n, h);
      const double lambda = lambda_of_h(n, h);
      CHECK(residual(w, lambda) < (std::abs(h) <= 0.1 ? 1e-9 : 1e-11 * lambda));
      CHECK(quadrature_residual(w, lambda) < 1e-8 * lambda);
    }
  CHECK(residual(equilibrium_profile(1, 0.1, 60), lambda_of_h(1, 0.1, 60)) < 1e-10);
}

TEST_CASE("residual decays geometrically with the truncation") {
  const double h = 0.3;
  double prev = 1e300;
  for (std::size_t K : {8u, 16u, 24u, 32u}) {
    const double r = residual(equilibrium_profile(1, h, K, 1.0), lambda_of_h(1, h, K, 1.0));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("residual of non-equilibria") {
  CHECK(residual(CosineSeries::constant(std::sqrt(10.0 / 6.0)), 10.0) < 1e-14);
  CHECK(residual(CosineSeries::constant(0.0), 1.0) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("rescaling maps branch n = 1 onto branch n") {
  for (int m : {2, 3}) {
    const double h = 0.1;
    const std::size_t K = default_truncation(h);
    const auto [w, lambda] = rescale(equilibrium_profile(1, h, K), lambda_of_h(1, h, K), m);
    const auto direct = equilibrium_profile(m, h, K);
    REQUIRE(w.size() == direct.size());
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(w[k] - direct[k]) < 1e-12 * std::abs(direct[0]));
    CHECK(lambda == doctest::Approx(lambda_of_h(m, h, K)).epsilon(1e-14));
    CHECK(residual(w, lambda) < 1e-9);
  }
  const auto [c, l] = rescale(CosineSeries::constant(2.0), 5.0, 3);
  CHECK(c[0] == 18.0);
  CHECK(l == 405.0);
}

TEST_CASE("lambda increases with |h|") {
  for (int n : {1, 2}) {
    double prev = pitchfork_lambda(n);
    for (int i = 1; i <= 40; ++i) {
      const double h = 0.02 * i;
      const double up = lambda_of_h(n, h), down = lambda_of_h(n, -h);
      CHECK(up > prev);
      CHECK(up == doctest::Approx(down).epsilon(1e-15));
      prev = up;
    }
  }
}

TEST_CASE("homogeneous equilibria") {
  const auto e6 = homogeneous_equilibria(6.0);
  CHECK(e6.stable == doctest::Approx(-1.0));
  CHECK(e6.unstable == doctest::Approx(1.0));
  CHECK(homogeneous_equilibria(24.0).unstable == doctest::Approx(2.0));
  CHECK(homogeneous_equilibria(pitchfork_lambda(1)).unstable == doctest::Approx(kPi * kPi / 3.0));
}

TEST_CASE("branch point bookkeeping") {
  const auto bp = branch_point(1, 0.1);
  CHECK(bp.theta == doctest::Approx(-std::log(0.1) / kPi));
  CHECK(std::exp(-kPi * bp.theta) == doctest::Approx(0.1));
  CHECK(bp.residual < 1e-9);
  CHECK(std::isinf(branch_point(1, 0.0).theta));
  CHECK(h_of_lambda(1, bp.lambda) == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(h_of_lambda(1, bp.lambda, -1) == doctest::Approx(-0.1).epsilon(1e-10));
}

TEST_CASE("Neumann condition holds for every truncation") {
  const auto w = equilibrium_profile(2, 0.3);
  for (std::size_t K : {1u, 5u, 20u}) {
    const auto t = w.resized(K);
    CHECK(std::abs(t.derivative(0.0)) < 1e-12);
    CHECK(std::abs(t.derivative(0.5)) < 1e-10);
  }
}
