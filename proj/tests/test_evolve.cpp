#include <doctest.h>

#include <cmath>
#include <numbers>

#include <eternal/elliptic.hpp>
#include <eternal/evolve.hpp>
#include <eternal/spectrum.hpp>

using namespace eternal;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexField constant(double v, std::size_t N = 16) { return ComplexField::constant(v, Basis::NeumannHalf, N); }

}  // namespace

TEST_CASE("field norms follow Parseval") {
  const auto f = ComplexField::neumann(CosineSeries({1.0, 0.5, 0.25}), 8);
  const double l2 = std::sqrt(0.5 * (1.0 + 0.5 * 0.25 + 0.5 * 0.0625));
  CHECK(f.l2_norm() == doctest::Approx(l2));
  const double grad = std::sqrt(0.5 * 0.5 * (std::pow(2 * kPi * 0.5, 2) + std::pow(4 * kPi * 0.25, 2)));
  CHECK(f.gradient_norm() == doctest::Approx(grad));
  CHECK(f.h1_norm() == doctest::Approx(std::hypot(l2, grad)));
  CHECK(f.sup_norm() == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(f(0.0).real() == doctest::Approx(1.75));

  const auto p = ComplexField::periodic({{1, cplx(0.5, 0.0)}, {-2, cplx(0.0, 1.0)}}, 4);
  CHECK(p.l2_norm() == doctest::Approx(std::sqrt(1.25)));
  CHECK(p.coefficient(-2) == cplx(0.0, 1.0));
  CHECK(std::abs(p(0.25) - (0.5 * std::exp(cplx(0, kPi / 2)) + cplx(0, 1) * std::exp(cplx(0, -kPi)))) < 1e-14);
}

TEST_CASE("W_inf is a fixed point of the step") {
  const double lambda = 6.0;
  auto w = constant(1.0);
  for (int i = 0; i < 10; ++i) {
    const auto next = step(w, 0.01, lambda);
    CHECK((next - w).h1_norm() < 1e-12);
    w = next;
  }
}

TEST_CASE("constant data between the equilibria descends to W_0") {
  const auto rec = integrate_ray(constant(0.3), 6.0, 8.0);
  CHECK_FALSE(rec.diverged);
  CHECK(rec.reason == BlowupReason::HORIZON);
  CHECK(std::abs(rec.final_state.coefficient(0) - cplx(-1.0)) < 1e-9);
  CHECK(rec.gradient_bound_ok);
}

TEST_CASE("constant data follows the tanh orbit to fourth order") {
  // w' = 6 w^2 - 6 from 0: w(r) = -tanh(6 r)
  const double r_end = 0.2;
  const double exact = -std::tanh(6.0 * r_end);
  double err[3];
  const double dr[3] = {1e-2, 5e-3, 2.5e-3};
  for (int i = 0; i < 3; ++i) err[i] = std::abs(integrate_fixed(constant(0.0, 4), 6.0, r_end, dr[i]).coefficient(0) - exact);
  const double order = std::log(err[0] / err[2]) / std::log(dr[0] / dr[2]);
  CHECK(order > 3.7);
  CHECK(order < 4.5);
}

TEST_CASE("semigroup property") {
  const auto w0 = ComplexField::neumann(equilibrium_profile(1, 0.1) + CosineSeries({0.0, 0.3}), 64);
  const double lambda = lambda_of_h(1, 0.1);
  const auto two = step(step(w0, 1e-4, lambda), 2e-4, lambda);
  const auto one = integrate_fixed(w0, lambda, 3e-4, 1e-5);
  CHECK((two - one).h1_norm() < 1e-7 * w0.h1_norm());
}

TEST_CASE("products are dealiased") {
  const std::size_t N = 48;
  std::vector<double> a(N / 3 + 1, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = 1.0 / (1.0 + k);
  const auto w = ComplexField::neumann(CosineSeries(a), N);
  const auto next = step(w, 1e-6, 1.0);
  for (std::size_t k = 2 * N / 3 + 1; k < N; ++k) CHECK(std::abs(next.coefficient(static_cast<int>(k))) < 1e-12);
}

TEST_CASE("sign-changing stable equilibrium never blows up") {
  const auto rec = detect_blowup(constant(-1.0), 6.0, 5.0);
  CHECK_FALSE(rec.diverged);
  CHECK(rec.reason == BlowupReason::HORIZON);
  CHECK(rec.r_star_lower == doctest::Approx(5.0));
}

TEST_CASE("imaginary time tangent blow-up") {
  // i psi_s = 6 psi^2 - 6 from 0: psi = -i tan(6 s) up to orientation, pole at s = pi / 12
  const auto rec = schrodinger_evolve(constant(0.0, 4), 1.0, 6.0);
  CHECK(rec.diverged);
  CHECK(rec.non_sectorial);
  CHECK(rec.r_star_lower == doctest::Approx(kPi / 12.0).epsilon(1e-6));
  for (const auto& h : rec.history)
    if (h.r < 0.2) CHECK(h.sup == doctest::Approx(std::abs(std::tan(6.0 * h.r))).epsilon(1e-6));
}

TEST_CASE("reversibility under conjugation") {
  const auto bp = branch_point(1, 0.1);
  const auto psi0 = ComplexField::neumann(bp.profile + CosineSeries({0.0, 0.2, 0.1}), 64);
  CHECK(reversibility_defect(psi0, 0.005, bp.lambda) < 1e-7);
  CHECK(reversibility_defect(ComplexField::constant(cplx(0.2, 0.0), Basis::NeumannHalf, 8), 0.1, 6.0) < 1e-7);
}

TEST_CASE("W_0 is constant under the Schroedinger flow") {
  const auto w0 = constant(-1.0, 8);
  const auto rec = schrodinger_evolve(w0, 0.5, 6.0);
  CHECK((rec.final_state - w0).h1_norm() < 1e-12);
}

TEST_CASE("monochromatic data is periodic") {
  // psi0 = (a / 6) e^{2 pi i x} with |a| <= 2 pi^2 returns after 1 / (2 pi)
  for (double a : {kPi * kPi, 2.0 * kPi * kPi}) {
    const auto psi0 = ComplexField::periodic({{1, cplx(a / 6.0, 0.0)}}, 64);
    const auto rec = schrodinger_evolve(psi0, 0.5 / kPi, 0.0);
    CHECK_FALSE(rec.diverged);
    CHECK((rec.final_state - psi0).h1_norm() < 1e-6);
  }
}

TEST_CASE("heteroclinic shooting from W_1") {
  const auto down = heteroclinic_shoot(1, 0.1, -1, 0.0, 10.0, 128);
  CHECK(down.converged);
  CHECK(down.monotone);
  CHECK(down.distance_to_target < 1e-6);
  const auto up = heteroclinic_shoot(1, 0.1, +1, 0.0, 10.0, 128);
  CHECK(up.record.diverged);
  CHECK(std::isfinite(up.record.r_star_lower));
  CHECK(up.record.final_h1 >= EvolveOptions{}.norm_threshold);
}

TEST_CASE("homogeneous source drains to W_0") {
  const double lambda = 6.0;
  auto start = constant(1.0 - 1e-6);
  const auto rec = integrate_ray(start, lambda, 10.0);
  CHECK(std::abs(rec.final_state.coefficient(0) - cplx(-1.0)) < 1e-8);
}

TEST_CASE("H1 growth bound on bounded runs") {
  const auto bp = branch_point(2, 0.1);
  const auto w0 = ComplexField::neumann(bp.profile + CosineSeries({0.0, 0.0, -0.5}), 64);
  const auto rec = integrate_ray(w0, bp.lambda, 0.05);
  CHECK_FALSE(rec.diverged);
  CHECK(rec.gradient_bound_ok);
}

TEST_CASE("analyticity boundary for constant data") {
  const std::vector<double> s{-0.1, 0.0, 0.1, 0.3};
  const auto scan = analyticity_boundary(constant(0.0, 8), s, 6.0, 1.0, {}, 2);
  REQUIRE(scan.samples.size() == 4);
  CHECK(scan.samples[1].r_star == doctest::Approx(1.0));
  CHECK_FALSE(scan.samples[1].finite);
  CHECK(scan.samples[0].r_star == doctest::Approx(scan.samples[2].r_star));
  CHECK(scan.samples[0].schrodinger_ok == scan.samples[2].schrodinger_ok);
  // i s past the pole at pi / 12
  CHECK_FALSE(scan.samples[3].schrodinger_ok);
}
