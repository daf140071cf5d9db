#include <doctest.h>

#include <cmath>
#include <numbers>

#include <eternal/errors.hpp>
#include <eternal/scalar_ode.hpp>

using namespace eternal;

namespace {

constexpr double kPi = std::numbers::pi;
const PolyField kQuad({1.0, -1.0});

cplx flow(const PolyField& f, cplx w0, cplx t) { return integrate(f, w0, {0.0, t}).final_w; }

}  // namespace

TEST_CASE("polynomial field bookkeeping") {
  const PolyField f({1.0, cplx(0, 2), -0.5});
  CHECK(f.degree() == 3);
  cplx sum = 0.0;
  for (cplx e : f.etas()) sum += e;
  CHECK(std::abs(sum) < 1e-12);
  for (const cplx& r : f.roots()) CHECK(std::abs(f(r)) < 1e-14);
  const cplx w(0.3, -0.7);
  CHECK(std::abs(f(w) - (w - 1.0) * (w - cplx(0, 2)) * (w + 0.5)) < 1e-14);
  const double h = 1e-6;
  CHECK(std::abs(f.derivative(w) - (f(w + h) - f(w - h)) / (2 * h)) < 1e-8);
  CHECK(std::abs(f.reversed(0.25) - std::pow(0.25, 3) * f(4.0)) < 1e-12);
  CHECK_THROWS_AS(PolyField({1.0, 1.0 + 1e-12}), DomainError);
  CHECK_THROWS_AS(PolyField({1.0}), DomainError);

  for (int d = 2; d <= 9; ++d) {
    const auto c = PolyField::cyclotomic(d);
    cplx s = 0.0;
    for (cplx e : c.etas()) s += e;
    CHECK(std::abs(s) < 1e-12);
    for (std::size_t j = 0; j < c.roots().size(); ++j)
      CHECK(std::abs(c.etas()[j] - c.roots()[j] / static_cast<double>(d)) < 1e-14);
  }
}

TEST_CASE("quadratic orbit") {
  CHECK(quadratic_orbit(0.0) == cplx(0.0));
  CHECK(std::abs(quadratic_orbit(30.0) + 1.0) < 1e-15);
  CHECK(std::abs(quadratic_orbit(cplx(0, 1.5)) - cplx(0, -std::tan(1.5))) < 1e-12);
  CHECK(std::abs(quadratic_orbit(cplx(0, kPi / 2 - 1e-9))) > 1e8);
  CHECK_THROWS_AS(quadratic_orbit(cplx(0, kPi / 2)), PoleError);
  CHECK_THROWS_AS(quadratic_orbit(cplx(0, 1.5 * kPi)), PoleError);
}

TEST_CASE("real path reproduces -tanh") {
  const auto tr = integrate(kQuad, 0.0, {0.0, 5.0});
  CHECK_FALSE(tr.escaped);
  for (const auto& p : tr.points) CHECK(std::abs(p.w - quadratic_orbit(p.t)) < 1e-9);
}

TEST_CASE("shifted tanh for other data") {
  const cplx w0(0.3, 0.4);
  const cplx t0 = -std::atanh(w0);  // -tanh(t0) = w0
  const auto tr = integrate(kQuad, w0, {0.0, cplx(1.0, 0.5), cplx(2.0, 0.0)});
  for (const auto& p : tr.points) CHECK(std::abs(p.w + std::tanh(p.t + t0)) < 1e-9);
}

TEST_CASE("imaginary path escapes at pi / 2") {
  const auto tr = integrate(kQuad, 0.0, {0.0, cplx(0, 2.0)});
  CHECK(tr.escaped);
  CHECK(tr.escape_t.imag() == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(std::abs(tr.escape_t.real()) < 1e-15);
}

TEST_CASE("orange circle returns after pi") {
  IntegrateOptions o;
  o.through_infinity = true;
  const auto tr = integrate(kQuad, cplx(0, 1), {0.0, cplx(0, kPi)}, o);
  CHECK_FALSE(tr.escaped);
  CHECK(std::abs(tr.final_w - cplx(0, 1)) < 1e-7);
  IntegrateOptions bad;
  bad.through_infinity = true;
  CHECK_THROWS(integrate(PolyField::cyclotomic(3), 2.0, {0.0, 1.0}, bad));
}

TEST_CASE("cyclotomic cubic blows up in finite real time") {
  const auto tr = integrate(PolyField::cyclotomic(3), 2.0, {0.0, 10.0});
  CHECK(tr.escaped);
  // t* = int_2^inf dw / (w^3 - 1)
  double tstar = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double u = (i + 0.5) / m;  // w = 2 / u
    const double w = 2.0 / u;
    tstar += 2.0 / (u * u) / (w * w * w - 1.0) / m;
  }
  CHECK(tr.escape_t.real() == doctest::Approx(tstar).epsilon(1e-6));
}

TEST_CASE("flow composition matches the tanh addition law") {
  const cplx t1(0.4, 0.3), t2(0.5, -0.6);
  const cplx w1 = flow(kQuad, 0.0, t1);
  const cplx w12 = flow(kQuad, w1, t2);
  CHECK(std::abs(w12 - quadratic_orbit(t1 + t2)) < 1e-10);
}

TEST_CASE("time-t map is conformal") {
  const cplx w0(0.2, 0.5), t(0.7, 0.2);
  const double eps = 1e-6;
  const cplx base = flow(kQuad, w0, t);
  for (double phi : {0.3, 1.1, 2.5}) {
    const cplx v1 = eps, v2 = eps * std::polar(1.0, phi);
    const cplx d1 = flow(kQuad, w0 + v1, t) - base;
    const cplx d2 = flow(kQuad, w0 + v2, t) - base;
    CHECK(std::arg(d2 / d1) == doctest::Approx(phi).epsilon(1e-5));
  }
}

TEST_CASE("imaginary period return near a root") {
  const auto f = PolyField::cyclotomic(3);
  for (std::size_t j = 0; j < 3; ++j) {
    const cplx e = f.roots()[j];
    const cplx period = cplx(0, 2.0 * kPi) * f.etas()[j];
    for (double delta : {1e-2, 1e-3}) {
      const cplx w0 = e + delta * cplx(0.6, 0.8);
      const auto tr = integrate(f, w0, {0.0, period});
      CHECK(std::abs(tr.final_w - w0) < 10.0 * delta * delta);
    }
  }
}

TEST_CASE("period lattice") {
  const auto q = period_lattice(kQuad);
  REQUIRE(q.generators.size() == 1);
  CHECK(std::abs(q.generators[0] - cplx(0, -kPi)) < 1e-14);
  CHECK(q.closure == LatticeClass::Z);
  CHECK(period_lattice(PolyField::cyclotomic(3)).closure == LatticeClass::Z2);
  CHECK(period_lattice(PolyField::cyclotomic(4)).closure == LatticeClass::Z2);
  CHECK(period_lattice(PolyField::cyclotomic(3)).subset_sums.size() == 6);
}

TEST_CASE("closure classification covers the five types") {
  const double r2 = std::numbers::sqrt2, r3 = std::sqrt(3.0);
  CHECK(classify_lattice({cplx(0, kPi), cplx(-kPi, 0)}) == LatticeClass::Z2);
  CHECK(classify_lattice({1.0, 2.5}) == LatticeClass::Z);
  CHECK(classify_lattice({cplx(0, 1), cplx(0, r2)}) == LatticeClass::R);
  CHECK(classify_lattice({1.0, cplx(0, 1), r2}) == LatticeClass::RxZ);
  CHECK(classify_lattice({1.0, cplx(0, 1), cplx(r2, r3)}) == LatticeClass::R2);
  CHECK(classify_lattice({1.0, cplx(0, 1), cplx(0.5, 0.25)}) == LatticeClass::Z2);
  CHECK(classify_lattice({1.0, 1.0 + 1e-7}) == LatticeClass::AMBIGUOUS);
  CHECK_THROWS_AS(classify_lattice({0.0}), DomainError);
}

TEST_CASE("degeneracy scan") {
  const auto four = degeneracy_scan(PolyField::cyclotomic(4));
  CHECK(std::find(four.begin(), four.end(), 0b0010u) != four.end());
  CHECK(std::find(four.begin(), four.end(), 0b1000u) != four.end());
  for (auto m : four) CHECK(std::find(four.begin(), four.end(), 0b1111u ^ m) != four.end());
  CHECK(degeneracy_scan(kQuad).empty());
  CHECK(degeneracy_scan(PolyField::cyclotomic(3)).empty());

  // direct enumeration oracle for cyclotomic d = 3
  for (unsigned mask = 1; mask < 7; ++mask) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      if (mask & (1u << j)) s += std::cos(2 * kPi * j / 3) / 3.0;
    CHECK(std::abs(s) > 1e-3);
  }
}

TEST_CASE("reversible example: periodic orbit") {
  const double r2 = std::numbers::sqrt2;
  const auto rep = reversible_example_check(2.0 + r2, 0.0, 0.0, 2.0 * kPi, 400);
  CHECK(std::abs(rep.w_end - 2.0 - r2) < 1e-6);
  CHECK(std::abs(rep.v_end) < 1e-6);
  CHECK(rep.exact_solution_residual < 1e-10);
  CHECK(std::abs(rep.invariant0) < 1e-12);
  CHECK(rep.invariant_drift < 1e-8);
}

TEST_CASE("reversible example: homoclinic level") {
  const double ws = reversible_homoclinic_turning_point();
  CHECK(reversible_invariant(ws, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(reversible_energy(ws, 0.0)) < 1e-14);
  const auto rep = reversible_homoclinic_check(20.0);
  CHECK(rep.t1 - rep.t0 == doctest::Approx(20.0));
  CHECK(std::abs(rep.energy0) < 1e-8);
  CHECK(rep.energy_drift < 1e-8);
  CHECK(std::abs(rep.w_end) < 1e-4);
}

TEST_CASE("reversible example: trivial equilibrium") {
  const auto rep = reversible_example_check(0.0, 0.0, 0.0, 10.0, 50);
  CHECK(rep.w_end == 0.0);
  CHECK(rep.v_end == 0.0);
  CHECK(rep.energy_drift == 0.0);
}
