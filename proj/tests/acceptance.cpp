// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <eternal/chords.hpp>
#include <eternal/elliptic.hpp>
#include <eternal/evolve.hpp>
#include <eternal/portraits.hpp>
#include <eternal/resonance.hpp>
#include <eternal/scalar_ode.hpp>
#include <eternal/spectrum.hpp>
#include <eternal/waves.hpp>

#include "kit.hpp"

using namespace eternal;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome non_resonance() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const int status = kit::dispatch({"resonance", "--n-max", "23"}, out, err, std::nullopt);
  o.require(status == 0, "resonance exited " + std::to_string(status));
  for (int n = 1; n <= 22; ++n) {
    const auto c = identical_resonance_check(n, n);
    o.require(c.max_order == 2 && c.verdict == ResonanceVerdict::NO_IDENTICAL_RESONANCE,
              "witness at n = " + std::to_string(n));
  }
  o.require(out.str().find("\n23,") != std::string::npos, "no n = 23 row");
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "took " + fmt("%.1f s", secs));
  if (o.ok) o.detail = "n = 1..22 clear, " + fmt("%.2f s", secs);
  return o;
}

Outcome pythagorean() {
  Outcome o;
  const auto cases = pythagorean_worst_cases(3);
  o.require(cases.size() == 3, "fewer than three cases");
  if (!o.ok) return o;
  auto is = [](const PythagoreanCase& c, long a, long b, long n, long d) {
    return c.a == a && c.b == b && c.n == n && c.d == d;
  };
  o.require(is(cases[0], 5, 2, 29, 22), "first tuple");
  o.require(is(cases[1], 12, 5, 169, 121), "second tuple");
  const auto& c = cases[2];
  const mpz_class lhs = (c.d - 2) * (c.d - 2) + (c.d - 1) * (c.d - 1);
  o.require(lhs == c.n * c.n, "third tuple violates (d - 2)^2 + (d - 1)^2 = n^2");
  o.require(c.a * c.a + c.b * c.b == c.n, "third tuple violates a^2 + b^2 = n");
  if (o.ok) o.detail = "third (" + c.a.get_str() + ", " + c.b.get_str() + ", " + c.n.get_str() + ", " + c.d.get_str() + ")";
  return o;
}

Outcome tree_counts() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const long expected[] = {1, 1, 2, 3, 6, 14, 34, 95, 280, 854, 2694, 8714, 28640, 95640, 323396};
  for (int d = 2; d <= 16; ++d) o.require(count_portraits(d) == expected[d - 2], "count at d = " + std::to_string(d));
  for (int d = 2; d <= 12; ++d)
    o.require(mpz_class(enumerate_diagrams(d).size()) == count_portraits(d), "enumeration at d = " + std::to_string(d));
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "took " + fmt("%.1f s", secs));
  if (o.ok) o.detail = fmt("%.2f s", secs);
  return o;
}

Outcome branches() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double l0 = pitchfork_lambda(n);
    for (double h : {0.0, 0.05, -0.05, 0.1, -0.1}) {
      const auto bp = branch_point(n, h);
      const double res = residual(bp.profile, bp.lambda);
      worst = std::max(worst, res);
      o.require(res < 1e-9, "residual " + fmt("%.2e", res));
      if (h != 0.0) o.require(bp.lambda > l0, "lambda not above the pitchfork");
    }
    double prev = 1e300;
    for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double gap = lambda_of_h(n, h) - l0;
      o.require(gap < prev, "lambda does not approach the pitchfork");
      prev = gap;
    }
    o.require(prev < 1e-5 * l0, "lambda(1e-4) far from the pitchfork");
  }
  if (o.ok) o.detail = "max residual " + fmt("%.2e", worst);
  return o;
}

Outcome spectra() {
  Outcome o;
  for (double lambda : {1.0, 37.0, 100.0}) {
    const auto w = homogeneous_equilibria(lambda);
    const auto exact = homogeneous_spectrum(lambda, 8);
    const auto unstable = eigen(CosineSeries({w.unstable}), 0, 0).eigenvalues;
    const auto stable = eigen(CosineSeries({w.stable}), 0, 0).eigenvalues;
    for (std::size_t k = 0; k < 8; ++k) {
      o.require(std::abs(unstable[k] - exact[k]) < 1e-10, "W_inf spectrum");
      o.require(std::abs(stable[k] - (exact[k] - 24.0 * w.unstable)) < 1e-10, "W_0 spectrum");
    }
  }
  std::string slopes;
  const double hs[3] = {0.02, 0.04, 0.08};
  for (int n : {1, 2})
    for (int k = 0; k < n; ++k) {
      double d[3];
      for (int i = 0; i < 3; ++i)
        d[i] = std::abs(eigen(equilibrium_profile(n, hs[i])).eigenvalues[static_cast<std::size_t>(k)] -
                        perturbation_mu(n, k, hs[i]));
      const double s = std::log(d[2] / d[0]) / std::log(hs[2] / hs[0]);
      o.require(s >= 2.7, "slope " + fmt("%.2f", s));
      slopes += (slopes.empty() ? "" : " ") + fmt("%.2f", s);
    }
  for (int n = 1; n <= 6; ++n)
    for (double h : {-0.1, 0.05, 0.1}) {
      const auto r = eigen(equilibrium_profile(n, h));
      o.require(r.morse_index == n, "Morse index at n = " + std::to_string(n));
    }
  if (o.ok) o.detail = "slopes " + slopes + ", Morse index n for n <= 6";
  return o;
}

Outcome closed_form_ode() {
  Outcome o;
  const PolyField f({1.0, -1.0});
  std::vector<cplx> path;
  for (int k = 0; k <= 500; ++k) path.push_back(0.01 * k);
  const auto real = integrate(f, 0.0, path);
  double err = 0.0;
  for (const auto& p : real.points) err = std::max(err, std::abs(p.w + std::tanh(p.t.real())));
  o.require(err < 1e-8, "tanh error " + fmt("%.2e", err));

  const auto imag = integrate(f, 0.0, {0.0, cplx(0, kPi / 2 + 1e-3)});
  o.require(imag.escaped, "no escape on the imaginary axis");
  o.require(std::abs(imag.escape_t.imag() - kPi / 2) < 1e-3, "escape off pi/2");
  // escape means |w| passed IntegrateOptions::escape
  o.require(IntegrateOptions{}.escape > 1e6 && imag.escape_t.real() == 0.0, "sup below 1e6");

  IntegrateOptions around;
  around.through_infinity = true;
  double ret = 0.0;
  for (double y : {0.5, 1.0, 2.0}) {
    const auto tr = integrate(f, cplx(0, y), {0.0, cplx(0, kPi)}, around);
    ret = std::max(ret, std::abs(tr.final_w - cplx(0, y)));
  }
  o.require(ret < 1e-7, "orange return " + fmt("%.2e", ret));
  if (o.ok)
    o.detail = "tanh " + fmt("%.1e", err) + ", escape at pi/2 " + fmt("%+.1e", imag.escape_t.imag() - kPi / 2) +
               ", return " + fmt("%.1e", ret);
  return o;
}

Outcome dichotomy() {
  Outcome o;
  const auto down = heteroclinic_shoot(1, 0.1, -1);
  o.require(down.converged, "-phi_0 shoot did not converge");
  o.require(down.distance_to_target < 1e-6, "distance " + fmt("%.2e", down.distance_to_target));
  o.require(down.monotone, "-phi_0 shoot not monotone");
  const auto up = heteroclinic_shoot(1, 0.1, +1);
  o.require(up.record.diverged && std::isfinite(up.record.r_star_lower), "+phi_0 shoot did not blow up");
  if (o.ok)
    o.detail = "W_0 at distance " + fmt("%.1e", down.distance_to_target) + ", blow-up past r = " +
               fmt("%.4f", up.record.r_star_lower);
  return o;
}

Outcome schrodinger() {
  Outcome o;
  const auto bp = branch_point(1, 0.1);
  const auto psi0 = ComplexField::neumann(bp.profile + CosineSeries({0.0, 0.2, 0.1}), 64);
  const double rev = reversibility_defect(psi0, 0.005, bp.lambda);
  o.require(rev < 1e-7, "reversibility " + fmt("%.2e", rev));
  const double a = kPi * kPi;
  const auto mono = ComplexField::periodic({{1, cplx(a / 6.0, 0.0)}}, 64);
  const auto rec = schrodinger_evolve(mono, 0.5 / kPi, 0.0);
  const double back = (rec.final_state - mono).h1_norm();
  o.require(!rec.diverged && back < 1e-6, "monochromatic return " + fmt("%.2e", back));
  if (o.ok) o.detail = "reversibility " + fmt("%.1e", rev) + ", return " + fmt("%.1e", back);
  return o;
}

Outcome portraits() {
  Outcome o;
  const auto g3 = trace_and_extract(PolyField::cyclotomic(3));
  o.require(g3.count(EquilibriumClass::SOURCE) == 1 && g3.count(EquilibriumClass::SINK) == 2, "d = 3 classes");
  o.require(g3.saddle_angles.size() == 4, "d = 3 saddles");
  o.require(g3.morse && g3.resolved, "d = 3 not resolved");
  auto edges = g3.tree_edges;
  std::sort(edges.begin(), edges.end());
  o.require(edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}, "d = 3 tree is not the path through e_0");

  const auto g4 = trace_and_extract(PolyField::cyclotomic(4));
  o.require(g4.count(EquilibriumClass::SOURCE) == 1 && g4.count(EquilibriumClass::SINK) == 1 &&
                g4.count(EquilibriumClass::CENTER) == 2,
            "d = 4 classes");
  o.require(g4.saddle_angles.size() == 6, "d = 4 saddles");
  o.require(!g4.morse, "d = 4 not flagged");
  if (o.ok) o.detail = "d = 3 code " + g3.chord_code + ", d = 4 NON-MORSE";
  return o;
}

Outcome waves() {
  Outcome o;
  const auto w = wave_params(0.0);
  o.require(std::abs(w.mu_minus - std::numbers::sqrt2) < 1e-12, "mu_minus");
  o.require(std::abs(w.p - kPi * std::numbers::sqrt2) < 1e-12, "period");
  o.require(std::abs(resonant_speeds(1)[0] - 2 * std::numbers::sqrt2) < 1e-15, "c_1");
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) worst = std::max(worst, soliton_residual(-20.0 + 40.0 * k / 999));
  o.require(worst < 1e-11, "soliton residual " + fmt("%.2e", worst));
  if (o.ok) o.detail = "soliton residual " + fmt("%.1e", worst);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // an optional criterion number runs only that one
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"non-resonance for n <= 22", non_resonance},
      {"Pythagorean worst cases", pythagorean},
      {"plane tree counts", tree_counts},
      {"branch residuals and bifurcation", branches},
      {"spectral agreement", spectra},
      {"closed-form scalar ODE", closed_form_ode},
      {"blow-up / heteroclinic dichotomy", dichotomy},
      {"Schroedinger structure", schrodinger},
      {"cyclotomic portraits", portraits},
      {"traveling waves", waves},
  };
  int failed = 0;
  int index = 1;
  int ran = 0;
  for (const auto& [name, check] : criteria) {
    if (only != 0 && index != only) {
      ++index;
      continue;
    }
    ++ran;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s: %s\n", o.ok ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  if (ran == 0) {
    std::printf("no criterion %d\n", only);
    return 64;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
