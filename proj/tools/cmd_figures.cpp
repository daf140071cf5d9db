#include <cmath>
#include <memory>
#include <numbers>

#include <eternal/elliptic.hpp>
#include <eternal/parallel.hpp>
#include <eternal/portraits.hpp>
#include <eternal/scalar_ode.hpp>
#include <eternal/spectrum.hpp>

#include "commands.hpp"

namespace kit {

namespace {

using eternal::cplx;
constexpr double kPi = std::numbers::pi;

void add_path(Table& t, const Json& head, const std::vector<cplx>& pts, bool both_charts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Json row = head;
    row.push_back("w");
    row.push_back(i);
    row.push_back(pts[i].real());
    row.push_back(pts[i].imag());
    t.add(std::move(row));
  }
  if (!both_charts) return;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx z = pts[i] == cplx(0.0) ? cplx(INFINITY, INFINITY) : 1.0 / pts[i];
    Json row = head;
    row.push_back("z");
    row.push_back(i);
    row.push_back(z.real());
    row.push_back(z.imag());
    t.add(std::move(row));
  }
}

}  // namespace

void register_figures(CLI::App& app, Registry& reg) {
  struct Fig1 {
    int n_max = 3;
    double h_max = 0.3;
    int count = 13;
  };
  auto f1 = std::make_shared<Fig1>();
  auto* s1 = app.add_subcommand("fig1", "bifurcation diagram data: lambda^(1/4) against W(0)");
  s1->add_option("--n-max", f1->n_max, "branches 1..n")->check(CLI::Range(1, 12))->capture_default_str();
  s1->add_option("--h-max", f1->h_max, "h in [-h_max, h_max]")->check(CLI::Range(0.0, 0.95))->capture_default_str();
  s1->add_option("--count", f1->count, "points per branch")->check(CLI::Range(2, 1000))->capture_default_str();

  reg.runners[s1] = [f1, &ctx = reg.ctx](Invocation& inv) {
    inv.params = {{"n_max", f1->n_max}, {"h_max", f1->h_max}, {"count", f1->count}};
    inv.tolerance = eternal::kDefaultTailTolerance;
    std::vector<std::pair<int, double>> inputs;
    for (int n = 1; n <= f1->n_max; ++n)
      for (int i = 0; i < f1->count; ++i) inputs.emplace_back(n, -f1->h_max + 2.0 * f1->h_max * i / (f1->count - 1));
    struct Point {
      eternal::BranchPoint bp;
      int morse = 0;
    };
    const auto pts = eternal::parallel_map(
        inputs,
        [](const std::pair<int, double>& p) {
          Point out{eternal::branch_point(p.first, p.second), 0};
          out.morse = eternal::eigen(out.bp.profile, 0, 0).morse_index;
          return out;
        },
        ctx.jobs);

    Result res;
    Table t{"branches",
            {"n", "h", "theta", "lambda", "w_at_0", "morse_index", "lambda_quarter", "signed_root_w0"},
            {}};
    double lambda_top = 0.0;
    for (const auto& p : pts) {
      const double w0 = p.bp.value_at_zero();
      t.add({p.bp.n, p.bp.h, p.bp.theta, p.bp.lambda, w0, p.morse, std::pow(p.bp.lambda, 0.25),
             std::copysign(std::sqrt(std::abs(w0)), w0)});
      lambda_top = std::max(lambda_top, p.bp.lambda);
    }
    res.tables.push_back(std::move(t));

    Table h{"homogeneous", {"lambda", "w_inf", "w_0", "morse_index_inf", "lambda_quarter"}, {}};
    for (int i = 1; i <= 100; ++i) {
      const double lambda = lambda_top * i / 100.0;
      const auto eq = eternal::homogeneous_equilibria(lambda);
      h.add({lambda, eq.unstable, eq.stable, eternal::homogeneous_morse_index(lambda), std::pow(lambda, 0.25)});
    }
    res.tables.push_back(std::move(h));
    res.summary = std::to_string(pts.size()) + " branch points on " + std::to_string(f1->n_max) + " branches";
    return res;
  };

  struct Fig2 {
    double r_max = 3.0;
    int families = 7;
  };
  auto f2 = std::make_shared<Fig2>();
  auto* s2 = app.add_subcommand("fig2", "complex-time orbits of w' = w^2 - 1: fixed-s arcs and fixed-r circles");
  s2->add_option("--r-max", f2->r_max, "real extent of the fixed-s arcs")->capture_default_str();
  s2->add_option("--families", f2->families, "curves per family")->check(CLI::Range(1, 100))->capture_default_str();

  reg.runners[s2] = [f2, &ctx = reg.ctx](Invocation& inv) {
    inv.params = {{"r_max", f2->r_max}, {"families", f2->families}};
    eternal::IntegrateOptions io;
    io.rtol = ctx.tolerance(0.0, io.rtol);
    inv.tolerance = io.rtol;
    const eternal::PolyField quad({1.0, -1.0});
    Result res;
    Table t{"orbits", {"family", "parameter", "t_re", "t_im", "w_re", "w_im"}, {}};
    const int m = f2->families;
    for (int i = 0; i < m; ++i) {
      // arcs between the poles at s = 0 and s = pi / 2
      const double s = 0.5 * kPi * (i + 1) / (m + 1);
      const cplx a(-f2->r_max, s), b(f2->r_max, s);
      const auto tr = eternal::integrate(quad, eternal::quadratic_orbit(a), {a, b}, io);
      for (const auto& p : tr.points) t.add({"fixed_s", s, p.t.real(), p.t.imag(), p.w.real(), p.w.imag()});
    }
    eternal::IntegrateOptions circle = io;
    circle.through_infinity = true;
    for (int i = 0; i < m; ++i) {
      const double r = m == 1 ? 0.5 : -1.5 + 3.0 * i / (m - 1);
      const cplx a(r, 0.0), b(r, kPi);
      const auto tr = eternal::integrate(quad, eternal::quadratic_orbit(a), {a, b}, circle);
      for (const auto& p : tr.points) t.add({"fixed_r", r, p.t.real(), p.t.imag(), p.w.real(), p.w.imag()});
    }
    res.summary = std::to_string(t.rows.size()) + " samples";
    res.tables.push_back(std::move(t));
    return res;
  };

  struct Fig3 {
    std::vector<int> degrees{3, 4};
    int orbits = 4;
  };
  auto f3 = std::make_shared<Fig3>();
  auto* s3 = app.add_subcommand("fig3", "cyclotomic portraits: separatrices and sample orbits in both charts");
  s3->add_option("--d", f3->degrees, "cyclotomic degrees")->check(CLI::Range(2, 12))->capture_default_str();
  s3->add_option("--orbits", f3->orbits, "sample orbits per degree")->check(CLI::Range(0, 64))->capture_default_str();

  reg.runners[s3] = [f3, &ctx = reg.ctx](Invocation& inv) {
    inv.params = {{"d", f3->degrees}, {"orbits", f3->orbits}};
    eternal::TraceOptions to;
    to.path_stride = 1;
    to.eps = ctx.tolerance(0.0, to.eps);
    inv.tolerance = to.eps;
    Result res;
    Table t{"curves", {"d", "kind", "id", "chart", "index", "re", "im"}, {}};
    Table sum{"classes", {"d", "sources", "sinks", "centers", "boundary_saddles", "morse", "chord_code"}, {}};
    for (int d : f3->degrees) {
      const auto f = eternal::PolyField::cyclotomic(d);
      const auto g = eternal::trace_and_extract(f, to);
      using C = eternal::EquilibriumClass;
      sum.add({d, g.count(C::SOURCE), g.count(C::SINK), g.count(C::CENTER), g.saddle_angles.size(), g.morse,
               g.chord_code});
      for (const auto& s : g.separatrices) add_path(t, {d, "separatrix", s.saddle}, s.path, true);

      for (int k = 0; k < f3->orbits; ++k) {
        // seeds on small circles around the roots, one root per orbit in turn
        const auto& e = g.interior[static_cast<std::size_t>(k % d)];
        const double radius = 0.15 * (1 + k / d);
        const cplx seed = e.root + std::polar(radius, 2.0 * kPi * (k + 0.5) / f3->orbits);
        // centers: one period 2 pi / |f'(e)|; otherwise run long enough to settle
        const double T = e.cls == C::CENTER ? 2.0 * kPi / std::abs(e.fprime) : 8.0;
        const double sign = e.cls == C::SINK ? -1.0 : 1.0;
        const auto tr = eternal::integrate(f, seed, {0.0, cplx(sign * T, 0.0)});
        std::vector<cplx> pts;
        for (const auto& p : tr.points)
          if (std::isfinite(p.w.real())) pts.push_back(p.w);
        add_path(t, {d, "orbit", k}, pts, true);
      }
    }
    res.tables.push_back(std::move(sum));
    res.tables.push_back(std::move(t));
    res.summary = "portraits for " + std::to_string(f3->degrees.size()) + " degrees";
    return res;
  };
}

}  // namespace kit
