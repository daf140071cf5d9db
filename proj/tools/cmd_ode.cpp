#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include <eternal/portraits.hpp>
#include <eternal/scalar_ode.hpp>
#include <eternal/waves.hpp>

#include "commands.hpp"

namespace kit {

namespace {

using eternal::cplx;
constexpr double kPi = std::numbers::pi;

cplx parse_complex(const std::string& token) {
  std::istringstream is(token);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(is >> re)) throw CLI::ValidationError("bad root '" + token + "', expected RE or RE,IM");
  if (is >> sep) {
    if (sep != ',' || !(is >> im)) throw CLI::ValidationError("bad root '" + token + "', expected RE or RE,IM");
  }
  if (!is.eof() && is.peek() != EOF) throw CLI::ValidationError("bad root '" + token + "'");
  return {re, im};
}

// Uniform in [-1, 1) from the raw 64-bit stream, identical on every platform.
double unit(std::mt19937_64& rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

struct FieldSpec {
  int cyclotomic = 0;
  std::vector<std::string> roots;
  int random = 0;
  std::uint64_t seed = 1;

  void add_options(CLI::App* sub) {
    auto* c = sub->add_option("--cyclotomic", cyclotomic, "f = w^d - 1")->check(CLI::Range(2, 64));
    auto* r = sub->add_option("--roots", roots, "roots as RE or RE,IM")->excludes(c);
    sub->add_option("--random", random, "d roots uniform in the square [-1, 1]^2")
        ->check(CLI::Range(2, 64))
        ->excludes(c)
        ->excludes(r);
    sub->add_option("--seed", seed, "seed for --random")->capture_default_str();
  }

  eternal::PolyField build(Invocation& inv) const {
    std::vector<cplx> rs;
    if (cyclotomic) return eternal::PolyField::cyclotomic(cyclotomic);
    if (random) {
      std::mt19937_64 rng(seed);
      for (int j = 0; j < random; ++j) {
        const double re = unit(rng);
        rs.emplace_back(re, unit(rng));
      }
      inv.seed = seed;
    } else {
      for (const auto& t : roots) rs.push_back(parse_complex(t));
    }
    if (rs.empty()) throw CLI::ValidationError("give --cyclotomic, --roots or --random");
    return eternal::PolyField(std::move(rs));
  }

  Json describe() const {
    if (cyclotomic) return {{"cyclotomic", cyclotomic}};
    if (random) return {{"random", random}, {"seed", seed}};
    return {{"roots", roots}};
  }
};

Json roots_json(const eternal::PolyField& f) {
  Json a = Json::array();
  for (const cplx& r : f.roots()) a.push_back({r.real(), r.imag()});
  return a;
}

std::string mask_string(std::uint32_t mask, int d) {
  std::string s;
  for (int j = 0; j < d; ++j)
    if (mask & (1u << j)) s += (s.empty() ? "" : " ") + std::to_string(j);
  return s;
}

}  // namespace

void register_ode(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string which = "tanh";
    double t_max = 5.0;
    double w0 = 0.0;
    FieldSpec field;
    double tol = 0.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("ode", "scalar ODE w' = f(w) in complex time");
  sub->add_option("--case", o->which, "tanh | imaginary | orange | escape | lattice | degeneracy | reversible")
      ->check(CLI::IsMember({"tanh", "imaginary", "orange", "escape", "lattice", "degeneracy", "reversible"}))
      ->capture_default_str();
  sub->add_option("--t-max", o->t_max, "tanh / imaginary / escape: parameter length");
  sub->add_option("--w0", o->w0, "escape: real initial value");
  o->field.add_options(sub);
  sub->add_option("--tol", o->tol, "relative integration or lattice tolerance");

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    Result res;
    const eternal::PolyField quad({1.0, -1.0});
    eternal::IntegrateOptions io;

    if (o->which == "tanh" || o->which == "imaginary") {
      io.rtol = ctx.tolerance(o->tol, io.rtol);
      inv.tolerance = io.rtol;
      inv.params = {{"case", o->which}, {"t_max", o->t_max}};
      const bool real = o->which == "tanh";
      const cplx end = real ? cplx(o->t_max, 0.0) : cplx(0.0, o->t_max);
      const auto tr = eternal::integrate(quad, 0.0, {0.0, end}, io);
      Table t{"trajectory", {"t_re", "t_im", "w_re", "w_im", "error"}, {}};
      double worst = 0.0;
      for (const auto& p : tr.points) {
        double e = NAN;
        if (std::isfinite(p.w.real()) && std::abs(p.t.imag() - 0.5 * kPi) > 1e-3) {
          e = std::abs(p.w + std::tanh(p.t));
          worst = std::max(worst, e);
        }
        t.add({p.t.real(), p.t.imag(), p.w.real(), p.w.imag(), e});
      }
      res.tables.push_back(std::move(t));
      if (real) {
        res.summary = "max deviation from -tanh " + format_double(worst);
      } else {
        res.summary = tr.escaped ? "escape at s = " + format_double(tr.escape_t.imag()) + " (pi/2 - s = " +
                                       format_double(0.5 * kPi - tr.escape_t.imag()) + ")"
                                 : "no escape up to s = " + format_double(o->t_max);
      }
      return res;
    }

    if (o->which == "orange") {
      io.rtol = ctx.tolerance(o->tol, io.rtol);
      io.through_infinity = true;
      inv.tolerance = io.rtol;
      inv.params = {{"case", o->which}};
      Table t{"orange", {"w0_re", "w0_im", "period", "return_error", "steps"}, {}};
      double worst = 0.0;
      for (double y : {0.5, 1.0, 2.0}) {
        const cplx w0(0.0, y);
        const auto tr = eternal::integrate(quad, w0, {0.0, cplx(0.0, kPi)}, io);
        const double err = std::abs(tr.final_w - w0);
        worst = std::max(worst, err);
        t.add({w0.real(), w0.imag(), kPi, err, tr.steps});
      }
      res.tables.push_back(std::move(t));
      res.summary = "period-pi return error " + format_double(worst);
      return res;
    }

    if (o->which == "escape") {
      io.rtol = ctx.tolerance(o->tol, io.rtol);
      inv.tolerance = io.rtol;
      const auto f = o->field.build(inv);
      inv.params = {{"case", o->which}, {"field", o->field.describe()}, {"w0", o->w0}, {"t_max", o->t_max}};
      const auto tr = eternal::integrate(f, o->w0, {0.0, o->t_max}, io);
      Table t{"escape", {"w0", "escaped", "escape_t", "final_re", "final_im", "steps"}, {}};
      t.add({o->w0, tr.escaped, tr.escaped ? Json(tr.escape_t.real()) : Json(), tr.final_w.real(), tr.final_w.imag(),
             tr.steps});
      res.tables.push_back(std::move(t));
      res.summary = tr.escaped ? "escape at t = " + format_double(tr.escape_t.real()) : "bounded on [0, t_max]";
      return res;
    }

    if (o->which == "lattice" || o->which == "degeneracy") {
      const double tol = ctx.tolerance(o->tol, 1e-9);
      inv.tolerance = tol;
      const auto f = o->field.build(inv);
      inv.params = {{"case", o->which}, {"field", o->field.describe()}, {"roots", roots_json(f)}};
      if (o->which == "degeneracy") {
        const auto masks = eternal::degeneracy_scan(f, tol);
        Table t{"degenerate", {"mask", "roots", "re_sum"}, {}};
        for (auto m : masks) {
          cplx s = 0.0;
          for (int j = 0; j < f.degree(); ++j)
            if (m & (1u << j)) s += f.etas()[static_cast<std::size_t>(j)];
          t.add({m, mask_string(m, f.degree()), s.real()});
        }
        res.tables.push_back(std::move(t));
        res.summary = std::to_string(masks.size()) + " degenerate subsets";
        return res;
      }
      const auto lat = eternal::period_lattice(f, tol);
      Table t{"generators", {"j", "re", "im"}, {}};
      for (std::size_t j = 0; j < lat.generators.size(); ++j)
        t.add({j + 1, lat.generators[j].real(), lat.generators[j].imag()});
      res.tables.push_back(std::move(t));
      res.summary = "period lattice closure " + eternal::to_string(lat.closure);
      return res;
    }

    inv.params = {{"case", o->which}};
    const double r2 = std::numbers::sqrt2;
    const auto per = eternal::reversible_example_check(2.0 + r2, 0.0, 0.0, 2.0 * kPi, 400);
    const auto hom = eternal::reversible_homoclinic_check(20.0);
    Table t{"reversible",
            {"orbit", "t0", "t1", "w_end", "v_end", "invariant_drift", "energy_drift", "exact_residual"},
            {}};
    t.add({"periodic", per.t0, per.t1, per.w_end, per.v_end, per.invariant_drift, per.energy_drift,
           per.exact_solution_residual});
    t.add({"homoclinic", hom.t0, hom.t1, hom.w_end, hom.v_end, hom.invariant_drift, hom.energy_drift, Json()});
    res.tables.push_back(std::move(t));
    res.summary = "period return " + format_double(std::abs(per.w_end - 2.0 - r2)) + ", homoclinic energy drift " +
                  format_double(hom.energy_drift);
    return res;
  };
}

void register_portrait(CLI::App& app, Registry& reg) {
  struct Opts {
    FieldSpec field;
    double eps = 0.0;
    bool separatrices = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("portrait", "compactified phase portrait, connection tree and chord code");
  o->field.add_options(sub);
  sub->add_option("--eps", o->eps, "launch distance from the boundary saddles in the disk");
  sub->add_flag("--separatrices", o->separatrices, "list where each separatrix ends");

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    eternal::TraceOptions to;
    to.eps = ctx.tolerance(o->eps, to.eps);
    inv.tolerance = to.eps;
    const auto f = o->field.build(inv);
    inv.params = {{"field", o->field.describe()}, {"roots", roots_json(f)}, {"separatrices", o->separatrices}};
    const auto g = eternal::trace_and_extract(f, to);

    Result res;
    std::ostringstream edges;
    for (std::size_t i = 0; i < g.tree_edges.size(); ++i)
      edges << (i ? " " : "") << g.tree_edges[i].first << "-" << g.tree_edges[i].second;
    Table t{"portrait",
            {"d", "sources", "sinks", "centers", "boundary_saddles", "morse", "resolved", "degenerate_subsets",
             "tree_edges", "chord_code"},
            {}};
    using C = eternal::EquilibriumClass;
    t.add({g.d, g.count(C::SOURCE), g.count(C::SINK), g.count(C::CENTER), g.saddle_angles.size(), g.morse, g.resolved,
           g.degenerate_subsets.size(), edges.str(), g.chord_code});
    res.tables.push_back(std::move(t));

    Table eq{"equilibria", {"index", "re", "im", "class", "fprime_re", "fprime_im"}, {}};
    for (std::size_t j = 0; j < g.interior.size(); ++j) {
      const auto& e = g.interior[j];
      eq.add({j, e.root.real(), e.root.imag(), eternal::to_string(e.cls), e.fprime.real(), e.fprime.imag()});
    }
    res.tables.push_back(std::move(eq));

    if (o->separatrices) {
      Table s{"separatrices", {"saddle", "angle", "time_direction", "end", "root", "target_saddle", "time"}, {}};
      for (const auto& sp : g.separatrices)
        s.add({sp.saddle, sp.angle, sp.time_direction, eternal::to_string(sp.end), sp.root, sp.target_saddle,
               sp.time});
      res.tables.push_back(std::move(s));
    }
    if (!g.morse) {
      res.summary = "NON-MORSE, " + std::to_string(g.count(C::CENTER)) + " centers";
    } else if (g.resolved) {
      res.summary = "Morse, chord code " + g.chord_code;
    } else {
      res.summary = "Morse but separatrices unresolved";
      res.status = 2;
    }
    return res;
  };
}

void register_waves(CLI::App& app, Registry& reg) {
  struct Opts {
    std::vector<double> c{0.0};
    std::vector<double> range;
    int resonant = 0;
    int soliton = 0;
    double xi_max = 10.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("waves", "traveling waves: linearization at W = -1, +1 and the soliton");
  sub->add_option("--c", o->c, "wave speeds")->capture_default_str();
  sub->add_option("--c-range", o->range, "LO HI COUNT")->expected(3)->excludes("--c");
  sub->add_option("--resonant", o->resonant, "list the resonant speeds c_m, m = 1..M")->check(CLI::NonNegativeNumber);
  sub->add_option("--soliton", o->soliton, "sample the soliton at this many points")->check(CLI::NonNegativeNumber);
  sub->add_option("--xi-max", o->xi_max, "soliton sampling half width");

  reg.runners[sub] = [o](Invocation& inv) {
    const auto cs = grid(o->c, o->range);
    inv.params = {{"c", cs}, {"resonant", o->resonant}, {"soliton", o->soliton}, {"xi_max", o->xi_max}};
    Result res;
    Table t{"waves",
            {"c", "mu_minus", "p", "mu_plus_0_re", "mu_plus_0_im", "mu_plus_1_re", "mu_plus_1_im", "mu_plus_real",
             "ratio_rational"},
            {}};
    for (double c : cs) {
      const auto w = eternal::wave_params(c);
      t.add({w.c, w.mu_minus, w.p, w.mu_plus[0].real(), w.mu_plus[0].imag(), w.mu_plus[1].real(),
             w.mu_plus[1].imag(), w.mu_plus_real, eternal::mu_plus_ratio_rational(c)});
    }
    res.tables.push_back(std::move(t));
    if (o->resonant > 0) {
      Table r{"resonant_speeds", {"m", "c"}, {}};
      const auto speeds = eternal::resonant_speeds(o->resonant);
      for (std::size_t m = 0; m < speeds.size(); ++m) r.add({m + 1, speeds[m]});
      res.tables.push_back(std::move(r));
    }
    double worst = 0.0;
    if (o->soliton > 0) {
      Table s{"soliton", {"xi", "gamma", "residual"}, {}};
      for (int i = 0; i < o->soliton; ++i) {
        const double xi = o->soliton == 1 ? 0.0 : -o->xi_max + 2.0 * o->xi_max * i / (o->soliton - 1);
        const double r = eternal::soliton_residual(xi);
        worst = std::max(worst, r);
        s.add({xi, eternal::soliton(xi), r});
      }
      res.tables.push_back(std::move(s));
    }
    res.summary = std::to_string(cs.size()) + " speeds" +
                  (o->soliton > 0 ? ", max soliton residual " + format_double(worst) : std::string());
    return res;
  };
}

}  // namespace kit
