#include <cmath>
#include <memory>
#include <numbers>

#include <eternal/elliptic.hpp>
#include <eternal/errors.hpp>
#include <eternal/evolve.hpp>
#include <eternal/spectrum.hpp>

#include "commands.hpp"

namespace kit {

namespace {

Table history_table(const eternal::BlowupRecord& rec) {
  Table t{"history", {"r", "h1", "sup", "gradient", "w0_re", "w0_im"}, {}};
  for (const auto& h : rec.history) t.add({h.r, h.h1, h.sup, h.gradient, h.at_zero.real(), h.at_zero.imag()});
  return t;
}

eternal::ComplexField perturbed_profile(int n, double h, double eps, std::size_t N) {
  const auto bp = eternal::branch_point(n, h);
  auto phi0 = eternal::eigen(bp.profile, 0, 1).eigenvectors.at(0);
  phi0 *= eps > 0.0 ? eps : 1e-5 * bp.profile.l2_norm();
  return eternal::ComplexField::neumann(bp.profile - phi0, N);
}

}  // namespace

void register_evolve(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string mode = "shoot";
    int n = 1;
    double h = 0.1;
    int direction = -1;
    double eps = 0.0;
    double r_max = 10.0;
    std::size_t N = 0;
    double amplitude = std::numbers::pi * std::numbers::pi;
    double s = 0.5 / std::numbers::pi;
    double lambda = 0.0;
    double w0 = 0.0;
    double w0_im = 0.0;
    double theta = 0.0;
    double tol = 0.0;
    bool history = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("evolve", "complex-time integration: shooting, Schroedinger runs, constant data");
  sub->add_option("--mode", o->mode, "shoot | mono | reversibility | constant")
      ->check(CLI::IsMember({"shoot", "mono", "reversibility", "constant"}))
      ->capture_default_str();
  sub->add_option("--n", o->n, "branch mode")->check(CLI::PositiveNumber);
  sub->add_option("--h", o->h, "branch coordinate");
  sub->add_option("--direction", o->direction, "shoot along -phi_0 (-1) or +phi_0 (+1)")
      ->check(CLI::IsMember({-1, 1}));
  sub->add_option("--eps", o->eps, "perturbation size (0 = 1e-5 ||W||)");
  sub->add_option("--r-max", o->r_max, "ray horizon");
  sub->add_option("--N", o->N, "modes (0 = 256 for shoot, 64 otherwise)");
  sub->add_option("--amplitude", o->amplitude, "mono: psi0 = (a / 6) exp(2 pi i x)");
  sub->add_option("--s", o->s, "mono / reversibility: imaginary time");
  sub->add_option("--lambda", o->lambda, "mono / constant: lambda");
  sub->add_option("--w0", o->w0, "constant: real part of the initial value");
  sub->add_option("--w0-im", o->w0_im, "constant: imaginary part of the initial value");
  sub->add_option("--theta", o->theta, "constant: ray inclination in [-pi/2, pi/2]");
  sub->add_option("--tol", o->tol, "step-doubling error per unit ray length");
  sub->add_flag("--history", o->history, "emit the norm history");

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    eternal::EvolveOptions opts;
    opts.tol = ctx.tolerance(o->tol, opts.tol);
    inv.tolerance = opts.tol;
    Result res;

    if (o->mode == "shoot") {
      const std::size_t N = o->N ? o->N : eternal::kDefaultModes;
      inv.params = {{"mode", o->mode}, {"n", o->n},         {"h", o->h}, {"direction", o->direction},
                    {"eps", o->eps},   {"r_max", o->r_max}, {"N", N}};
      const auto s = eternal::heteroclinic_shoot(o->n, o->h, o->direction, o->eps, o->r_max, N, opts);
      Table t{"shoot",
              {"n", "h", "lambda", "direction", "eps", "mu0", "converged", "monotone", "distance_to_target",
               "reason", "r_end", "final_h1", "final_sup", "steps", "rejected"},
              {}};
      t.add({s.n, s.h, s.lambda, s.direction, s.eps, s.mu0, s.converged, s.monotone, s.distance_to_target,
             eternal::to_string(s.record.reason), s.record.r_star_lower, s.record.final_h1, s.record.final_sup,
             s.record.steps, s.record.rejected});
      res.tables.push_back(std::move(t));
      if (o->history) res.tables.push_back(history_table(s.record));
      if (o->direction < 0) {
        res.summary = s.converged ? "reached W_0 at r = " + format_double(s.record.r_star_lower) +
                                        (s.monotone ? ", monotone" : ", not monotone")
                                  : "did not reach W_0 (" + eternal::to_string(s.record.reason) + ")";
        res.status = s.converged ? 0 : 2;
      } else {
        res.summary = s.record.diverged ? "blow-up past r = " + format_double(s.record.r_star_lower)
                                        : "no blow-up before r = " + format_double(s.record.r_star_lower);
      }
      return res;
    }

    const std::size_t N = o->N ? o->N : 64;
    if (o->mode == "mono") {
      inv.params = {{"mode", o->mode}, {"amplitude", o->amplitude}, {"s", o->s}, {"lambda", o->lambda}, {"N", N}};
      const auto psi0 = eternal::ComplexField::periodic({{1, eternal::cplx(o->amplitude / 6.0, 0.0)}}, N);
      const auto rec = eternal::schrodinger_evolve(psi0, o->s, o->lambda, opts);
      const double err = rec.final_state.finite() ? (rec.final_state - psi0).h1_norm() : NAN;
      Table t{"mono", {"amplitude", "s", "lambda", "return_error", "relative_error", "reason", "steps"}, {}};
      t.add({o->amplitude, o->s, o->lambda, err, err / psi0.h1_norm(), eternal::to_string(rec.reason), rec.steps});
      res.tables.push_back(std::move(t));
      if (o->history) res.tables.push_back(history_table(rec));
      res.summary = "return error " + format_double(err);
      return res;
    }

    if (o->mode == "reversibility") {
      inv.params = {{"mode", o->mode}, {"n", o->n}, {"h", o->h}, {"eps", o->eps}, {"s", o->s}, {"N", N}};
      const auto bp = eternal::branch_point(o->n, o->h);
      eternal::CosineSeries bump({0.0, o->eps > 0.0 ? o->eps : 0.1});
      const auto psi0 = eternal::ComplexField::neumann(bp.profile + bump, N);
      const double defect = eternal::reversibility_defect(psi0, o->s, bp.lambda, opts);
      Table t{"reversibility", {"n", "h", "lambda", "s", "defect"}, {}};
      t.add({o->n, o->h, bp.lambda, o->s, defect});
      res.tables.push_back(std::move(t));
      res.summary = "defect " + format_double(defect);
      res.status = std::isfinite(defect) ? 0 : 2;
      return res;
    }

    inv.params = {{"mode", o->mode},   {"w0", o->w0},       {"w0_im", o->w0_im}, {"lambda", o->lambda},
                  {"theta", o->theta}, {"r_max", o->r_max}, {"N", N}};
    if (std::abs(o->theta) > 0.5 * std::numbers::pi + 1e-15) throw eternal::DomainError("theta outside [-pi/2, pi/2]");
    auto w0 = eternal::ComplexField::constant({o->w0, o->w0_im}, eternal::Basis::NeumannHalf, N);
    w0.theta = o->theta;
    const auto rec = eternal::integrate_ray(w0, o->lambda, o->r_max, opts);
    const eternal::cplx end = rec.final_state.coefficient(0);
    Table t{"constant",
            {"w0_re", "w0_im", "lambda", "theta", "r_end", "w_end_re", "w_end_im", "reason", "non_sectorial",
             "gradient_bound_ok"},
            {}};
    t.add({o->w0, o->w0_im, o->lambda, o->theta, rec.r_star_lower, end.real(), end.imag(),
           eternal::to_string(rec.reason), rec.non_sectorial, rec.gradient_bound_ok});
    res.tables.push_back(std::move(t));
    if (o->history) res.tables.push_back(history_table(rec));
    res.summary = eternal::to_string(rec.reason) + " at r = " + format_double(rec.r_star_lower);
    return res;
  };
}

void register_boundary(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string data = "constant";
    double w0 = 0.0;
    double lambda = 6.0;
    int n = 1;
    double h = 0.1;
    double eps = 0.0;
    std::vector<double> s{0.0};
    std::vector<double> range;
    double r_cap = 2.0;
    std::size_t N = 32;
    double tol = 0.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("boundary", "scan r*(s): imaginary leg to i s, then a real ray");
  sub->add_option("--data", o->data, "constant | heteroclinic")
      ->check(CLI::IsMember({"constant", "heteroclinic"}))
      ->capture_default_str();
  sub->add_option("--w0", o->w0, "constant: initial value");
  sub->add_option("--lambda", o->lambda, "constant: lambda");
  sub->add_option("--n", o->n, "heteroclinic: branch mode")->check(CLI::PositiveNumber);
  sub->add_option("--h", o->h, "heteroclinic: branch coordinate");
  sub->add_option("--eps", o->eps, "heteroclinic: offset along -phi_0 (0 = 1e-5 ||W||)");
  sub->add_option("--s", o->s, "imaginary offsets");
  sub->add_option("--s-range", o->range, "LO HI COUNT")->expected(3)->excludes("--s");
  sub->add_option("--r-cap", o->r_cap, "real horizon");
  sub->add_option("--N", o->N, "modes");
  sub->add_option("--tol", o->tol, "step-doubling error per unit ray length");

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    eternal::EvolveOptions opts;
    opts.tol = ctx.tolerance(o->tol, opts.tol);
    inv.tolerance = opts.tol;
    const auto ss = grid(o->s, o->range);
    eternal::ComplexField gamma0;
    double lambda = o->lambda;
    if (o->data == "constant") {
      inv.params = {{"data", o->data}, {"w0", o->w0}, {"lambda", lambda}, {"s", ss}, {"r_cap", o->r_cap}, {"N", o->N}};
      gamma0 = eternal::ComplexField::constant(o->w0, eternal::Basis::NeumannHalf, o->N);
    } else {
      lambda = eternal::branch_point(o->n, o->h).lambda;
      inv.params = {{"data", o->data}, {"n", o->n}, {"h", o->h}, {"eps", o->eps}, {"s", ss}, {"r_cap", o->r_cap},
                    {"N", o->N}};
      gamma0 = perturbed_profile(o->n, o->h, o->eps, o->N);
    }
    const auto scan = eternal::analyticity_boundary(gamma0, ss, lambda, o->r_cap, opts, ctx.jobs);
    Result res;
    Table t{"boundary", {"s", "schrodinger_ok", "finite", "r_star", "reason"}, {}};
    for (const auto& smp : scan.samples)
      t.add({smp.s, smp.schrodinger_ok, smp.finite, smp.r_star, eternal::to_string(smp.reason)});
    res.tables.push_back(std::move(t));
    res.summary = scan.corner_found
                      ? "corner candidate r = " + format_double(scan.corner_r) + ", s = " + format_double(scan.corner_s)
                      : "no finite r* below r_cap";
    return res;
  };
}

}  // namespace kit
