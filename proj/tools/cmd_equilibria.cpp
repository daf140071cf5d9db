#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

#include <eternal/chords.hpp>
#include <eternal/elliptic.hpp>
#include <eternal/errors.hpp>
#include <eternal/parallel.hpp>
#include <eternal/resonance.hpp>
#include <eternal/spectrum.hpp>

#include "commands.hpp"

namespace kit {

namespace {

std::vector<std::pair<int, double>> product(const std::vector<int>& ns, const std::vector<double>& hs) {
  std::vector<std::pair<int, double>> out;
  for (int n : ns)
    for (double h : hs) out.emplace_back(n, h);
  return out;
}

std::string join(const std::vector<std::uint32_t>& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
  return os.str();
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

void register_branch(CLI::App& app, Registry& reg) {
  struct Opts {
    std::vector<int> n{1};
    std::vector<double> h{0.0};
    std::vector<double> range;
    double tol = 0.0;
    int samples = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("branch", "equilibria W_n(h) with lambda, theta and residual");
  sub->add_option("--n", o->n, "modes")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--h", o->h, "modular coordinates in (-1, 1)")->capture_default_str();
  sub->add_option("--h-range", o->range, "LO HI COUNT")->expected(3)->excludes("--h");
  sub->add_option("--tol", o->tol, "certified series tail tolerance");
  sub->add_option("--samples", o->samples, "also sample each profile at this many points of [0, 1/2]")
      ->check(CLI::NonNegativeNumber);

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    const double tol = ctx.tolerance(o->tol, eternal::kDefaultTailTolerance);
    const auto hs = grid(o->h, o->range);
    inv.params = {{"n", o->n}, {"h", hs}, {"samples", o->samples}};
    inv.tolerance = tol;

    const auto inputs = product(o->n, hs);
    const auto points = eternal::parallel_map(
        inputs, [tol](const std::pair<int, double>& p) { return eternal::branch_point(p.first, p.second, tol); },
        ctx.jobs);

    Result res;
    Table t{"branch",
            {"n", "h", "theta", "lambda", "lambda_pitchfork", "w_at_0", "w_at_half", "residual", "harmonics",
             "constant"},
            {}};
    double worst = 0.0;
    for (const auto& bp : points) {
      const auto c = bp.profile.coeffs();
      const bool constant = std::all_of(c.begin() + (c.empty() ? 0 : 1), c.end(), [](double a) { return a == 0.0; });
      t.add({bp.n, bp.h, bp.theta, bp.lambda, eternal::pitchfork_lambda(bp.n), bp.value_at_zero(), bp.profile(0.5),
             bp.residual, bp.profile.truncation(), constant});
      worst = std::max(worst, bp.residual);
    }
    res.tables.push_back(std::move(t));

    if (o->samples > 0) {
      Table p{"profile", {"n", "h", "x", "w"}, {}};
      for (const auto& bp : points)
        for (int i = 0; i < o->samples; ++i) {
          const double x = o->samples == 1 ? 0.0 : 0.5 * i / (o->samples - 1);
          p.add({bp.n, bp.h, x, bp.profile(x)});
        }
      res.tables.push_back(std::move(p));
    }
    res.summary = std::to_string(points.size()) + " points, max residual " + fmt(worst);
    return res;
  };
}

void register_spectrum(CLI::App& app, Registry& reg) {
  struct Opts {
    std::vector<int> n{1};
    std::vector<double> h{0.05};
    std::vector<double> range;
    std::optional<double> lambda;
    int count = 6;
    std::size_t N = 0;
    int eigenfunctions = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("spectrum", "Galerkin spectrum of the linearization against the h-expansion");
  sub->add_option("--n", o->n, "modes")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--h", o->h, "modular coordinates")->capture_default_str();
  sub->add_option("--h-range", o->range, "LO HI COUNT")->expected(3)->excludes("--h");
  sub->add_option("--lambda", o->lambda, "homogeneous equilibria at this lambda instead of W_n");
  sub->add_option("--count", o->count, "eigenvalues per profile")->check(CLI::Range(1, 64))->capture_default_str();
  sub->add_option("--N", o->N, "Galerkin dimension (0 = 4K + 32)");
  sub->add_option("--eigenfunctions", o->eigenfunctions, "sample leading eigenfunctions at this many points")
      ->check(CLI::NonNegativeNumber);

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    Result res;
    const auto count = static_cast<std::size_t>(o->count);
    if (o->lambda) {
      const double lambda = *o->lambda;
      inv.params = {{"lambda", lambda}, {"count", o->count}, {"N", o->N}};
      const auto eq = eternal::homogeneous_equilibria(lambda);
      const auto src = eternal::eigen(eternal::CosineSeries::constant(eq.unstable), o->N, 0);
      const auto snk = eternal::eigen(eternal::CosineSeries::constant(eq.stable), o->N, 0);
      const auto f_src = eternal::homogeneous_spectrum(lambda, count);
      const auto f_snk = eternal::target_spectrum(lambda, count);
      Table t{"homogeneous", {"k", "mu_inf", "mu_inf_formula", "mu_target", "mu_target_formula"}, {}};
      double worst = 0.0;
      for (std::size_t k = 0; k < count && k < src.eigenvalues.size(); ++k) {
        t.add({k, src.eigenvalues[k], f_src[k], snk.eigenvalues[k], f_snk[k]});
        worst = std::max({worst, std::abs(src.eigenvalues[k] - f_src[k]), std::abs(snk.eigenvalues[k] - f_snk[k])});
      }
      res.tables.push_back(std::move(t));
      res.summary = "morse index of W_inf " + std::to_string(src.morse_index) + " (formula " +
                    std::to_string(eternal::homogeneous_morse_index(lambda)) + "), max deviation " + fmt(worst);
      return res;
    }

    const auto hs = grid(o->h, o->range);
    inv.params = {{"n", o->n}, {"h", hs}, {"count", o->count}, {"N", o->N}, {"eigenfunctions", o->eigenfunctions}};
    const auto inputs = product(o->n, hs);
    const auto reports = eternal::parallel_map(
        inputs,
        [&](const std::pair<int, double>& p) {
          return eternal::eigen(eternal::equilibrium_profile(p.first, p.second), o->N, count);
        },
        ctx.jobs);

    Table t{"spectrum",
            {"n", "h", "N", "k", "mu", "mu_perturbation", "defect", "morse_index", "converged", "sturm_consistent"},
            {}};
    Table ef{"eigenfunctions", {"n", "h", "k", "x", "phi"}, {}};
    std::ostringstream morse;
    bool all_converged = true;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto [n, h] = inputs[i];
      const auto& r = reports[i];
      all_converged = all_converged && r.converged;
      morse << (i ? " " : "") << r.morse_index;
      for (std::size_t k = 0; k < count && k < r.eigenvalues.size(); ++k) {
        const double p = eternal::perturbation_mu(n, static_cast<int>(k), h);
        t.add({n, h, r.N, k, r.eigenvalues[k], p, r.eigenvalues[k] - p, r.morse_index, r.converged,
               r.sturm_consistent});
      }
      for (std::size_t k = 0; k < r.eigenvectors.size() && k < count && o->eigenfunctions > 0; ++k)
        for (int s = 0; s < o->eigenfunctions; ++s) {
          const double x = o->eigenfunctions == 1 ? 0.0 : 0.5 * s / (o->eigenfunctions - 1);
          ef.add({n, h, k, x, r.eigenvectors[k](x)});
        }
    }
    res.tables.push_back(std::move(t));
    if (o->eigenfunctions > 0) res.tables.push_back(std::move(ef));
    res.summary = "morse indices " + morse.str() + (all_converged ? "" : "; refinement did not converge");
    res.status = all_converged ? 0 : 2;
    return res;
  };
}

void register_resonance(CLI::App& app, Registry& reg) {
  struct Opts {
    int n_min = 1;
    int n_max = 22;
    int d = 0;
    int order = 2;
    int bound = 0;
    int pythagorean = 0;
    int lambdas = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("resonance", "exact identical-resonance search at orders h^0..h^2");
  sub->add_option("--n-min", o->n_min, "first mode")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--n-max", o->n_max, "last mode")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--d", o->d, "manifold dimension (0 = n)")->check(CLI::NonNegativeNumber);
  sub->add_option("--order", o->order, "highest order checked")->check(CLI::Range(0, 2))->capture_default_str();
  sub->add_option("--bound", o->bound, "override the |m| search bound")->check(CLI::NonNegativeNumber);
  sub->add_option("--pythagorean", o->pythagorean, "emit this many Pythagorean worst cases instead")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--lambdas", o->lambdas, "emit the 1:m resonant lambdas of W_inf for m = 2..M instead")
      ->check(CLI::NonNegativeNumber);

  reg.runners[sub] = [o, &ctx = reg.ctx](Invocation& inv) {
    Result res;
    if (o->pythagorean > 0) {
      inv.params = {{"pythagorean", o->pythagorean}};
      Table t{"pythagorean", {"a", "b", "n", "d", "identity", "fast_bound"}, {}};
      for (const auto& c : eternal::pythagorean_worst_cases(static_cast<std::size_t>(o->pythagorean))) {
        const mpz_class lhs = (c.d - 2) * (c.d - 2) + (c.d - 1) * (c.d - 1);
        // d >= 1 + n / sqrt 2 exactly: 2 (d - 1)^2 >= n^2
        const bool beyond = 2 * (c.d - 1) * (c.d - 1) >= c.n * c.n;
        t.add({c.a.get_str(), c.b.get_str(), c.n.get_str(), c.d.get_str(), lhs == c.n * c.n, !beyond});
      }
      res.tables.push_back(std::move(t));
      res.summary = std::to_string(o->pythagorean) + " worst cases";
      return res;
    }
    if (o->n_min > o->n_max) throw CLI::ValidationError("--n-min exceeds --n-max");
    if (o->lambdas > 0) {
      if (o->lambdas < 2) throw CLI::ValidationError("--lambdas needs M >= 2");
      inv.params = {{"n_min", o->n_min}, {"n_max", o->n_max}, {"lambdas", o->lambdas}};
      Table t{"resonant_lambdas", {"n", "m", "lambda", "lambda_pitchfork"}, {}};
      for (int n = o->n_min; n <= o->n_max; ++n) {
        const auto ls = eternal::homogeneous_resonant_lambdas(n, o->lambdas);
        for (std::size_t i = 0; i < ls.size(); ++i) t.add({n, static_cast<int>(i) + 2, ls[i], eternal::pitchfork_lambda(n)});
      }
      res.tables.push_back(std::move(t));
      res.summary = "resonant lambdas for n = " + std::to_string(o->n_min) + ".." + std::to_string(o->n_max);
      return res;
    }

    inv.params = {{"n_min", o->n_min}, {"n_max", o->n_max}, {"d", o->d}, {"order", o->order}, {"bound", o->bound}};
    std::vector<int> ns;
    for (int n = o->n_min; n <= o->n_max; ++n) ns.push_back(n);
    const auto certs = eternal::parallel_map(
        ns,
        [&](int n) {
          const int d = o->d == 0 ? n : o->d;
          if (d > n) throw eternal::DomainError("dimension d exceeds n");
          return eternal::identical_resonance_check(n, d, o->order, o->bound);
        },
        ctx.jobs);

    std::vector<std::string> cols{"n", "d", "search_bound"};
    for (int p = 0; p <= o->order; ++p) cols.push_back("survivors_h" + std::to_string(p));
    for (const char* c : {"order1_vacuous", "witnesses", "fast_bound", "verdict"}) cols.emplace_back(c);
    Table t{"resonance", cols, {}};
    Table w{"witnesses", {"n", "j", "m"}, {}};
    std::vector<int> found;
    for (const auto& c : certs) {
      Json row = {c.n, c.d, c.search_bound};
      for (std::size_t p = 0; p < c.survivors.size(); ++p) row.push_back(c.survivors[p]);
      row.push_back(c.order1_vacuous);
      row.push_back(c.witnesses.size());
      row.push_back(eternal::fast_bound_check(c.n, c.d));
      row.push_back(eternal::to_string(c.verdict));
      t.add(std::move(row));
      for (const auto& wit : c.witnesses) w.add({c.n, wit.j, join(wit.m)});
      if (c.verdict != eternal::ResonanceVerdict::NO_IDENTICAL_RESONANCE) found.push_back(c.n);
    }
    res.tables.push_back(std::move(t));
    if (!w.rows.empty()) res.tables.push_back(std::move(w));
    std::string range = "n = " + std::to_string(o->n_min) + ".." + std::to_string(o->n_max);
    if (found.empty()) {
      res.summary = range + ": NO_IDENTICAL_RESONANCE throughout";
    } else {
      std::ostringstream os;
      for (std::size_t i = 0; i < found.size(); ++i) os << (i ? "," : "") << found[i];
      res.summary = range + ": witnesses at n = " + os.str();
    }
    return res;
  };
}

void register_trees(CLI::App& app, Registry& reg) {
  struct Opts {
    int d = 0;
    std::vector<int> range;
    bool enumerate = false;
    bool codes = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("trees", "counts of phase portrait classes as plane trees up to rotation");
  auto* single = sub->add_option("--d", o->d, "degree")->check(CLI::Range(2, 4096));
  sub->add_option("--d-range", o->range, "LO HI")->expected(2)->excludes(single);
  sub->add_flag("--enumerate", o->enumerate, "cross-check by explicit enumeration (d <= 14)");
  sub->add_flag("--codes", o->codes, "list canonical chord codes (d <= 14)");

  reg.runners[sub] = [o](Invocation& inv) {
    int lo = o->d, hi = o->d;
    if (!o->range.empty()) {
      lo = o->range[0];
      hi = o->range[1];
    } else if (o->d == 0) {
      throw CLI::ValidationError("give --d or --d-range");
    }
    if (lo < 2 || hi < lo) throw CLI::ValidationError("degrees must satisfy 2 <= lo <= hi");
    inv.params = {{"d_min", lo}, {"d_max", hi}, {"enumerate", o->enumerate}, {"codes", o->codes}};
    Result res;
    Table t{"trees", {"d", "count", "catalan", "enumerated"}, {}};
    Table c{"codes", {"d", "code"}, {}};
    std::string last;
    bool mismatch = false;
    for (int d = lo; d <= hi; ++d) {
      const mpz_class n = eternal::count_portraits(d);
      Json enumerated;
      if (o->enumerate || o->codes) {
        const auto all = eternal::enumerate_diagrams(d);
        if (o->enumerate) {
          enumerated = all.size();
          mismatch = mismatch || mpz_class(static_cast<unsigned long>(all.size())) != n;
        }
        if (o->codes)
          for (const auto& diag : all) c.add({d, diag.code()});
      }
      t.add({d, n.get_str(), eternal::catalan(static_cast<unsigned>(d - 1)).get_str(), enumerated});
      last = n.get_str();
    }
    res.tables.push_back(std::move(t));
    if (o->codes) res.tables.push_back(std::move(c));
    res.summary = lo == hi ? "d = " + std::to_string(lo) + ": " + last
                           : "d = " + std::to_string(lo) + ".." + std::to_string(hi);
    if (mismatch) {
      res.summary += "; enumeration disagrees with the count";
      res.status = 2;
    }
    return res;
  };
}

}  // namespace kit
