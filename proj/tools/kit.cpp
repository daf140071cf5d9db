#include "kit.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <eternal/errors.hpp>

#include "commands.hpp"

namespace kit {

double Context::tolerance(double flag, double fallback) const {
  if (flag > 0.0) return flag;
  if (env_tol) return *env_tol;
  return fallback;
}

std::vector<double> grid(const std::vector<double>& values, const std::vector<double>& range) {
  if (range.empty()) return values;
  const int count = static_cast<int>(range[2]);
  if (count < 1 || static_cast<double>(count) != range[2])
    throw CLI::ValidationError("range count must be a positive integer");
  if (count == 1) return {range[0]};
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(range[0] + (range[1] - range[0]) * i / (count - 1));
  return out;
}

namespace {

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("ETERNAL_KIT_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0.0)) throw CLI::ValidationError("ETERNAL_KIT_TOL must be a positive number");
  return v;
}

struct Replay {
  std::vector<std::string> args;
  std::optional<double> tolerance;
};

Replay replay_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string tag = "# descriptor ";
  if (text.rfind(tag, 0) == 0) text = text.substr(tag.size(), text.find('\n') - tag.size());
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw CLI::ValidationError(std::string("bad descriptor: ") + e.what());
  }
  if (doc.contains("descriptor")) doc = doc["descriptor"];
  if (!doc.contains("argv")) throw CLI::ValidationError("descriptor has no argv");
  Replay r;
  // the recorded destination is dropped so a replay never overwrites the file it reads
  const auto argv = doc["argv"].get<std::vector<std::string>>();
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "-o" || argv[i] == "--output") {
      ++i;
      continue;
    }
    if (argv[i].rfind("--output=", 0) == 0) continue;
    r.args.push_back(argv[i]);
  }
  if (doc.contains("tolerance") && doc["tolerance"].is_number()) r.tolerance = doc["tolerance"].get<double>();
  return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<double> tol;
  try {
    tol = env_tolerance();
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 64;
  }
  return dispatch(args, out, err, tol);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             std::optional<double> tolerance_override) {
  CLI::App app{"Numerical experiments on equilibria, spectra, blow-up and phase portraits of the\n"
               "quadratic heat equation w_t = w_xx + 6 w^2 - lambda.",
               "eternal-kit"};
  app.set_help_flag("--help", "print usage and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string format = "csv";
  std::string output;
  Registry reg;
  reg.ctx.env_tol = tolerance_override;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", output, "write data to this file instead of stdout");
  app.add_option("-j,--jobs", reg.ctx.jobs, "worker threads for sweeps")->check(CLI::Range(1u, 1024u));

  register_branch(app, reg);
  register_spectrum(app, reg);
  register_resonance(app, reg);
  register_evolve(app, reg);
  register_boundary(app, reg);
  register_ode(app, reg);
  register_portrait(app, reg);
  register_trees(app, reg);
  register_waves(app, reg);
  register_figures(app, reg);

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-run the invocation recorded in a descriptor or output file");
  replay->add_option("file", replay_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 64;
  }

  CLI::App* selected = app.get_subcommands().front();
  if (selected == replay) {
    Replay again;
    try {
      again = replay_args(replay_path);
    } catch (const CLI::Error& e) {
      err << "error: " << e.what() << '\n';
      return 64;
    }
    if (!output.empty()) again.args.insert(again.args.begin(), {"-o", output});
    return dispatch(again.args, out, err, again.tolerance ? again.tolerance : tolerance_override);
  }

  Invocation inv;
  Result result;
  try {
    result = reg.runners.at(selected)(inv);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n\n" << selected->help();
    return 64;
  } catch (const eternal::DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const eternal::NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  }

  Json descriptor = Json::object();
  descriptor["tool"] = "eternal-kit";
  descriptor["version"] = kVersion;
  descriptor["subcommand"] = selected->get_name();
  descriptor["argv"] = args;
  descriptor["params"] = inv.params;
  descriptor["tolerance"] = inv.tolerance;
  descriptor["seed"] = inv.seed;
  descriptor["jobs"] = reg.ctx.jobs;
  descriptor["output"] = output.empty() ? Json() : Json(output);

  const Format f = format == "json" ? Format::JSON : Format::CSV;
  if (output.empty()) {
    emit(out, f, descriptor, result);
  } else {
    std::ofstream file(output);
    if (!file) {
      err << "error: cannot write " << output << '\n';
      return 1;
    }
    emit(file, f, descriptor, result);
  }
  err << selected->get_name() << ": " << result.summary << '\n';
  return result.status;
}

}  // namespace kit
