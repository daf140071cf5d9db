#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"

namespace kit {

struct Invocation {
  Json params = Json::object();
  Json tolerance;  // null when the subcommand has none
  Json seed;
};

struct Context {
  std::optional<double> env_tol;
  unsigned jobs = 1;

  /// explicit flag > environment > built-in default
  double tolerance(double flag, double fallback) const;
};

using Runner = std::function<Result(Invocation&)>;

struct Registry {
  Context ctx;
  std::map<const CLI::App*, Runner> runners;
};

/// values, or LO HI COUNT expanded to an inclusive uniform grid
std::vector<double> grid(const std::vector<double>& values, const std::vector<double>& range);

void register_branch(CLI::App& app, Registry& reg);
void register_spectrum(CLI::App& app, Registry& reg);
void register_resonance(CLI::App& app, Registry& reg);
void register_evolve(CLI::App& app, Registry& reg);
void register_boundary(CLI::App& app, Registry& reg);
void register_ode(CLI::App& app, Registry& reg);
void register_portrait(CLI::App& app, Registry& reg);
void register_trees(CLI::App& app, Registry& reg);
void register_waves(CLI::App& app, Registry& reg);
void register_figures(CLI::App& app, Registry& reg);

}  // namespace kit
