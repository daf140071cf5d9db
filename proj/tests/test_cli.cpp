#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kit.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.status = kit::dispatch(args, out, err, std::nullopt);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// Descriptor lines carry the thread count and are checked separately.
std::vector<std::string> body_lines(const std::string& csv) {
  std::vector<std::string> lines;
  for (auto& l : split(csv, '\n'))
    if (l.rfind("# descriptor", 0) != 0) lines.push_back(l);
  return lines;
}

bool same_token(const std::string& a, const std::string& b) {
  if (a == b) return true;
  char* ea = nullptr;
  char* eb = nullptr;
  const double x = std::strtod(a.c_str(), &ea);
  const double y = std::strtod(b.c_str(), &eb);
  if (a.empty() || b.empty() || *ea != '\0' || *eb != '\0') return false;
  if (std::isnan(x) && std::isnan(y)) return true;
  return std::abs(x - y) <= 1e-9 + 1e-9 * std::max(std::abs(x), std::abs(y));
}

void check_golden(const std::string& name, const std::vector<std::string>& args) {
  CAPTURE(name);
  const Run r = run(args);
  REQUIRE(r.status == 0);
  const fs::path path = fs::path(ETERNAL_GOLDEN_DIR) / (name + ".csv");
  const char* update = std::getenv("ETERNAL_UPDATE_GOLDEN");
  if (update && std::string(update) == "1") {
    std::ofstream(path) << r.out;
    return;
  }
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file ", path.string());
  std::stringstream expected;
  expected << in.rdbuf();

  const auto want = body_lines(expected.str());
  const auto got = body_lines(r.out);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto a = split(want[i], ',');
    const auto b = split(got[i], ',');
    CAPTURE(i);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CAPTURE(a[j]);
      CAPTURE(b[j]);
      CHECK(same_token(a[j], b[j]));
    }
  }

  const std::string first = r.out.substr(0, r.out.find('\n'));
  REQUIRE(first.rfind("# descriptor ", 0) == 0);
  const auto desc = nlohmann::json::parse(first.substr(13));
  CHECK(desc["tool"] == "eternal-kit");
  CHECK(desc["version"] == kit::kVersion);
  CHECK(desc["subcommand"] == args.front());
}

}  // namespace

TEST_CASE("golden outputs") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"branch", {"branch", "--n", "1", "2", "--h", "0", "0.3", "-0.3", "--samples", "3"}},
      {"spectrum_branch", {"spectrum", "--n", "1", "--h", "0.1", "--count", "4"}},
      {"spectrum_homogeneous", {"spectrum", "--lambda", "100", "--count", "5"}},
      {"resonance", {"resonance", "--n-max", "12"}},
      {"resonance_pythagorean", {"resonance", "--pythagorean", "3"}},
      {"resonance_lambdas", {"resonance", "--lambdas", "4"}},
      {"trees_range", {"trees", "--d-range", "2", "10"}},
      {"trees_codes", {"trees", "--d", "5", "--enumerate", "--codes"}},
      {"evolve_constant", {"evolve", "--mode", "constant", "--w0", "0.5", "--lambda", "1"}},
      {"evolve_mono", {"evolve", "--mode", "mono", "--N", "32"}},
      {"evolve_reversibility", {"evolve", "--mode", "reversibility", "--N", "32"}},
      {"evolve_shoot", {"evolve", "--n", "1", "--h", "0", "--direction", "-1", "--N", "64", "--history"}},
      {"boundary", {"boundary", "--data", "constant", "--s", "0.1", "0.2", "--N", "16"}},
      {"ode_tanh", {"ode", "--case", "tanh"}},
      {"ode_imaginary", {"ode", "--case", "imaginary"}},
      {"ode_orange", {"ode", "--case", "orange"}},
      {"ode_escape", {"ode", "--case", "escape", "--cyclotomic", "3"}},
      {"ode_lattice", {"ode", "--case", "lattice", "--cyclotomic", "3"}},
      {"ode_degeneracy", {"ode", "--case", "degeneracy", "--cyclotomic", "4"}},
      {"ode_reversible", {"ode", "--case", "reversible"}},
      {"portrait_cubic", {"portrait", "--cyclotomic", "3", "--separatrices"}},
      {"portrait_quadratic", {"portrait", "--roots", "1", "-1"}},
      {"portrait_random", {"portrait", "--random", "4", "--seed", "2"}},
      {"waves", {"waves", "--c", "0", "1", "2"}},
      {"waves_resonant", {"waves", "--resonant", "5"}},
      {"waves_soliton", {"waves", "--soliton", "5"}},
      {"fig1", {"fig1", "--n-max", "1", "--count", "3"}},
      {"fig2", {"fig2", "--families", "2"}},
  };
  for (const auto& [name, args] : cases) check_golden(name, args);
}

TEST_CASE("json output mirrors the csv tables") {
  const Run csv = run({"waves", "--c", "0", "1"});
  const Run json = run({"--format", "json", "waves", "--c", "0", "1"});
  REQUIRE(json.status == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["descriptor"]["subcommand"] == "waves");
  REQUIRE(doc["tables"].size() >= 1);
  const auto& table = doc["tables"].begin().value();
  CHECK(table["rows"].size() == 2);
  CHECK(csv.out.find(table["columns"][0].get<std::string>()) != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).status == 64);
  CHECK(run({"nonsense"}).status == 64);
  CHECK(run({"branch", "--bogus"}).status == 64);
  CHECK(run({"branch", "--h", "1.5"}).status == 1);
  CHECK(run({"waves", "--c", "-1"}).status == 1);
  CHECK(run({"trees", "--d", "5"}).status == 0);
}

TEST_CASE("tolerance precedence") {
  std::ostringstream out, err;
  REQUIRE(kit::dispatch({"branch", "--tol", "1e-10"}, out, err, 1e-6) == 0);
  const std::string first = out.str().substr(0, out.str().find('\n'));
  const auto desc = nlohmann::json::parse(first.substr(13));
  CHECK(desc["tolerance"].get<double>() == 1e-10);

  std::ostringstream out2, err2;
  REQUIRE(kit::dispatch({"branch"}, out2, err2, 1e-6) == 0);
  const auto desc2 = nlohmann::json::parse(out2.str().substr(13, out2.str().find('\n') - 13));
  CHECK(desc2["tolerance"].get<double>() == 1e-6);
}

TEST_CASE("replay reproduces a run") {
  const fs::path file = fs::temp_directory_path() / "eternal_kit_replay.csv";
  const Run first = run({"-o", file.string(), "branch", "--n", "2", "--h", "0.2"});
  REQUIRE(first.status == 0);
  std::ifstream in(file);
  std::stringstream saved;
  saved << in.rdbuf();
  const Run again = run({"replay", file.string()});
  REQUIRE(again.status == 0);
  CHECK(body_lines(again.out) == body_lines(saved.str()));
  fs::remove(file);
}
