#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "sqg/experiments.hpp"
#include "sqg/field_io.hpp"
#include "sqg/sobolev.hpp"

using namespace sqg;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sqglab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SQGLAB_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config layering: defaults, file, overrides") {
  ExperimentConfig c("solve");
  CHECK(c.integer("K") == 128);
  CHECK(c.text("force") == "single_mode");
  CHECK(ExperimentConfig("continuity").integer("K") == 64);
  const auto doc = nlohmann::json{{"K", 32}, {"alpha", 0.3}};
  ExperimentConfig f = ExperimentConfig::from_json(doc, "solve");
  CHECK(f.integer("K") == 32);
  CHECK(f.solver().alpha == 0.3);
  f.set("alpha", "0.25");
  f.set("force", "two_mode");
  f.set("torus", "true");
  CHECK(f.number("alpha") == 0.25);
  CHECK(f.text("force") == "two_mode");
  CHECK(f.flag("torus"));
  CHECK(f.grid().K == 32);
}

TEST_CASE("config errors name the field") {
  CHECK_THROWS_WITH(ExperimentConfig::from_json({{"bogus", 1}}, "solve"), ContainsSubstring("bogus"));
  CHECK_THROWS_WITH(ExperimentConfig::from_json({{"K", "big"}}, "solve"), ContainsSubstring("'K'"));
  CHECK_THROWS_WITH(ExperimentConfig::from_json({{"experiment", "rlcheck"}}, "solve"), ContainsSubstring("experiment"));
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::array(), "solve"), ConfigError);
  ExperimentConfig c("solve");
  CHECK_THROWS_WITH(c.set("nope", "1"), ContainsSubstring("nope"));
  c.set("K", "48");
  CHECK_THROWS_WITH(c.grid(), ContainsSubstring("'K'"));
  c.set("K", "32");
  c.set("inner_method", "cg");
  CHECK_THROWS_WITH(c.solver(), ContainsSubstring("inner_method"));
  c.set("inner_method", "gmres");
  c.set("K", "32.5");
  CHECK_THROWS_WITH(c.integer("K"), ContainsSubstring("integer"));
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/config.json", "solve"), ConfigError);
  const fs::path dir = scratch("badjson");
  std::ofstream(dir / "c.json") << "{ not json";
  CHECK_THROWS_AS(ExperimentConfig::load(dir / "c.json", "solve"), ConfigError);
}

TEST_CASE("built-in forces") {
  ExperimentConfig c("solve");
  c.set("K", "32");
  c.set("delta", "0.5");
  const SpectralField s = build_force(c);
  CHECK(std::abs(s.coeff(1, 0) - cplx(0.0, -0.25)) < 1e-15);
  c.set("force", "two_mode");
  CHECK(std::abs(build_force(c).coeff(0, 2) - cplx(0.25, 0.0)) < 1e-15);
  c.set("force", "random");
  const SpectralField r = build_force(c);
  CHECK(std::abs(hs_norm(r, 0.0) - 0.5) < 1e-14);
  c.set("force", "nonsense");
  CHECK_THROWS_WITH(build_force(c), ContainsSubstring("force"));
  c.set("force", "file");
  c.set("force_file", "/nonexistent.sqgf");
  CHECK_THROWS_WITH(build_force(c), ContainsSubstring("force_file"));
}

TEST_CASE("solve writes artifacts deterministically") {
  std::vector<std::uint64_t> sums[2];
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path dir = scratch("solve" + std::to_string(rep));
    ExperimentConfig c("solve");
    c.set("K", "64");
    c.set("force", "two_mode");
    c.set("output_dir", dir.string());
    const ExperimentOutcome out = run_solve(c);
    REQUIRE(out.exit_code == kExitOk);
    for (const char* name : {"theta.sqgf", "report.json", "norms.json"}) {
      REQUIRE(fs::exists(dir / name));
      sums[rep].push_back(fnv1a64_file(dir / name));
    }
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("config").at("K") == 64);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report.at("converged") == true);
    const SpectralField theta = io::read_field(dir / "theta.sqgf");
    CHECK(theta.grid().K == 64);
  }
  CHECK(sums[0] == sums[1]);
}

TEST_CASE("solve maps smallness failures to exit code 2") {
  const fs::path dir = scratch("small");
  ExperimentConfig c("solve");
  c.set("K", "32");
  c.set("force", "two_mode");
  c.set("delta", "10");
  c.set("output_dir", dir.string());
  const ExperimentOutcome out = run_solve(c);
  CHECK(out.exit_code == kExitSmallness);
  CHECK_FALSE(out.messages.empty());
  c.set("delta", "0.01");
  c.set("max_outer", "2");
  CHECK(run_solve(c).exit_code == kExitNonConvergence);
}

TEST_CASE("rlcheck and nonuniform artifacts") {
  const fs::path dir = scratch("rl");
  ExperimentConfig c("rlcheck");
  c.set("output_dir", dir.string());
  c.set("n_max", "4");
  REQUIRE(run_rlcheck(c).exit_code == kExitOk);
  const std::string csv = slurp(dir / "rlcheck.csv");
  CHECK(csv.rfind("n,", 0) == 0);
  CHECK(fs::exists(dir / "phi.json"));

  const fs::path nd = scratch("nu");
  ExperimentConfig n("nonuniform");
  n.set("output_dir", nd.string());
  n.set("n_min", "3");
  n.set("n_max", "5");
  REQUIRE(run_nonuniform(n).exit_code == kExitOk);
  const std::string table = slurp(nd / "nonuniform.csv");
  CHECK(table.rfind("n,d_low,d_crit,g2_gap,b11,b12,b2,bgh,full_gap,rem_f,rem_g\r\n", 0) == 0);
  CHECK(fs::exists(nd / "nonuniform_fits.json"));

  // Torus columns that cannot be resolved are left empty with a warning.
  n.set("torus", "true");
  n.set("torus_K", "256");
  n.set("n_max", "3");
  const ExperimentOutcome t = run_nonuniform(n);
  CHECK(t.exit_code == kExitOk);
  REQUIRE_FALSE(t.messages.empty());
  CHECK_THAT(t.messages.front(), ContainsSubstring("n = 3"));
  CHECK(slurp(nd / "nonuniform.csv").find(",,,\r\n") != std::string::npos);
}

TEST_CASE("continuity and inequality scan run at small sizes") {
  const fs::path dir = scratch("cont");
  ExperimentConfig c("continuity");
  c.set("K", "32");
  c.set("j_max", "3");
  c.set("output_dir", dir.string());
  REQUIRE(run_continuity(c).exit_code == kExitOk);
  CHECK(fs::exists(dir / "continuity.csv"));
  CHECK(fs::exists(dir / "continuity_mollified.csv"));

  const fs::path id = scratch("ineq");
  ExperimentConfig q("ineq-scan");
  q.set("K", "32");
  q.set("samples", "8");
  q.set("lemma_cases", "5");
  q.set("cancellation_cases", "5");
  q.set("output_dir", id.string());
  const ExperimentOutcome out = run_experiment(q);
  CHECK(out.exit_code == kExitOk);
  CHECK(fs::exists(id / "smoothing.json"));
  CHECK(fs::exists(id / "cancellation.json"));
  const auto lemma = nlohmann::json::parse(slurp(id / "smoothing.json"));
  CHECK(lemma.is_object());
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch("cli");
  CHECK(run_cli("solve --K 32 --output_dir " + dir.string()) == kExitOk);
  CHECK(fs::exists(dir / "theta.sqgf"));
  CHECK(run_cli("norms " + (dir / "theta.sqgf").string() + " -s 0 0.5") == kExitOk);
  CHECK(run_cli("solve --K 32 --force two_mode --delta 10 --output_dir " + dir.string()) == kExitSmallness);
  CHECK(run_cli("solve -c /nonexistent.json") == kExitConfig);
  CHECK(run_cli("solve --K 33 --output_dir " + dir.string()) == kExitConfig);
  CHECK(run_cli("frobnicate") == kExitConfig);
  CHECK(run_cli("ineq-scan --K 32 --product_exponents [1.5,0,0.75,0.75] --output_dir " + dir.string()) == kExitConfig);
  std::ofstream(dir / "bad.json") << R"({"alpha": "x"})";
  CHECK(run_cli("solve -c " + (dir / "bad.json").string()) == kExitConfig);
}
