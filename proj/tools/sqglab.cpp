// Command-line driver for the SQG experiments.
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqg/experiments.hpp"
#include "sqg/field_io.hpp"

namespace {

struct ExperimentCommand {
  std::string name;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

int run(const ExperimentCommand& cmd) {
  sqg::ExperimentConfig cfg = cmd.config_path.empty() ? sqg::ExperimentConfig(cmd.name)
                                                      : sqg::ExperimentConfig::load(cmd.config_path, cmd.name);
  for (const auto& [key, value] : cmd.overrides)
    if (cmd.app->count("--" + key) > 0) cfg.set(key, value);
  const sqg::ExperimentOutcome out = sqg::run_experiment(cfg);
  for (const auto& m : out.messages) std::cerr << m << "\n";
  for (const auto& p : out.artifacts) std::cout << p.string() << "\n";
  std::cout << (cfg.output_dir() / "manifest.json").string() << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the stationary fractional SQG equation"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> experiments = {
      {"solve", "Solve for one force and write theta, report and norms"},
      {"continuity", "Gap norms along a converging family of forces"},
      {"nonuniform", "Norm table of the non-uniform continuity sequences"},
      {"rlcheck", "Riemann-Lebesgue table for the profile phi"},
      {"ineq-scan", "Product, commutator, interpolation and cancellation probes"},
  };
  std::vector<ExperimentCommand> commands(experiments.size());
  const std::vector<std::string> keys = sqg::ExperimentConfig::scalar_keys();
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    ExperimentCommand& c = commands[i];
    c.name = experiments[i].first;
    c.app = app.add_subcommand(c.name, experiments[i].second);
    c.app->add_option("-c,--config", c.config_path, "JSON configuration file");
    for (const std::string& key : keys) c.app->add_option("--" + key, c.overrides[key], "Override of '" + key + "'");
  }

  std::string norms_file;
  std::vector<double> norms_s{0.0};
  CLI::App* norms = app.add_subcommand("norms", "Print Sobolev norms of an SQGF1 file");
  norms->add_option("file", norms_file, "SQGF1 field file")->required();
  norms->add_option("-s,--s", norms_s, "Exponents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sqg::kExitConfig;
  }

  try {
    if (norms->parsed()) {
      const sqg::SpectralField u = sqg::io::read_field(std::filesystem::path(norms_file));
      std::cout << sqg::field_norms(u, norms_s).dump(2) << "\n";
      return sqg::kExitOk;
    }
    for (const ExperimentCommand& c : commands)
      if (c.app->parsed()) return run(c);
  } catch (const sqg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sqg::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return sqg::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sqg::kExitConfig;
  }
  return sqg::kExitConfig;
}
