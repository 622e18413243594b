#ifndef SQG_EXPERIMENTS_HPP
#define SQG_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqg/solver.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

/// Malformed configuration; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit codes of the experiment driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSmallness = 2,
  kExitNonConvergence = 3,
  kExitInequality = 4,
};

/// One JSON document: built-in defaults for the named experiment, then the
/// user's file, then command-line overrides of top-level scalars.
class ExperimentConfig {
 public:
  explicit ExperimentConfig(const std::string& experiment);

  static ExperimentConfig from_json(const nlohmann::json& doc, const std::string& experiment);
  static ExperimentConfig load(const std::filesystem::path& path, const std::string& experiment);

  /// Overrides a top-level scalar from its command-line text. Numbers and
  /// booleans are parsed as JSON; anything else is taken as a string.
  void set(const std::string& key, const std::string& text);

  [[nodiscard]] const nlohmann::json& resolved() const { return doc_; }
  [[nodiscard]] std::string experiment() const { return doc_.at("experiment").get<std::string>(); }

  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] int integer(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] std::string text(const std::string& key) const;
  [[nodiscard]] std::vector<double> numbers(const std::string& key) const;

  /// Keys accepted at the top level, for building command-line flags.
  static std::vector<std::string> scalar_keys();

  [[nodiscard]] GridSpec grid() const;
  [[nodiscard]] SolverConfig solver() const;
  [[nodiscard]] std::filesystem::path output_dir() const { return text("output_dir"); }

 private:
  void merge(const nlohmann::json& user);
  nlohmann::json doc_;
};

/// Force named by the config: single_mode, two_mode, gaussian, random or file.
SpectralField build_force(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash of a file's bytes.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

struct ExperimentOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;
  std::vector<std::string> messages;
};

/// Each experiment writes its artifacts and a manifest.json (resolved config
/// plus artifact checksums) into the output directory. Smallness and
/// non-convergence errors become exit codes; other errors propagate.
ExperimentOutcome run_solve(const ExperimentConfig& cfg);
ExperimentOutcome run_continuity(const ExperimentConfig& cfg);
ExperimentOutcome run_nonuniform(const ExperimentConfig& cfg);
ExperimentOutcome run_rlcheck(const ExperimentConfig& cfg);
ExperimentOutcome run_inequality_scan(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment().
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// JSON object of hs_norm(u, s) for each s, plus grid information.
nlohmann::json field_norms(const SpectralField& u, const std::vector<double>& exponents);

}  // namespace sqg

#endif
