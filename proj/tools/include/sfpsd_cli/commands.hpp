#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sfpsd/series.hpp"
#include "sfpsd_cli/json_io.hpp"

namespace sfpsd::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitNumericError = 2,
  kExitSpecError = 3,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> args;  // positional arguments after the command
  std::optional<std::string> spec_path;
  std::optional<std::string> family;  // a family name or "all"
  std::size_t n = 0;                  // 0: fuzz draws n from 2..8 per trial
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::optional<double> tol;          // defaults depend on the command
  std::optional<std::string> report_path;
  SeriesControl series;
  bool oracle = true;                 // fuzz: also compare against oracles
  std::size_t max_threads = 0;        // 0: hardware concurrency

  Json echo() const;
};

// Worker count for fuzz: hardware concurrency, capped by SFPSD_MAX_THREADS
// and by cfg.max_threads when set.
std::size_t worker_count(const RunConfig& cfg);

// Names accepted by `eval`.
std::vector<std::string> eval_function_names();

// Each command writes a JSON document to `out` (and to the report path when
// set) and returns the process exit code. Library exceptions propagate; the
// caller maps them with exit_code_for.
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_build(const RunConfig& cfg, std::ostream& out);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fuzz(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// 2 for NumericError, 3 for SpecError and malformed input.
int exit_code_for(const std::exception& e);

// Deterministic seed of one fuzz trial.
std::uint64_t trial_seed(std::uint64_t seed, KernelFamily family, std::size_t trial);

// Writes via a temporary file in the same directory and renames it over path.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace sfpsd::cli
