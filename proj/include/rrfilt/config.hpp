#pragma once

#include "rrfilt/cdma.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrfilt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment configuration. Every field maps one-to-one onto a config-file
/// key of the same name; see configs/default.cfg for the annotated set.
struct ExperimentConfig {
  CdmaParams scenario;

  int num_runs = 100;
  int num_symbols = 1500;
  int training_symbols = 500;
  std::uint64_t base_seed = 12345;
  int threads = 1;

  int rank = 3;              // D for the reduced-rank algorithms
  double fullrank_mu = 0.05;
  double jio_mu = 0.05;
  double jio_eta = 0.05;
  double krylov_mu = 0.05;

  int rank_min = 1;          // rank sweep bounds (mse-rank)
  int rank_max = 8;
  int tuning_runs = 10;      // Monte Carlo runs per grid point when tuning
  int floor_samples = 4000;  // sample size for the estimated MMSE floor
  int ber_window = 200;      // trailing window for BER estimates

  std::string output;        // CSV path; empty writes no file
};

/// Throws ConfigError naming the offending field(s) and value(s).
void validateConfig(const ExperimentConfig& config);

/// Parses flat `key = value` text: one pair per line, `#` starts a comment,
/// blank lines ignored, unknown or repeated keys rejected. Returns defaults
/// overridden by the given pairs, validated.
ExperimentConfig parseConfigText(const std::string& text);

/// parseConfigText on the contents of a file; errors mention the path.
ExperimentConfig parseConfigFile(const std::string& path);

}  // namespace rrfilt
