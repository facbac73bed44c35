#include "rrfilt/complexity.hpp"
#include "rrfilt/csv.hpp"
#include "rrfilt/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <random>
#include <string>

namespace {

struct SharedFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out;
  std::optional<double> mu;
  std::optional<double> eta;
  std::optional<int> rank;
};

void addSharedFlags(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "Config file with 'key = value' lines ('#' comments)");
  cmd->add_option("--seed", flags.seed, "Base RNG seed (run j uses seed + j)");
  cmd->add_option("--runs", flags.runs, "Number of Monte Carlo runs");
  cmd->add_option("--out", flags.out, "CSV output path");
  cmd->add_option("--mu", flags.mu,
                  "Override the weight step size of every algorithm");
  cmd->add_option("--eta", flags.eta, "Override the projection step size");
  cmd->add_option("--rank", flags.rank, "Override the reduced rank D");
}

rrfilt::ExperimentConfig loadConfig(const SharedFlags& flags) {
  rrfilt::ExperimentConfig config;
  if (!flags.config_path.empty())
    config = rrfilt::parseConfigFile(flags.config_path);
  if (flags.seed) config.base_seed = *flags.seed;
  if (flags.runs) config.num_runs = *flags.runs;
  if (flags.out) config.output = *flags.out;
  if (flags.mu) {
    config.fullrank_mu = *flags.mu;
    config.jio_mu = *flags.mu;
    config.krylov_mu = *flags.mu;
  }
  if (flags.eta) config.jio_eta = *flags.eta;
  if (flags.rank) config.rank = *flags.rank;
  rrfilt::validateConfig(config);
  return config;
}

void reportCurve(const rrfilt::LearningCurve& curve,
                 const rrfilt::ExperimentConfig& config,
                 const std::string& x_name, const char* metric) {
  for (std::size_t s = 0; s < curve.series.size(); ++s)
    if (curve.divergent_runs[s] > 0)
      std::fprintf(stderr, "warning: %s diverged in %d/%d runs (excluded)\n",
                   curve.series[s].c_str(), curve.divergent_runs[s],
                   curve.divergent_runs[s] + curve.valid_runs[s]);
  std::printf("%zu %s values x %zu series (%s), %d runs\n", curve.x.size(),
              x_name.c_str(), curve.series.size(), metric, config.num_runs);
  for (std::size_t s = 0; s < curve.series.size(); ++s)
    std::printf("  %-14s final %s = %.6g\n", curve.series[s].c_str(), metric,
                curve.values[s].back());
  if (!config.output.empty()) {
    rrfilt::emitCsv(rrfilt::curveTable(curve, x_name), config.output);
    std::printf("wrote %s\n", config.output.c_str());
  }
}

int runComplexity(const rrfilt::ExperimentConfig& config) {
  using rrfilt::Algorithm;
  const int m = config.scenario.observationDim();
  const int d = config.rank;

  std::mt19937_64 rng(config.base_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  rrfilt::ComplexVector r(m);
  for (int i = 0; i < m; ++i)
    r(i) = rrfilt::Complex(normal(rng), normal(rng));
  rrfilt::JioState jio = rrfilt::JioState::initial(m, d, 1e-3, 1e-3);
  jio.w_bar.setConstant(rrfilt::Complex(0.1, -0.2));
  rrfilt::FullRankState fullrank = rrfilt::FullRankState::initial(m, 1e-3);
  const rrfilt::OpCount jio_counted =
      rrfilt::instrumentedJioStep(jio, r, 1.0).ops;
  const rrfilt::OpCount fr_counted =
      rrfilt::instrumentedFullrankStep(fullrank, r, 1.0).ops;
  const rrfilt::OpCount fr_formula =
      rrfilt::complexityCount(Algorithm::kFullRank, m, d);
  const rrfilt::OpCount jio_formula =
      rrfilt::complexityCount(Algorithm::kJointIterative, m, d);
  const rrfilt::OpCount mwf_formula =
      rrfilt::complexityCount(Algorithm::kMultistageWiener, m, d);

  std::printf("Per-symbol complex operation counts at M = %d, D = %d\n", m, d);
  std::printf("%-18s %14s %14s %14s %14s\n", "algorithm", "adds(formula)",
              "adds(counted)", "mults(formula)", "mults(counted)");
  std::printf("%-18s %14lld %14lld %14lld %14lld\n", "fullrank_lms",
              static_cast<long long>(fr_formula.additions),
              static_cast<long long>(fr_counted.additions),
              static_cast<long long>(fr_formula.multiplications),
              static_cast<long long>(fr_counted.multiplications));
  std::printf("%-18s %14lld %14lld %14lld %14lld\n", "jio_lms",
              static_cast<long long>(jio_formula.additions),
              static_cast<long long>(jio_counted.additions),
              static_cast<long long>(jio_formula.multiplications),
              static_cast<long long>(jio_counted.multiplications));
  std::printf("%-18s %14lld %14s %14lld %14s\n", "multistage_wiener",
              static_cast<long long>(mwf_formula.additions), "-",
              static_cast<long long>(mwf_formula.multiplications), "-");
  const bool exact = fr_formula == fr_counted && jio_formula == jio_counted;
  std::printf("instrumented counters %s the closed-form counts\n",
              exact ? "match" : "DO NOT match");
  if (!config.output.empty()) {
    rrfilt::Table table;
    table.columns = {"m",        "d",         "fullrank_adds",
                     "fullrank_mults",        "jio_adds",
                     "jio_mults",             "multistage_adds",
                     "multistage_mults"};
    table.rows = {{static_cast<double>(m), static_cast<double>(d),
                   static_cast<double>(fr_formula.additions),
                   static_cast<double>(fr_formula.multiplications),
                   static_cast<double>(jio_formula.additions),
                   static_cast<double>(jio_formula.multiplications),
                   static_cast<double>(mwf_formula.additions),
                   static_cast<double>(mwf_formula.multiplications)}};
    rrfilt::emitCsv(table, config.output);
    std::printf("wrote %s\n", config.output.c_str());
  }
  return exact ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-rank adaptive filtering experiments"};
  app.require_subcommand(1);

  SharedFlags flags;
  CLI::App* mse_time = app.add_subcommand(
      "mse-time", "Supervised MSE learning curves vs received symbols");
  CLI::App* mse_rank = app.add_subcommand(
      "mse-rank", "Steady-state MSE vs rank D with tuned step sizes");
  CLI::App* ber = app.add_subcommand(
      "ber", "Decision-directed BER vs received symbols (fading channels)");
  CLI::App* complexity = app.add_subcommand(
      "complexity", "Closed-form vs instrumented operation counts");
  for (CLI::App* cmd : {mse_time, mse_rank, ber, complexity})
    addSharedFlags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const rrfilt::ExperimentConfig config = loadConfig(flags);
    if (mse_time->parsed()) {
      reportCurve(rrfilt::runMseVsSymbols(config), config, "symbol",
                  "MSE(dB)");
    } else if (mse_rank->parsed()) {
      reportCurve(rrfilt::runMseVsRank(config), config, "rank", "MSE(dB)");
    } else if (ber->parsed()) {
      reportCurve(rrfilt::runBerVsSymbols(config), config, "symbol", "BER");
    } else if (complexity->parsed()) {
      return runComplexity(config);
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
