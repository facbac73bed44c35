#include "rrfilt/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace rrfilt {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return s.substr(begin, end - begin);
}

int parseInt(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" +
                      value + "'");
  }
  if (consumed != value.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + value +
                      "'");
  if (parsed < std::numeric_limits<int>::min() ||
      parsed > std::numeric_limits<int>::max())
    throw ConfigError("key '" + key + "': value " + value + " out of range");
  return static_cast<int>(parsed);
}

std::uint64_t parseU64(const std::string& key, const std::string& value) {
  if (!value.empty() && value[0] == '-')
    throw ConfigError("key '" + key + "': expected a non-negative integer, "
                      "got '" + value + "'");
  std::size_t consumed = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a non-negative integer, "
                      "got '" + value + "'");
  }
  if (consumed != value.size())
    throw ConfigError("key '" + key + "': expected a non-negative integer, "
                      "got '" + value + "'");
  return parsed;
}

double parseDouble(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value +
                      "'");
  }
  if (consumed != value.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + value +
                      "'");
  return parsed;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key,
                                  const std::string& value)>;

const std::map<std::string, Setter>& keyTable() {
  auto int_field = [](int ExperimentConfig::* member) {
    return Setter([member](ExperimentConfig& c, const std::string& k,
                           const std::string& v) { c.*member = parseInt(k, v); });
  };
  auto double_field = [](double ExperimentConfig::* member) {
    return Setter([member](ExperimentConfig& c, const std::string& k,
                           const std::string& v) {
      c.*member = parseDouble(k, v);
    });
  };
  auto scenario_int = [](int CdmaParams::* member) {
    return Setter([member](ExperimentConfig& c, const std::string& k,
                           const std::string& v) {
      c.scenario.*member = parseInt(k, v);
    });
  };
  auto scenario_double = [](double CdmaParams::* member) {
    return Setter([member](ExperimentConfig& c, const std::string& k,
                           const std::string& v) {
      c.scenario.*member = parseDouble(k, v);
    });
  };
  static const std::map<std::string, Setter> table = {
      {"num_users", scenario_int(&CdmaParams::num_users)},
      {"processing_gain", scenario_int(&CdmaParams::processing_gain)},
      {"channel_length", scenario_int(&CdmaParams::channel_length)},
      {"isi_span", scenario_int(&CdmaParams::isi_span)},
      {"snr_db", scenario_double(&CdmaParams::snr_db)},
      {"power_std_db", scenario_double(&CdmaParams::power_std_db)},
      {"doppler", scenario_double(&CdmaParams::doppler)},
      {"num_runs", int_field(&ExperimentConfig::num_runs)},
      {"num_symbols", int_field(&ExperimentConfig::num_symbols)},
      {"training_symbols", int_field(&ExperimentConfig::training_symbols)},
      {"base_seed",
       Setter([](ExperimentConfig& c, const std::string& k,
                 const std::string& v) { c.base_seed = parseU64(k, v); })},
      {"threads", int_field(&ExperimentConfig::threads)},
      {"rank", int_field(&ExperimentConfig::rank)},
      {"fullrank_mu", double_field(&ExperimentConfig::fullrank_mu)},
      {"jio_mu", double_field(&ExperimentConfig::jio_mu)},
      {"jio_eta", double_field(&ExperimentConfig::jio_eta)},
      {"krylov_mu", double_field(&ExperimentConfig::krylov_mu)},
      {"rank_min", int_field(&ExperimentConfig::rank_min)},
      {"rank_max", int_field(&ExperimentConfig::rank_max)},
      {"tuning_runs", int_field(&ExperimentConfig::tuning_runs)},
      {"floor_samples", int_field(&ExperimentConfig::floor_samples)},
      {"ber_window", int_field(&ExperimentConfig::ber_window)},
      {"output",
       Setter([](ExperimentConfig& c, const std::string&,
                 const std::string& v) { c.output = v; })},
  };
  return table;
}

void requirePositive(const char* name, double value) {
  if (!(value > 0.0))
    throw ConfigError(std::string(name) + " must be positive, got " +
                      std::to_string(value));
}

void requireAtLeast(const char* name, int value, int bound) {
  if (value < bound)
    throw ConfigError(std::string(name) + " must be >= " +
                      std::to_string(bound) + ", got " +
                      std::to_string(value));
}

}  // namespace

void validateConfig(const ExperimentConfig& config) {
  const CdmaParams& s = config.scenario;
  requireAtLeast("num_users", s.num_users, 1);
  requireAtLeast("processing_gain", s.processing_gain, 1);
  requireAtLeast("channel_length", s.channel_length, 5);
  requireAtLeast("isi_span", s.isi_span, 1);
  if (s.power_std_db < 0.0)
    throw ConfigError("power_std_db must be non-negative, got " +
                      std::to_string(s.power_std_db));
  if (s.doppler < 0.0 || s.doppler >= 0.5)
    throw ConfigError("doppler must lie in [0, 0.5), got " +
                      std::to_string(s.doppler));

  requireAtLeast("num_runs", config.num_runs, 1);
  requireAtLeast("num_symbols", config.num_symbols, 1);
  requireAtLeast("training_symbols", config.training_symbols, 0);
  if (config.training_symbols > config.num_symbols)
    throw ConfigError("training_symbols = " +
                      std::to_string(config.training_symbols) +
                      " exceeds num_symbols = " +
                      std::to_string(config.num_symbols));
  requireAtLeast("threads", config.threads, 1);

  const int m = s.observationDim();
  auto check_rank = [m](const char* name, int value) {
    if (value < 1)
      throw ConfigError(std::string(name) + " must be >= 1, got " +
                        std::to_string(value));
    if (value > m)
      throw ConfigError(std::string(name) + " D = " + std::to_string(value) +
                        " exceeds the observation dimension M = " +
                        std::to_string(m));
  };
  check_rank("rank", config.rank);
  check_rank("rank_min", config.rank_min);
  check_rank("rank_max", config.rank_max);
  if (config.rank_min > config.rank_max)
    throw ConfigError("rank_min = " + std::to_string(config.rank_min) +
                      " exceeds rank_max = " + std::to_string(config.rank_max));

  requirePositive("fullrank_mu", config.fullrank_mu);
  requirePositive("jio_mu", config.jio_mu);
  if (config.jio_eta < 0.0)
    throw ConfigError("jio_eta must be non-negative, got " +
                      std::to_string(config.jio_eta));
  requirePositive("krylov_mu", config.krylov_mu);
  requireAtLeast("tuning_runs", config.tuning_runs, 1);
  requireAtLeast("floor_samples", config.floor_samples, 1);
  requireAtLeast("ber_window", config.ber_window, 1);
}

ExperimentConfig parseConfigText(const std::string& text) {
  ExperimentConfig config;
  std::map<std::string, int> seen;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_number) +
                        ": expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line_number) +
                        ": missing key before '='");
    const auto entry = keyTable().find(key);
    if (entry == keyTable().end())
      throw ConfigError("line " + std::to_string(line_number) +
                        ": unknown key '" + key + "'");
    if (const auto [it, inserted] = seen.emplace(key, line_number); !inserted)
      throw ConfigError("line " + std::to_string(line_number) + ": key '" +
                        key + "' already set on line " +
                        std::to_string(it->second));
    entry->second(config, key, value);
  }
  validateConfig(config);
  return config;
}

ExperimentConfig parseConfigFile(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  try {
    return parseConfigText(buffer.str());
  } catch (const ConfigError& err) {
    throw ConfigError(path + ": " + err.what());
  }
}

}  // namespace rrfilt
