#pragma once

// Run configuration: defaults, a plain-text key = value file, and
// command-line overrides (flags win over the file).

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "seholo/experiments.hpp"

namespace seholo {

enum class OutputFormat { csv, json };

struct RunConfig {
  ModelConfig model;
  std::optional<double> theta;  // unset: subcommand default gate
  std::optional<double> phi;
  std::optional<double> lag;    // ns
  double rabi = 2.0 * std::numbers::pi * 0.04;  // rad/ns
  std::optional<double> duration;               // ns; default pi / rabi
  double e_min = 100.0;
  double e_max = 1000.0;
  int points = 10;
  int stride = 50;              // trajectory sampling stride, in RK4 steps
  int wavefunction_stride = 10; // grid points between emitted wavefunction rows
  int n_states = 3;
  OutputFormat format = OutputFormat::csv;
  std::string out;              // empty: stdout
  int jobs = 1;
};

/// One configurable key. `set` throws ConfigError on a malformed value.
struct Setting {
  std::string key;
  std::string help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Setting>& settings();

/// Applies `key = value`; keys may use '-' or '_'. Throws ConfigError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                   int line = 0);

/// Parses a key = value stream ('#' starts a comment). Errors carry line numbers.
void load_config(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Every setting as `key = value`, in a fixed order.
std::string dump_config(const RunConfig& cfg);

/// Formats a double with 10 significant digits.
std::string format_number(double v);

}  // namespace seholo
