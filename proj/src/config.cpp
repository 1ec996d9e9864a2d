#include "seholo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "seholo/errors.hpp"

namespace seholo {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
  key = trim(key);
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return key;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string v = normalize_key(text);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected on/off, got '" + trim(text) + "'");
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : "default"; }

std::optional<double> parse_optional(const std::string& key, const std::string& text) {
  if (normalize_key(text) == "default") return std::nullopt;
  return parse_double(key, text);
}

Setting number(std::string key, std::string help, double RunConfig::*field) {
  return {key, std::move(help),
          [key, field](RunConfig& c, const std::string& v) { c.*field = parse_double(key, v); },
          [field](const RunConfig& c) { return format_number(c.*field); }};
}

Setting model_number(std::string key, std::string help, double ModelConfig::*field,
                     bool must_be_positive = false) {
  return {key, std::move(help),
          [key, field, must_be_positive](RunConfig& c, const std::string& v) {
            const double x = parse_double(key, v);
            c.model.*field = must_be_positive ? positive(key, x) : x;
          },
          [field](const RunConfig& c) { return format_number(c.model.*field); }};
}

Setting optional_number(std::string key, std::string help,
                        std::optional<double> RunConfig::*field) {
  return {key, std::move(help),
          [key, field](RunConfig& c, const std::string& v) { c.*field = parse_optional(key, v); },
          [field](const RunConfig& c) { return opt(c.*field); }};
}

Setting optional_model_number(std::string key, std::string help,
                              std::optional<double> ModelConfig::*field) {
  return {key, std::move(help),
          [key, field](RunConfig& c, const std::string& v) {
            c.model.*field = parse_optional(key, v);
          },
          [field](const RunConfig& c) { return opt(c.model.*field); }};
}

Setting integer(std::string key, std::string help, int RunConfig::*field, int min_value) {
  return {key, std::move(help),
          [key, field, min_value](RunConfig& c, const std::string& v) {
            const int x = parse_int(key, v);
            if (x < min_value) {
              throw ConfigError(key + ": must be at least " + std::to_string(min_value));
            }
            c.*field = x;
          },
          [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

std::vector<Setting> make_settings() {
  std::vector<Setting> s;
  s.push_back(model_number("e-perp", "holding field E_perp (V/cm)", &ModelConfig::e_perp));
  s.push_back(model_number("pulse-duration", "Gaussian pulse duration T (ns)",
                           &ModelConfig::pulse_duration, true));
  s.push_back({"sigma", "pulse standard deviation (ns); 'default' = T/8",
               [](RunConfig& c, const std::string& v) {
                 const auto x = parse_optional("sigma", v);
                 c.model.sigma = x ? positive("sigma", *x) : 0.0;
               },
               [](const RunConfig& c) { return format_number(c.model.resolved_sigma()); }});
  s.push_back({"step", "RK4 step (ns); 'default' = T/5000",
               [](RunConfig& c, const std::string& v) {
                 const auto x = parse_optional("step", v);
                 c.model.step = x ? positive("step", *x) : 0.0;
               },
               [](const RunConfig& c) { return format_number(c.model.resolved_step()); }});
  s.push_back(optional_number("theta", "gate polar angle (rad)", &RunConfig::theta));
  s.push_back(optional_number("phi", "gate azimuth (rad)", &RunConfig::phi));
  s.push_back(optional_number("lag", "spin-down pulse lag (ns)", &RunConfig::lag));
  s.push_back({"kappa-scale", "multiplier on every decay rate",
               [](RunConfig& c, const std::string& v) {
                 const double x = parse_double("kappa-scale", v);
                 if (x < 0.0) throw ConfigError("kappa-scale: must be nonnegative");
                 c.model.kappa_scale = x;
               },
               [](const RunConfig& c) { return format_number(c.model.kappa_scale); }});
  s.push_back({"crosstalk", "off-resonant drive action on the other spin block (on/off)",
               [](RunConfig& c, const std::string& v) {
                 c.model.crosstalk = parse_bool("crosstalk", v);
               },
               [](const RunConfig& c) { return std::string(c.model.crosstalk ? "on" : "off"); }});
  s.push_back(model_number("delta13-reference",
                           "delta_13 at the reference field, sets the gradient (rad/ns)",
                           &ModelConfig::delta13_reference, true));
  s.push_back(model_number("reference-field", "field at which the gradient is calibrated (V/cm)",
                           &ModelConfig::reference_field));
  s.push_back(optional_model_number("delta13", "override delta_13 (rad/ns)",
                                    &ModelConfig::delta13_override));
  s.push_back(optional_model_number("delta23", "override delta_23 (rad/ns)",
                                    &ModelConfig::delta23_override));
  s.push_back(optional_model_number("delta12", "override delta_12 (rad/ns)",
                                    &ModelConfig::delta12_override));
  s.push_back({"kappa0", "two-ripplon penetration-depth parameter (1/m)",
               [](RunConfig& c, const std::string& v) {
                 c.model.constants.kappa_0 = positive("kappa0", parse_double("kappa0", v));
               },
               [](const RunConfig& c) { return format_number(c.model.constants.kappa_0); }});
  s.push_back({"grid-points", "vertical grid points",
               [](RunConfig& c, const std::string& v) {
                 const int n = parse_int("grid-points", v);
                 if (n < 10) throw ConfigError("grid-points: must be at least 10");
                 c.model.grid.n_points = n;
               },
               [](const RunConfig& c) { return std::to_string(c.model.grid.n_points); }});
  s.push_back({"z-max", "upper grid boundary (nm)",
               [](RunConfig& c, const std::string& v) {
                 c.model.grid.z_max_nm = positive("z-max", parse_double("z-max", v));
               },
               [](const RunConfig& c) { return format_number(c.model.grid.z_max_nm); }});
  s.push_back(number("rabi", "spin Rabi frequency for rydberg-control (rad/ns)",
                     &RunConfig::rabi));
  s.push_back(optional_number("duration", "rydberg-control drive duration (ns); default pi/rabi",
                              &RunConfig::duration));
  s.push_back(number("e-min", "sweep start (V/cm)", &RunConfig::e_min));
  s.push_back(number("e-max", "sweep end (V/cm)", &RunConfig::e_max));
  s.push_back(integer("points", "sweep points", &RunConfig::points, 1));
  s.push_back(integer("stride", "trajectory sampling stride (RK4 steps)", &RunConfig::stride, 1));
  s.push_back(integer("wavefunction-stride", "grid stride of emitted wavefunctions",
                      &RunConfig::wavefunction_stride, 1));
  s.push_back(integer("states", "number of vertical levels for spectrum", &RunConfig::n_states, 1));
  s.push_back({"format", "output format (csv/json)",
               [](RunConfig& c, const std::string& v) {
                 const std::string f = normalize_key(v);
                 if (f == "csv") {
                   c.format = OutputFormat::csv;
                 } else if (f == "json") {
                   c.format = OutputFormat::json;
                 } else {
                   throw ConfigError("format: expected csv or json, got '" + trim(v) + "'");
                 }
               },
               [](const RunConfig& c) {
                 return std::string(c.format == OutputFormat::csv ? "csv" : "json");
               }});
  s.push_back({"out", "output path (empty: stdout)",
               [](RunConfig& c, const std::string& v) { c.out = trim(v); },
               [](const RunConfig& c) { return c.out; }});
  s.push_back(integer("jobs", "worker threads for independent runs", &RunConfig::jobs, 1));
  return s;
}

}  // namespace

const std::vector<Setting>& settings() {
  static const std::vector<Setting> all = make_settings();
  return all;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
  const std::string k = normalize_key(key);
  for (const auto& s : settings()) {
    if (s.key != k) continue;
    try {
      s.set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line);
    }
    return;
  }
  throw ConfigError("unknown key '" + trim(key) + "'", line);
}

void load_config(RunConfig& cfg, std::istream& in) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    apply_setting(cfg, text.substr(0, eq), text.substr(eq + 1), line);
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    load_config(cfg, in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& s : settings()) os << s.key << " = " << s.get(cfg) << '\n';
  return os.str();
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace seholo
