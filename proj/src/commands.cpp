#include "seholo/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "CLI11.hpp"
#include "seholo/errors.hpp"

namespace seholo {

namespace {

constexpr double kPi = std::numbers::pi;

const char* const kPopulationColumns[kCompositeDim] = {"pop_down_1", "pop_down_2", "pop_down_3",
                                                       "pop_up_1",   "pop_up_2",   "pop_up_3"};

CommandResult cnot_table(const RunConfig& cfg) {
  const OperatingPoint op = make_operating_point(cfg.model);
  Table t{"cnot", {"input", "ideal_output", "fidelity"}, {}};
  for (const auto& row : run_cnot_table(op, cfg.jobs)) {
    t.add_row({row.input_label, row.ideal_label, row.fidelity});
  }
  return {{t}, std::nullopt};
}

CommandResult trajectory(const RunConfig& cfg) {
  const OperatingPoint op = make_operating_point(cfg.model);
  const Trajectory traj = run_entangling_trajectory(op, cfg.stride);
  std::vector<std::string> cols{"time_ns", "fidelity"};
  cols.insert(cols.end(), std::begin(kPopulationColumns), std::end(kPopulationColumns));
  cols.emplace_back("trace");
  Table t{"trajectory", cols, {}};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<Cell> row{traj.times[i], traj.fidelities[i]};
    for (int k = 0; k < kCompositeDim; ++k) row.emplace_back(traj.states[i].population(k));
    row.emplace_back(traj.states[i].trace());
    t.add_row(std::move(row));
  }
  return {{t}, std::nullopt};
}

CommandResult density_matrix(const RunConfig& cfg) {
  const OperatingPoint op = make_operating_point(cfg.model);
  const Trajectory traj = run_entangling_trajectory(op, cfg.stride);
  const Operator block = computational_block(traj.final_state().matrix());
  constexpr int labels[4] = {0, 1, 3, 4};
  Table t{"density_matrix", {"row", "col", "row_state", "col_state", "re", "im"}, {}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      t.add_row({static_cast<long>(i), static_cast<long>(j),
                 BasisLabel::from_index(labels[i]).str(), BasisLabel::from_index(labels[j]).str(),
                 block(i, j).real(), block(i, j).imag()});
    }
  }
  return {{t}, std::nullopt};
}

Table field_table(const std::string& name, const std::vector<FieldPoint>& points,
                  bool with_fidelity) {
  std::vector<std::string> cols{"e_perp_v_per_cm", "kappa2_per_ns", "kappa3_per_ns"};
  if (with_fidelity) cols.emplace_back("fidelity");
  Table t{name, cols, {}};
  for (const auto& p : points) {
    std::vector<Cell> row{p.e_perp, p.kappa2, p.kappa3};
    if (with_fidelity) row.emplace_back(p.fidelity);
    t.add_row(std::move(row));
  }
  return t;
}

CommandResult field_sweep(const RunConfig& cfg) {
  const auto fields = linspace(cfg.e_min, cfg.e_max, cfg.points);
  return {{field_table("field_sweep", fidelity_vs_field(cfg.model, fields, cfg.jobs), true)},
          std::nullopt};
}

CommandResult decay_rates(const RunConfig& cfg) {
  const auto fields = linspace(cfg.e_min, cfg.e_max, cfg.points);
  return {{field_table("decay_rates", decay_rate_sweep(cfg.model, fields, cfg.jobs), false)},
          std::nullopt};
}

CommandResult single_qubit(const RunConfig& cfg) {
  struct Case {
    std::string name;
    GateParams gate;
    double lag;
  };
  std::vector<Case> cases;
  if (cfg.theta || cfg.phi) {
    cases.push_back({"custom", GateParams(cfg.theta.value_or(kPi / 2.0), cfg.phi.value_or(0.0)),
                     cfg.lag.value_or(0.0)});
  } else {
    const std::vector<double> lags =
        cfg.lag ? std::vector<double>{*cfg.lag}
                : std::vector<double>{0.0, cfg.model.pulse_duration / 4.0};
    for (const auto& [name, gate] : {std::pair{"NOT", GateParams::not_gate()},
                                     std::pair{"H", GateParams::hadamard()}}) {
      for (double lag : lags) cases.push_back({name, gate, lag});
    }
  }
  const OperatingPoint op = make_operating_point(cfg.model);
  Table t{"single_qubit",
          {"gate", "theta_rad", "phi_rad", "lag_ns", "average_fidelity", "min_input_fidelity"},
          {}};
  for (const auto& c : cases) {
    const auto r = run_single_qubit_average(c.gate, c.lag, op, cfg.jobs);
    double worst = 1.0;
    for (double f : r.per_input) worst = std::min(worst, f);
    t.add_row({c.name, c.gate.theta(), c.gate.phi(), c.lag, r.average, worst});
  }
  return {{t}, std::nullopt};
}

CommandResult rydberg_control(const RunConfig& cfg) {
  if (!(cfg.rabi > 0.0)) throw ConfigError("rabi: must be positive");
  const double duration = cfg.duration.value_or(kPi / cfg.rabi);
  const OperatingPoint op = make_operating_point(cfg.model);
  const auto r = run_rydberg_control_gate(cfg.rabi, duration, op);
  Table t{"rydberg_control",
          {"rabi_rad_per_ns", "duration_ns", "delta12_rad_per_ns", "flip_fidelity",
           "idle_fidelity"},
          {}};
  t.add_row({r.rabi, r.duration, r.delta12, r.flip_fidelity, r.idle_fidelity});
  return {{t}, std::nullopt};
}

CommandResult spectrum(const RunConfig& cfg) {
  const auto& m = cfg.model;
  const auto sol = helium::solve_vertical_states(m.e_perp, m.grid, cfg.n_states, m.constants);
  Table levels{"levels",
               {"level", "energy_mev", "energy_ghz", "expected_z_nm", "grad_mev_per_nm"},
               {}};
  for (int n = 0; n < sol.n_states(); ++n) {
    levels.add_row({static_cast<long>(n + 1), sol.energies_mev[n], sol.energy_ghz(n + 1, m.constants),
                    sol.expected_z_nm[n], sol.grad_elements[n]});
  }
  std::vector<std::string> cols{"z_nm"};
  for (int n = 0; n < sol.n_states(); ++n) cols.push_back("psi_" + std::to_string(n + 1) + "_per_sqrt_nm");
  Table wf{"wavefunctions", cols, {}};
  for (Eigen::Index i = 0; i < sol.z_nm.size(); i += cfg.wavefunction_stride) {
    std::vector<Cell> row{sol.z_nm(i)};
    for (int n = 0; n < sol.n_states(); ++n) row.emplace_back(sol.wavefunctions(i, n));
    wf.add_row(std::move(row));
  }
  return {{levels, wf}, sol.warning};
}

using Handler = CommandResult (*)(const RunConfig&);

const std::vector<std::pair<std::string, std::pair<Handler, std::string>>>& registry() {
  static const std::vector<std::pair<std::string, std::pair<Handler, std::string>>> r = {
      {"cnot-table", {cnot_table, "CNOT fidelities on the five benchmark inputs"}},
      {"trajectory", {trajectory, "fidelity and populations along the entangling CNOT run"}},
      {"density-matrix", {density_matrix, "final 4x4 computational block after the CNOT"}},
      {"field-sweep", {field_sweep, "entangling CNOT fidelity and decay rates versus field"}},
      {"single-qubit", {single_qubit, "input-averaged fidelity of four-drive single-qubit gates"}},
      {"rydberg-control", {rydberg_control, "spin flip conditioned on the Rydberg state"}},
      {"spectrum", {spectrum, "vertical levels, <z> and wavefunctions"}},
      {"decay-rates", {decay_rates, "two-ripplon decay rates versus field"}},
  };
  return r;
}

void emit(const CommandResult& result, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    write_tables(result.tables, cfg.format, out);
    return;
  }
  const auto open = [](const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    return f;
  };
  if (cfg.format == OutputFormat::json || result.tables.size() == 1) {
    auto f = open(cfg.out);
    write_tables(result.tables, cfg.format, f);
    return;
  }
  for (std::size_t i = 0; i < result.tables.size(); ++i) {
    const auto& t = result.tables[i];
    auto f = open(i == 0 ? cfg.out : sibling_path(cfg.out, t.name));
    write_csv(t, f);
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, entry] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
  for (const auto& [key, entry] : registry()) {
    if (key == name) return entry.first(cfg);
  }
  throw ConfigError("unknown subcommand '" + name + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holonomic gates on electrons above liquid helium"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  bool dump = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_flag("--dump-config", dump, "print the resolved configuration and exit");
  std::map<std::string, std::string> raw;
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  for (const auto& s : settings()) {
    flags.emplace_back(s.key, app.add_option("--" + s.key, raw[s.key], s.help));
  }
  for (const auto& [name, entry] : registry()) app.add_subcommand(name, entry.second);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& [key, opt] : flags) {
      if (opt->count() > 0) {
        try {
          apply_setting(cfg, key, raw[key]);
        } catch (const ConfigError& e) {
          throw ConfigError(std::string("--") + e.what());
        }
      }
    }
    if (dump) {
      out << dump_config(cfg);
      return kExitOk;
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      err << app.help();
      return kExitConfig;
    }
    const CommandResult result = run_command(subs.front()->get_name(), cfg);
    emit(result, cfg, out);
    if (result.warning) {
      err << "warning: " << *result.warning << '\n';
      return kExitConvergence;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace seholo
