// Copyright 2026 The oamsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "oamsim/circuit.hpp"
#include "oamsim/gates.hpp"
#include "oamsim/io.hpp"
#include "oamsim/photonsim.hpp"

namespace {

using namespace oamsim;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CheckReport {
  bool ok = true;

  void line(bool pass, const std::string& name, const std::string& detail) {
    std::cout << (pass ? "ok   " : "FAIL ") << name << "  " << detail << "\n";
    ok = ok && pass;
  }
};

/// Routing contract of the sorter: even OAM to the even port sign-flipped,
/// odd OAM to the odd port unflipped envelope, summed over polarization.
bool check_sorter_routing(const OpticalOperator& sorter, const BasisSpec& basis,
                          double& worst) {
  worst = 1.0;
  for (int l = basis.oam_min; l <= basis.oam_max; ++l) {
    if (!basis.contains_oam(-l)) continue;  // flip not representable
    const PureState in = basis_state(basis, ModeLabel{Polarization::H, l, 0});
    const PureState out = apply(sorter, in);
    const bool even = (l % 2) == 0;
    const int port = even ? 1 : 0;
    const int oam = even ? -l : l;
    double p = 0.0;
    p += std::norm(out.amplitudes(basis.index_of(ModeLabel{Polarization::H, oam, port})));
    p += std::norm(out.amplitudes(basis.index_of(ModeLabel{Polarization::V, oam, port})));
    worst = std::min(worst, p);
  }
  return worst >= 1.0 - 1e-12;
}

int cmd_verify_gates(const RunConfig& config) {
  const double dove_angle = config.sorter_dp_angle_deg * std::numbers::pi / 180.0;
  CheckReport report;
  bool leakage_seen = false;

  // Run every check even when one fails so all leaking elements get named.
  auto guarded = [&report, &leakage_seen](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const LeakageError& e) {
      report.line(false, name, std::string("leakage: ") + e.what());
      leakage_seen = true;
    }
  };

  const BasisSpec basis =
      BasisSpec::window(2, true, config.window_min, config.window_max);

  // SPP preconditions first: every shift must keep the logical modes interior.
  for (const Circuit& circuit :
       {x_gate_circuit(basis), x2_gate_circuit(basis), xdag_gate_circuit(basis)}) {
    for (const ElementSpec& spec : flatten(circuit)) {
      if (spec.kind != ElementKind::Spp) continue;
      guarded(circuit.name, [&] { spp(basis, spec.spp_step, spec.path); });
    }
  }

  guarded("parity_sorter", [&] {
    const OpticalOperator sorter_op = compile(parity_sorter(basis, 0, 1, dove_angle));
    double worst = 0.0;
    const bool routed = check_sorter_routing(sorter_op, basis, worst);
    report.line(routed, "parity_sorter", "min routing probability " + format_sig6(worst));

    const OpticalOperator combiner_op =
        compile(parity_combiner(basis, 0, 1, dove_angle));
    const OpticalOperator round_trip = compose({sorter_op, combiner_op});
    double max_dev = 0.0;
    for (int c = 0; c < basis.dim(); ++c) {
      if (std::binary_search(round_trip.leak_sources.begin(),
                             round_trip.leak_sources.end(), c)) {
        continue;
      }
      for (int r = 0; r < basis.dim(); ++r) {
        const Complex expected = (r == c) ? Complex(1.0) : Complex(0.0);
        max_dev = std::max(max_dev, std::abs(round_trip.matrix(r, c) - expected));
      }
    }
    report.line(max_dev <= 1e-12, "parity_combiner",
                "combiner*sorter deviation from identity " + format_sig6(max_dev));
  });

  const std::vector<ModeLabel> logical = [&] {
    std::vector<ModeLabel> labels;
    for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
      labels.push_back(ModeLabel{Polarization::H, l, 0});
    }
    return labels;
  }();

  struct GateCase {
    Circuit circuit;
    GateTarget target;
  };
  const std::vector<GateCase> gates{
      {x_gate_circuit(basis), x_power(kLogicalDim, 1)},
      {x2_gate_circuit(basis), x_power(kLogicalDim, 2)},
      {xdag_gate_circuit(basis), x_power(kLogicalDim, -1)},
  };
  for (const GateCase& g : gates) {
    guarded(g.circuit.name, [&] {
      const OpticalOperator compiled = compile(g.circuit);
      const OpticalOperator target = embed_logical_gate(g.target, basis);
      const double f = fidelity_up_to_global_phase(target, compiled, logical);
      report.line(f >= 1.0 - 1e-9, g.circuit.name, "fidelity " + format_sig6(f));
    });
  }

  const BasisSpec cbasis =
      BasisSpec::window(3, true, config.window_min, config.window_max);
  std::vector<ModeLabel> hybrid = logical;
  for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
    hybrid.push_back(ModeLabel{Polarization::V, l, 0});
  }
  for (int n : {1, 2, -1}) {
    guarded("controlled_x_power(" + std::to_string(n) + ")", [&] {
      const Circuit circuit = controlled_x_power_circuit(n, cbasis);
      const OpticalOperator compiled = compile(circuit);
      const GateTarget ct = controlled_target(x_power(kLogicalDim, n));
      OpticalOperator target = OpticalOperator::identity(cbasis);
      std::vector<int> idx;
      for (const ModeLabel& label : hybrid) idx.push_back(cbasis.index_of(label));
      for (int c = 0; c < 2 * kLogicalDim; ++c) {
        for (int r = 0; r < 2 * kLogicalDim; ++r) {
          target.matrix(idx[r], idx[c]) = ct.matrix(r, c);
        }
      }
      const double f = fidelity_up_to_global_phase(target, compiled, hybrid);
      report.line(f >= 1.0 - 1e-9, circuit.name, "fidelity " + format_sig6(f));
    });
  }

  if (leakage_seen) return kExitConfigError;
  return report.ok ? kExitOk : kExitVerificationFailure;
}

std::string table_extension(const RunConfig& config) {
  return config.format == "json" ? ".json" : ".csv";
}

void write_table(const RunConfig& config, const std::string& stem,
                 const ConversionTable& table) {
  const std::string path = config.out_dir + "/" + stem + table_extension(config);
  if (config.format == "json") {
    write_text_file(path, to_json(table).dump(2) + "\n");
  } else {
    write_text_file(path, to_csv(table));
  }
}

void write_counts(const RunConfig& config, const std::string& stem,
                  const CountTable& table) {
  const std::string path = config.out_dir + "/counts_" + stem + table_extension(config);
  if (config.format == "json") {
    write_text_file(path, to_json(table).dump(2) + "\n");
  } else {
    write_text_file(path, to_csv(table));
  }
}

void write_manifest(const RunConfig& config) {
  nlohmann::json echo = to_json(config);
  echo.erase("out_dir");  // the destination is not part of the run identity
  nlohmann::json manifest{{"schema", kSchemaVersion},
                          {"version", OAMSIM_VERSION},
                          {"seed", config.seed},
                          {"config", echo}};
  write_text_file(config.out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

Circuit gate_circuit_by_name(const std::string& gate, const BasisSpec& basis) {
  if (gate == "x") return x_gate_circuit(basis);
  if (gate == "x2") return x2_gate_circuit(basis);
  if (gate == "xdag") return xdag_gate_circuit(basis);
  throw std::invalid_argument("unknown gate '" + gate + "'");
}

int cmd_run(const RunConfig& config) {
  const std::uint64_t seed = parse_seed(config.seed);
  std::filesystem::create_directories(config.out_dir);

  if (config.scenario == "table1") {
    const auto runs = run_table1_scenario(config.noise, seed, config.source);
    for (const ScenarioRun& run : runs) {
      write_table(config, "table1_" + run.name, run.measured);
      write_counts(config, "table1_" + run.name, run.counts);
    }
  } else if (config.scenario == "bases") {
    const BasisSpec basis =
        BasisSpec::window(2, true, config.window_min, config.window_max);
    const Circuit gate = gate_circuit_by_name(config.gate, basis);
    const ScenarioRun run =
        run_bases_scenario(gate, config.basis_index, config.noise, seed, config.source);
    write_table(config, run.name, run.measured);
    write_counts(config, run.name, run.counts);
  } else if (config.scenario == "controlled") {
    const int n = config.gate == "x" ? 1 : (config.gate == "x2" ? 2 : -1);
    const ControlState control =
        config.control == "H" ? ControlState::H : ControlState::Diagonal;
    const ScenarioRun run =
        run_controlled_scenario(n, control, config.noise, seed, config.source);
    write_table(config, run.name, run.measured);
    write_counts(config, run.name, run.counts);
  } else if (config.scenario == "custom-circuit") {
    if (config.circuit_file.empty()) {
      throw std::invalid_argument("custom-circuit scenario needs --circuit-file");
    }
    const Circuit circuit =
        circuit_from_json(nlohmann::json::parse(read_text_file(config.circuit_file)));
    const ScenarioRun run =
        run_bases_scenario(circuit, config.basis_index, config.noise, seed, config.source);
    write_table(config, run.name, run.measured);
    write_counts(config, run.name, run.counts);
  } else {
    throw std::invalid_argument("unknown scenario '" + config.scenario + "'");
  }
  write_manifest(config);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OAM-polarization photonic gate simulator"};
  app.get_formatter()->column_width(34);

  std::string config_path;
  RunConfig config;
  std::string noise_file;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* opt_scenario = app.add_option(
      "--scenario", config.scenario,
      "verify-gates|table1|bases|controlled|custom-circuit");
  auto* opt_gate = app.add_option("--gate", config.gate, "x|x2|xdag");
  auto* opt_basis = app.add_option("--basis", config.basis_index,
                                   "measurement basis index 1..7 (bases scenario)");
  auto* opt_control =
      app.add_option("--control", config.control, "control polarization: H|diagonal");
  auto* opt_seed = app.add_option("--seed", config.seed,
                                  "RNG seed, decimal or 0x-prefixed hex");
  auto* opt_noise = app.add_option("--noise-file", noise_file, "noise model JSON file");
  auto* opt_out = app.add_option("--out", config.out_dir, "output directory");
  auto* opt_format = app.add_option("--format", config.format, "csv|json");
  auto* opt_wmin = app.add_option("--window-min", config.window_min, "OAM window lower edge");
  auto* opt_wmax = app.add_option("--window-max", config.window_max, "OAM window upper edge");
  auto* opt_dp = app.add_option("--sorter-dp-angle-deg", config.sorter_dp_angle_deg,
                                "Dove prism mount angle inside the sorter");
  auto* opt_circ =
      app.add_option("--circuit-file", config.circuit_file, "circuit JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (!config_path.empty()) {
      RunConfig file_config =
          run_config_from_json(nlohmann::json::parse(read_text_file(config_path)));
      // Flags win over file values.
      if (!opt_scenario->count()) config.scenario = file_config.scenario;
      if (!opt_gate->count()) config.gate = file_config.gate;
      if (!opt_basis->count()) config.basis_index = file_config.basis_index;
      if (!opt_control->count()) config.control = file_config.control;
      if (!opt_seed->count()) config.seed = file_config.seed;
      if (!opt_out->count()) config.out_dir = file_config.out_dir;
      if (!opt_format->count()) config.format = file_config.format;
      if (!opt_wmin->count()) config.window_min = file_config.window_min;
      if (!opt_wmax->count()) config.window_max = file_config.window_max;
      if (!opt_dp->count()) config.sorter_dp_angle_deg = file_config.sorter_dp_angle_deg;
      if (!opt_circ->count()) config.circuit_file = file_config.circuit_file;
      config.source = file_config.source;
      config.noise = file_config.noise;
    }
    if (!opt_seed->count() && config_path.empty()) {
      if (const char* env_seed = std::getenv("OAMSIM_SEED")) {
        config.seed = env_seed;
      }
    }
    if (!noise_file.empty()) {
      config.noise =
          noise_model_from_json(nlohmann::json::parse(read_text_file(noise_file)));
    }
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (config.scenario == "verify-gates") {
      return cmd_verify_gates(config);
    }
    return cmd_run(config);
  } catch (const LeakageError& e) {
    std::cerr << "leakage error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::runtime_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }
}
