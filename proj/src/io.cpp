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

#include "oamsim/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace oamsim {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  return fields;
}

struct CsvBody {
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  Eigen::MatrixXd values;
};

/// Parse the long-form three-column body shared by both table kinds.
CsvBody parse_csv_body(const std::string& text, const std::string& value_column) {
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  std::vector<std::string> inputs, outputs;
  std::vector<std::tuple<std::string, std::string, double>> cells;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw std::invalid_argument("csv: expected 3 columns, got '" + line + "'");
    }
    if (!header_seen) {
      if (fields[0] != "input_label" || fields[1] != "output_label" ||
          fields[2] != value_column) {
        throw std::invalid_argument("csv: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    if (std::find(inputs.begin(), inputs.end(), fields[0]) == inputs.end()) {
      inputs.push_back(fields[0]);
    }
    if (std::find(outputs.begin(), outputs.end(), fields[1]) == outputs.end()) {
      outputs.push_back(fields[1]);
    }
    cells.emplace_back(fields[0], fields[1], std::stod(fields[2]));
  }
  if (!header_seen) throw std::invalid_argument("csv: missing header");
  CsvBody body{inputs, outputs,
               Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(inputs.size()),
                                     static_cast<Eigen::Index>(outputs.size()))};
  for (const auto& [in, out, value] : cells) {
    const auto i = std::find(inputs.begin(), inputs.end(), in) - inputs.begin();
    const auto j = std::find(outputs.begin(), outputs.end(), out) - outputs.begin();
    body.values(i, j) = value;
  }
  return body;
}

void require_no_comma(const std::string& label) {
  if (label.find(',') != std::string::npos) {
    throw std::invalid_argument("csv: label '" + label + "' contains a comma");
  }
}

json map_to_json(const std::map<int, double>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::map<int, double> map_from_json(const json& j) {
  std::map<int, double> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    m[std::stoi(it.key())] = it.value().get<double>();
  }
  return m;
}

}  // namespace

std::string format_sig6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("seed: empty string");
  std::size_t pos = 0;
  const int base = (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
                       ? 16
                       : 10;
  const std::uint64_t value = std::stoull(text, &pos, base);
  if (pos != text.size()) {
    throw std::invalid_argument("seed: trailing characters in '" + text + "'");
  }
  return value;
}

std::string seed_string(std::uint64_t seed) { return std::to_string(seed); }

std::string to_csv(const ConversionTable& table) {
  std::ostringstream os;
  os << "# schema: " << kSchemaVersion << "\n";
  os << "input_label,output_label,probability\n";
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    require_no_comma(table.input_labels[i]);
    for (std::size_t j = 0; j < table.output_labels.size(); ++j) {
      require_no_comma(table.output_labels[j]);
      os << table.input_labels[i] << ',' << table.output_labels[j] << ','
         << format_sig6(table.probabilities(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)))
         << "\n";
    }
  }
  return os.str();
}

ConversionTable conversion_table_from_csv(const std::string& text) {
  CsvBody body = parse_csv_body(text, "probability");
  ConversionTable table{body.input_labels, body.output_labels, body.values};
  table.validate(1e-6);  // formatted at 6 significant digits
  return table;
}

std::string to_csv(const CountTable& table) {
  std::ostringstream os;
  os << "# schema: " << kSchemaVersion << "\n";
  os << "# seed: " << seed_string(table.seed) << "\n";
  os << "input_label,output_label,counts\n";
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    require_no_comma(table.input_labels[i]);
    for (std::size_t j = 0; j < table.analyzer_labels.size(); ++j) {
      require_no_comma(table.analyzer_labels[j]);
      os << table.input_labels[i] << ',' << table.analyzer_labels[j] << ','
         << table.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
         << "\n";
    }
  }
  return os.str();
}

CountTable count_table_from_csv(const std::string& text) {
  CsvBody body = parse_csv_body(text, "counts");
  CountTable table;
  table.input_labels = body.input_labels;
  table.analyzer_labels = body.output_labels;
  table.counts = body.values.cast<std::int64_t>();
  // The seed comment is informative only; JSON carries full metadata.
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const std::string prefix = "# seed: ";
    if (line.rfind(prefix, 0) == 0) {
      table.seed = parse_seed(line.substr(prefix.size()));
    }
  }
  return table;
}

json to_json(const ConversionTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < table.output_labels.size(); ++j) {
      row.push_back(table.probabilities(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j)));
    }
    rows.push_back(row);
  }
  return json{{"schema", kSchemaVersion},
              {"kind", "conversion_table"},
              {"input_labels", table.input_labels},
              {"output_labels", table.output_labels},
              {"probabilities", rows}};
}

ConversionTable conversion_table_from_json(const json& j) {
  if (j.value("schema", "") != kSchemaVersion) {
    throw std::invalid_argument("conversion_table: unsupported schema");
  }
  ConversionTable table;
  table.input_labels = j.at("input_labels").get<std::vector<std::string>>();
  table.output_labels = j.at("output_labels").get<std::vector<std::string>>();
  table.probabilities.resize(table.input_labels.size(), table.output_labels.size());
  const json& rows = j.at("probabilities");
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    for (std::size_t k = 0; k < table.output_labels.size(); ++k) {
      table.probabilities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          rows.at(i).at(k).get<double>();
    }
  }
  table.validate();
  return table;
}

json to_json(const CountTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < table.analyzer_labels.size(); ++j) {
      row.push_back(table.counts(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(j)));
    }
    rows.push_back(row);
  }
  return json{{"schema", kSchemaVersion},
              {"kind", "count_table"},
              {"seed", seed_string(table.seed)},
              {"source", to_json(table.source)},
              {"input_labels", table.input_labels},
              {"analyzer_labels", table.analyzer_labels},
              {"counts", rows}};
}

CountTable count_table_from_json(const json& j) {
  if (j.value("schema", "") != kSchemaVersion) {
    throw std::invalid_argument("count_table: unsupported schema");
  }
  CountTable table;
  table.seed = parse_seed(j.at("seed").get<std::string>());
  table.source = source_spec_from_json(j.at("source"));
  table.input_labels = j.at("input_labels").get<std::vector<std::string>>();
  table.analyzer_labels = j.at("analyzer_labels").get<std::vector<std::string>>();
  table.counts.resize(table.input_labels.size(), table.analyzer_labels.size());
  const json& rows = j.at("counts");
  for (std::size_t i = 0; i < table.input_labels.size(); ++i) {
    for (std::size_t k = 0; k < table.analyzer_labels.size(); ++k) {
      table.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          rows.at(i).at(k).get<std::int64_t>();
    }
  }
  return table;
}

json to_json(const SourceSpec& source) {
  return json{{"pair_rate_per_mw", source.pair_rate_per_mw},
              {"pump_power_mw", source.pump_power_mw},
              {"accidental_rate_hz", source.accidental_rate_hz},
              {"coincidence_efficiency", source.coincidence_efficiency},
              {"integration_time_s", source.integration_time_s}};
}

SourceSpec source_spec_from_json(const json& j) {
  SourceSpec s;
  s.pair_rate_per_mw = j.value("pair_rate_per_mw", s.pair_rate_per_mw);
  s.pump_power_mw = j.value("pump_power_mw", s.pump_power_mw);
  s.accidental_rate_hz = j.value("accidental_rate_hz", s.accidental_rate_hz);
  s.coincidence_efficiency = j.value("coincidence_efficiency", s.coincidence_efficiency);
  s.integration_time_s = j.value("integration_time_s", s.integration_time_s);
  s.validate();
  return s;
}

json to_json(const NoiseModel& noise) {
  return json{{"coupling_efficiency", map_to_json(noise.coupling_efficiency)},
              {"preparation_fidelity", map_to_json(noise.preparation_fidelity)},
              {"waveplate_angle_sigma", noise.waveplate_angle_sigma},
              {"dp_angle_sigma", noise.dp_angle_sigma},
              {"interferometer_phase_sigma", noise.interferometer_phase_sigma},
              {"slm_projection_efficiency", noise.slm_projection_efficiency}};
}

NoiseModel noise_model_from_json(const json& j) {
  NoiseModel n;
  if (j.contains("coupling_efficiency")) {
    n.coupling_efficiency = map_from_json(j.at("coupling_efficiency"));
  }
  if (j.contains("preparation_fidelity")) {
    n.preparation_fidelity = map_from_json(j.at("preparation_fidelity"));
  }
  n.waveplate_angle_sigma = j.value("waveplate_angle_sigma", 0.0);
  n.dp_angle_sigma = j.value("dp_angle_sigma", 0.0);
  n.interferometer_phase_sigma = j.value("interferometer_phase_sigma", 0.0);
  n.slm_projection_efficiency = j.value("slm_projection_efficiency", 1.0);
  n.validate();
  return n;
}

json to_json(const ElementSpec& spec) {
  json j{{"kind", element_kind_name(spec.kind)}};
  switch (spec.kind) {
    case ElementKind::Spp:
      j["step"] = spec.spp_step;
      j["path"] = spec.path;
      break;
    case ElementKind::DovePrism:
    case ElementKind::Hwp:
    case ElementKind::Qwp:
      j["angle"] = spec.angle;
      j["path"] = spec.path;
      break;
    case ElementKind::Pbs:
      j["path_a"] = spec.path;
      j["path_b"] = spec.path_b;
      break;
    case ElementKind::PhaseShifter:
      j["phase"] = spec.phase;
      j["path"] = spec.path;
      break;
    default:
      j["path"] = spec.path;
      break;
  }
  return j;
}

ElementSpec element_spec_from_json(const json& j) {
  ElementSpec spec;
  spec.kind = element_kind_from_name(j.at("kind").get<std::string>());
  switch (spec.kind) {
    case ElementKind::Spp:
      spec.spp_step = j.at("step").get<int>();
      spec.path = j.at("path").get<int>();
      break;
    case ElementKind::DovePrism:
    case ElementKind::Hwp:
    case ElementKind::Qwp:
      spec.angle = j.at("angle").get<double>();
      spec.path = j.at("path").get<int>();
      break;
    case ElementKind::Pbs:
      spec.path = j.at("path_a").get<int>();
      spec.path_b = j.at("path_b").get<int>();
      break;
    case ElementKind::PhaseShifter:
      spec.phase = j.at("phase").get<double>();
      spec.path = j.at("path").get<int>();
      break;
    default:
      spec.path = j.value("path", 0);
      break;
  }
  spec.validate();
  return spec;
}

json to_json(const BasisSpec& basis) {
  return json{{"oam_min", basis.oam_min},
              {"oam_max", basis.oam_max},
              {"paths", basis.paths},
              {"polarization", basis.include_polarization}};
}

BasisSpec basis_spec_from_json(const json& j) {
  BasisSpec basis;
  basis.oam_min = j.at("oam_min").get<int>();
  basis.oam_max = j.at("oam_max").get<int>();
  basis.paths = j.at("paths").get<int>();
  basis.include_polarization = j.at("polarization").get<bool>();
  basis.validate();
  return basis;
}

json to_json(const Circuit& circuit) {
  json stages = json::array();
  for (const Stage& stage : circuit.stages) {
    if (stage.is_element()) {
      stages.push_back(to_json(stage.element()));
    } else {
      stages.push_back(json{{"circuit", to_json(stage.subcircuit())}});
    }
  }
  return json{{"name", circuit.name},
              {"basis", to_json(circuit.basis)},
              {"input_path", circuit.input_path},
              {"stages", stages}};
}

Circuit circuit_from_json(const json& j) {
  Circuit circuit;
  circuit.name = j.at("name").get<std::string>();
  circuit.basis = basis_spec_from_json(j.at("basis"));
  circuit.input_path = j.value("input_path", 0);
  for (const json& stage : j.at("stages")) {
    if (stage.contains("circuit")) {
      circuit.stages.emplace_back(circuit_from_json(stage.at("circuit")));
    } else {
      circuit.stages.emplace_back(element_spec_from_json(stage));
    }
  }
  return circuit;
}

void RunConfig::validate() const {
  static const std::vector<std::string> scenarios{"verify-gates", "table1", "bases",
                                                  "controlled", "custom-circuit"};
  if (std::find(scenarios.begin(), scenarios.end(), scenario) == scenarios.end()) {
    throw std::invalid_argument("config: unknown scenario '" + scenario + "'");
  }
  if (gate != "x" && gate != "x2" && gate != "xdag") {
    throw std::invalid_argument("config: unknown gate '" + gate + "'");
  }
  if (basis_index < 1 || basis_index > 7) {
    throw std::invalid_argument("config: basis index must be in 1..7");
  }
  if (control != "H" && control != "diagonal") {
    throw std::invalid_argument("config: control must be 'H' or 'diagonal'");
  }
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("config: format must be 'csv' or 'json'");
  }
  if (window_min > window_max) {
    throw std::invalid_argument("config: empty OAM window");
  }
  parse_seed(seed);
  source.validate();
  noise.validate();
}

json to_json(const RunConfig& config) {
  return json{{"scenario", config.scenario},
              {"gate", config.gate},
              {"basis_index", config.basis_index},
              {"control", config.control},
              {"seed", config.seed},
              {"format", config.format},
              {"out_dir", config.out_dir},
              {"source", to_json(config.source)},
              {"noise", to_json(config.noise)},
              {"window_min", config.window_min},
              {"window_max", config.window_max},
              {"sorter_dp_angle_deg", config.sorter_dp_angle_deg},
              {"circuit_file", config.circuit_file}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig config;
  config.scenario = j.value("scenario", config.scenario);
  config.gate = j.value("gate", config.gate);
  config.basis_index = j.value("basis_index", config.basis_index);
  config.control = j.value("control", config.control);
  config.seed = j.value("seed", config.seed);
  config.format = j.value("format", config.format);
  config.out_dir = j.value("out_dir", config.out_dir);
  if (j.contains("source")) config.source = source_spec_from_json(j.at("source"));
  if (j.contains("noise")) config.noise = noise_model_from_json(j.at("noise"));
  config.window_min = j.value("window_min", config.window_min);
  config.window_max = j.value("window_max", config.window_max);
  config.sorter_dp_angle_deg = j.value("sorter_dp_angle_deg", config.sorter_dp_angle_deg);
  config.circuit_file = j.value("circuit_file", config.circuit_file);
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

}  // namespace oamsim
