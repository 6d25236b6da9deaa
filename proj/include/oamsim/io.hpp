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

#ifndef OAMSIM_IO_HPP
#define OAMSIM_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "oamsim/circuit.hpp"
#include "oamsim/gates.hpp"
#include "oamsim/photonsim.hpp"

namespace oamsim {

inline constexpr const char* kSchemaVersion = "oamsim/1";

/// Stable decimal rendering with 6 significant digits.
std::string format_sig6(double value);

/// Seeds are accepted as decimal or 0x-prefixed hex strings.
std::uint64_t parse_seed(const std::string& text);
std::string seed_string(std::uint64_t seed);

// CSV: a `# schema:` comment line, a header, then one row per cell.
std::string to_csv(const ConversionTable& table);
ConversionTable conversion_table_from_csv(const std::string& text);
std::string to_csv(const CountTable& table);
CountTable count_table_from_csv(const std::string& text);

nlohmann::json to_json(const ConversionTable& table);
ConversionTable conversion_table_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CountTable& table);
CountTable count_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SourceSpec& source);
SourceSpec source_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NoiseModel& noise);
NoiseModel noise_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ElementSpec& spec);
ElementSpec element_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BasisSpec& basis);
BasisSpec basis_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

/// Scenario-runner configuration (config file plus flag overrides, D21).
struct RunConfig {
  std::string scenario = "verify-gates";  // verify-gates|table1|bases|controlled|custom-circuit
  std::string gate = "x";                 // x|x2|xdag
  int basis_index = 2;
  std::string control = "H";              // H|diagonal
  std::string seed = "1";
  std::string format = "csv";             // csv|json
  std::string out_dir = "out";
  SourceSpec source;
  NoiseModel noise;
  int window_min = -6;
  int window_max = 5;
  double sorter_dp_angle_deg = 45.0;
  std::string circuit_file;  // custom-circuit scenario

  void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace oamsim

#endif  // OAMSIM_IO_HPP
