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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oamsim/circuit.hpp"
#include "oamsim/gates.hpp"
#include "oamsim/io.hpp"
#include "oamsim/photonsim.hpp"

namespace py = pybind11;
using namespace oamsim;

namespace {

py::dict run_to_dict(const ScenarioRun& run) {
  py::dict d;
  d["name"] = run.name;
  d["input_labels"] = run.counts.input_labels;
  d["output_labels"] = run.counts.analyzer_labels;
  d["counts"] = run.counts.counts;
  d["probabilities"] = run.measured.probabilities;
  d["ideal"] = run.ideal.probabilities;
  d["expected_map"] = run.expected_map;
  d["seed"] = run.counts.seed;
  return d;
}

Circuit gate_by_name(const std::string& name, const BasisSpec& basis) {
  if (name == "x") return x_gate_circuit(basis);
  if (name == "x2") return x2_gate_circuit(basis);
  if (name == "xdag") return xdag_gate_circuit(basis);
  if (name == "z") return z_gate_circuit(basis);
  throw std::invalid_argument("unknown gate '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_oamsim, m) {
  m.doc() = "Simulator for OAM-polarization photonic qudit gates";
  m.attr("__version__") = OAMSIM_VERSION;
  m.attr("LOGICAL_DIM") = kLogicalDim;

  py::register_exception<LeakageError>(m, "LeakageError");

  py::class_<BasisSpec>(m, "BasisSpec")
      .def(py::init([](int oam_min, int oam_max, int paths, bool polarization) {
             return BasisSpec::window(paths, polarization, oam_min, oam_max);
           }),
           py::arg("oam_min") = -6, py::arg("oam_max") = 5, py::arg("paths") = 2,
           py::arg("polarization") = true)
      .def_static("logical", &BasisSpec::logical)
      .def_readonly("oam_min", &BasisSpec::oam_min)
      .def_readonly("oam_max", &BasisSpec::oam_max)
      .def_readonly("paths", &BasisSpec::paths)
      .def_readonly("polarization", &BasisSpec::include_polarization)
      .def("dim", &BasisSpec::dim)
      .def("labels", [](const BasisSpec& b) {
        std::vector<std::string> out;
        for (int i = 0; i < b.dim(); ++i) out.push_back(b.label_string(i));
        return out;
      })
      .def("logical_indices",
           [](const BasisSpec& b, int path) {
             return b.logical_indices(Polarization::H, path);
           },
           py::arg("path") = 0);

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("name", &Circuit::name)
      .def_property_readonly("basis", [](const Circuit& c) { return c.basis; })
      .def("compile", [](const Circuit& c) { return compile(c).matrix; })
      .def("stage_descriptions",
           [](const Circuit& c) {
             std::vector<std::string> out;
             for (const ElementSpec& spec : flatten(c)) out.push_back(spec.describe());
             return out;
           })
      .def("to_json", [](const Circuit& c) { return to_json(c).dump(2); });

  m.def("circuit_from_json",
        [](const std::string& text) { return circuit_from_json(nlohmann::json::parse(text)); });

  m.def("parity_sorter_circuit",
        [](const BasisSpec& basis) { return parity_sorter(basis); },
        py::arg("basis") = BasisSpec::window(2, true));
  m.def("parity_combiner_circuit",
        [](const BasisSpec& basis) { return parity_combiner(basis); },
        py::arg("basis") = BasisSpec::window(2, true));
  m.def("gate_circuit", &gate_by_name, py::arg("name"),
        py::arg("basis") = BasisSpec::window(2, true),
        "Build the x, x2, xdag or z construction");
  m.def("controlled_x_power_circuit",
        [](int n) { return controlled_x_power_circuit(n); }, py::arg("n"));

  m.def("pauli_x", [](int d) { return pauli_x(d).matrix; }, py::arg("d") = 4);
  m.def("pauli_z", [](int d) { return pauli_z(d).matrix; }, py::arg("d") = 4);
  m.def("x_power", [](int d, int n) { return x_power(d, n).matrix; }, py::arg("d"),
        py::arg("n"));
  m.def("weyl", [](int d, int a, int b) { return weyl(d, a, b).matrix; }, py::arg("d"),
        py::arg("a"), py::arg("b"));
  m.def("controlled_target",
        [](const Matrix& u) {
          GateTarget t{"U", static_cast<int>(u.rows()), u};
          return controlled_target(t).matrix;
        },
        py::arg("u"));

  m.def("measurement_basis",
        [](int n) {
          std::vector<std::pair<std::string, Vector>> out;
          for (const LabeledState& s : measurement_basis(n)) {
            out.emplace_back(s.label, s.state.amplitudes);
          }
          return out;
        },
        py::arg("n"), "The four states of measurement basis n (1..7), d=4 amplitudes");

  m.def("fidelity_up_to_global_phase",
        [](const Matrix& a, const Matrix& b, std::vector<int> columns) {
          if (a.rows() != b.rows() || a.cols() != b.cols()) {
            throw std::invalid_argument("matrix shapes differ");
          }
          if (columns.empty()) {
            columns.resize(a.cols());
            for (int i = 0; i < a.cols(); ++i) columns[i] = i;
          }
          Complex trace = 0.0;
          for (int j : columns) trace += a.col(j).dot(b.col(j));
          const double d = static_cast<double>(columns.size());
          return std::norm(trace) / (d * d);
        },
        py::arg("a"), py::arg("b"), py::arg("columns") = std::vector<int>{});

  py::class_<SourceSpec>(m, "SourceSpec")
      .def(py::init<>())
      .def_readwrite("pair_rate_per_mw", &SourceSpec::pair_rate_per_mw)
      .def_readwrite("pump_power_mw", &SourceSpec::pump_power_mw)
      .def_readwrite("accidental_rate_hz", &SourceSpec::accidental_rate_hz)
      .def_readwrite("coincidence_efficiency", &SourceSpec::coincidence_efficiency)
      .def_readwrite("integration_time_s", &SourceSpec::integration_time_s)
      .def("signal_rate_hz", &SourceSpec::signal_rate_hz);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("coupling_efficiency", &NoiseModel::coupling_efficiency)
      .def_readwrite("preparation_fidelity", &NoiseModel::preparation_fidelity)
      .def_readwrite("waveplate_angle_sigma", &NoiseModel::waveplate_angle_sigma)
      .def_readwrite("dp_angle_sigma", &NoiseModel::dp_angle_sigma)
      .def_readwrite("interferometer_phase_sigma",
                     &NoiseModel::interferometer_phase_sigma)
      .def_readwrite("slm_projection_efficiency", &NoiseModel::slm_projection_efficiency)
      .def("is_ideal", &NoiseModel::is_ideal);

  m.def("run_table1",
        [](const NoiseModel& noise, std::uint64_t seed, const SourceSpec& source) {
          py::list out;
          for (const ScenarioRun& run : run_table1_scenario(noise, seed, source)) {
            out.append(run_to_dict(run));
          }
          return out;
        },
        py::arg("noise") = NoiseModel{}, py::arg("seed") = 1,
        py::arg("source") = SourceSpec{});

  m.def("run_bases",
        [](const std::string& gate, int basis_index, const NoiseModel& noise,
           std::uint64_t seed, const SourceSpec& source) {
          const Circuit circuit = gate_by_name(gate, BasisSpec::window(2, true));
          return run_to_dict(run_bases_scenario(circuit, basis_index, noise, seed, source));
        },
        py::arg("gate") = "x", py::arg("basis_index") = 2,
        py::arg("noise") = NoiseModel{}, py::arg("seed") = 1,
        py::arg("source") = SourceSpec{});

  m.def("run_controlled",
        [](int n, const std::string& control, const NoiseModel& noise,
           std::uint64_t seed, const SourceSpec& source) {
          const ControlState state =
              control == "H" ? ControlState::H : ControlState::Diagonal;
          return run_to_dict(run_controlled_scenario(n, state, noise, seed, source));
        },
        py::arg("n") = 1, py::arg("control") = "H", py::arg("noise") = NoiseModel{},
        py::arg("seed") = 1, py::arg("source") = SourceSpec{});

  m.def("expected_gate_averages", &expected_gate_averages, py::arg("noise"));
  m.def("calibrate_noise", &calibrate_noise, py::arg("target_averages"));
  m.def("calibrate_uniform_coupling", &calibrate_uniform_coupling, py::arg("target"),
        py::arg("source") = SourceSpec{});

  m.def("conversion_from_counts",
        [](const Eigen::MatrixXd& counts) {
          std::vector<std::string> in_labels, out_labels;
          for (Eigen::Index i = 0; i < counts.rows(); ++i) {
            in_labels.push_back("in" + std::to_string(i));
          }
          for (Eigen::Index j = 0; j < counts.cols(); ++j) {
            out_labels.push_back("out" + std::to_string(j));
          }
          return conversion_from_counts(counts, in_labels, out_labels).probabilities;
        },
        py::arg("counts"), "Row-normalize a counts matrix: P(i,j) = N_ij / sum_k N_ik");

  m.def("summarize_efficiency",
        [](const Eigen::MatrixXd& probabilities, const std::vector<int>& expected_map) {
          std::vector<std::string> in_labels, out_labels;
          for (Eigen::Index i = 0; i < probabilities.rows(); ++i) {
            in_labels.push_back("in" + std::to_string(i));
          }
          for (Eigen::Index j = 0; j < probabilities.cols(); ++j) {
            out_labels.push_back("out" + std::to_string(j));
          }
          ConversionTable table{in_labels, out_labels, probabilities};
          return summarize_efficiency(table, expected_map);
        },
        py::arg("probabilities"), py::arg("expected_map"),
        "Mean of P(i, expected(i)) over inputs");
}
