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

#include "oamsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oamsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

Stage::Stage(Circuit circuit)
    : value(std::make_shared<const Circuit>(std::move(circuit))) {}

const Circuit& Stage::subcircuit() const {
  return *std::get<std::shared_ptr<const Circuit>>(value);
}

namespace {

void flatten_into(const Circuit& circuit, std::vector<ElementSpec>& out) {
  for (const Stage& stage : circuit.stages) {
    if (stage.is_element()) {
      out.push_back(stage.element());
    } else {
      flatten_into(stage.subcircuit(), out);
    }
  }
}

}  // namespace

std::vector<ElementSpec> flatten(const Circuit& circuit) {
  std::vector<ElementSpec> out;
  flatten_into(circuit, out);
  return out;
}

OpticalOperator compile(const Circuit& circuit) {
  circuit.basis.validate();
  OpticalOperator out = OpticalOperator::identity(circuit.basis);
  std::vector<int> logical_columns;
  for (int pol = 0; pol < circuit.basis.pol_count(); ++pol) {
    for (int oam = kLogicalOamMin; oam <= kLogicalOamMax; ++oam) {
      logical_columns.push_back(circuit.basis.index_of(
          ModeLabel{pol == 1 ? Polarization::V : Polarization::H, oam,
                    circuit.input_path}));
    }
  }
  for (const ElementSpec& spec : flatten(circuit)) {
    const OpticalOperator op = element_operator(circuit.basis, spec);
    // Compose incrementally so a leaking logical column can be pinned to the
    // responsible stage.
    OpticalOperator next = compose({out, op});
    for (int col : logical_columns) {
      if (std::binary_search(next.leak_sources.begin(), next.leak_sources.end(), col)) {
        std::ostringstream os;
        os << "compile('" << circuit.name << "'): stage " << spec.describe()
           << " pushes logical input " << circuit.basis.label_string(col)
           << " outside the OAM window [" << circuit.basis.oam_min << ", "
           << circuit.basis.oam_max << "]";
        throw LeakageError(os.str());
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

void require_sorter_basis(const BasisSpec& basis, int a, int b) {
  if (!basis.include_polarization) {
    throw std::invalid_argument("parity sorter needs a polarization factor");
  }
  if (basis.paths < 2 || a == b || a >= basis.paths || b >= basis.paths || a < 0 ||
      b < 0) {
    throw std::invalid_argument("parity sorter needs two distinct ports in the basis");
  }
}

std::vector<Stage> sorter_stages(int odd_port, int even_port, double dove_angle) {
  // Polarization Sagnac: the input wave plate splits H into both loop
  // directions, the Dove prism pair models the two traversal senses of one
  // prism, the output wave plate turns the parity-dependent relative phase
  // into a polarization label for the routing PBS. The closing mirror on the
  // odd port undoes the loop's OAM flip so only even modes exit flipped.
  return {
      ElementSpec::hwp(kPi / 8, odd_port),
      ElementSpec::pbs(odd_port, even_port),
      ElementSpec::dove_prism(dove_angle, odd_port),
      ElementSpec::dove_prism(-dove_angle, even_port),
      ElementSpec::pbs(odd_port, even_port),
      ElementSpec::hwp(-kPi / 8, odd_port),
      ElementSpec::pbs(odd_port, even_port),
      ElementSpec::mirror(odd_port),
  };
}

}  // namespace

Circuit parity_sorter(const BasisSpec& basis, int odd_port, int even_port,
                      double dove_angle) {
  require_sorter_basis(basis, odd_port, even_port);
  return Circuit{"parity_sorter", basis, sorter_stages(odd_port, even_port, dove_angle)};
}

Circuit parity_combiner(const BasisSpec& basis, int odd_port, int even_port,
                        double dove_angle) {
  require_sorter_basis(basis, odd_port, even_port);
  std::vector<Stage> stages = sorter_stages(odd_port, even_port, dove_angle);
  std::reverse(stages.begin(), stages.end());  // every stage is an involution
  return Circuit{"parity_combiner", basis, std::move(stages)};
}

Circuit x_gate_circuit(const BasisSpec& basis) {
  Circuit c{"x_gate", basis, {}};
  c.stages.emplace_back(ElementSpec::spp(+1, 0));
  c.stages.emplace_back(parity_sorter(basis));
  c.stages.emplace_back(ElementSpec::mirror(1));  // extra reflection, even arm
  c.stages.emplace_back(parity_combiner(basis));
  return c;
}

Circuit x2_gate_circuit(const BasisSpec& basis) {
  Circuit c{"x2_gate", basis, {}};
  c.stages.emplace_back(parity_sorter(basis));
  c.stages.emplace_back(ElementSpec::mirror(0));
  c.stages.emplace_back(ElementSpec::mirror(1));
  c.stages.emplace_back(ElementSpec::spp(+2, 1));
  c.stages.emplace_back(parity_combiner(basis));
  // The interferometer pair leaves a uniform pi on the logical block; trim it
  // so the hybrid controlled construction interferes correctly.
  c.stages.emplace_back(ElementSpec::phase_shifter(kPi, 0));
  return c;
}

Circuit xdag_gate_circuit(const BasisSpec& basis) {
  Circuit c{"xdag_gate", basis, {}};
  c.stages.emplace_back(parity_sorter(basis));
  c.stages.emplace_back(ElementSpec::mirror(1));
  c.stages.emplace_back(parity_combiner(basis));
  c.stages.emplace_back(ElementSpec::spp(-1, 0));
  return c;
}

Circuit z_gate_circuit(const BasisSpec& basis) {
  Circuit c{"z_gate", basis, {}};
  c.stages.emplace_back(ElementSpec::dove_prism(kPi / 4, 0));
  c.stages.emplace_back(ElementSpec::dove_prism(0.0, 0));
  c.stages.emplace_back(ElementSpec::phase_shifter(kPi, 0));
  return c;
}

Circuit controlled_circuit(const Circuit& inner, const BasisSpec& basis,
                           int idle_port) {
  if (basis.paths < 3 || !basis.include_polarization) {
    throw std::invalid_argument(
        "controlled_circuit: basis needs polarization and at least 3 ports");
  }
  if (idle_port == 0 || idle_port == 1 || idle_port >= basis.paths) {
    throw std::invalid_argument(
        "controlled_circuit: idle port must be distinct from the inner ports 0/1");
  }
  for (const ElementSpec& spec : flatten(inner)) {
    const int port_b = (spec.kind == ElementKind::Pbs) ? spec.path_b : spec.path;
    if (spec.path == idle_port || port_b == idle_port) {
      throw std::invalid_argument("controlled_circuit: inner circuit touches port " +
                                  std::to_string(idle_port));
    }
  }
  // The inner device must act on OAM only: H-polarized logical input on its
  // port must come back H-polarized on the same port.
  Circuit probe = inner;
  probe.basis = basis;
  const OpticalOperator inner_op = compile(probe);
  const std::vector<int> h_logical = basis.logical_indices(Polarization::H, 0);
  for (int col : h_logical) {
    double inside = 0.0;
    for (int row : h_logical) {
      inside += std::norm(inner_op.matrix(row, col));
    }
    if (std::abs(inside - 1.0) > 1e-10) {
      throw std::invalid_argument(
          "controlled_circuit: inner circuit '" + inner.name +
          "' touches polarization or leaves the input port for H-polarized light");
    }
  }

  Circuit c{"controlled_" + inner.name, basis, {}};
  c.stages.emplace_back(ElementSpec::pbs(0, idle_port));
  Circuit nested = inner;
  nested.basis = basis;
  c.stages.emplace_back(std::move(nested));
  c.stages.emplace_back(ElementSpec::pbs(0, idle_port));
  return c;
}

Circuit controlled_x_power_circuit(int n, const BasisSpec& basis) {
  BasisSpec inner_basis = basis;
  Circuit inner;
  switch (n) {
    case 1: inner = x_gate_circuit(inner_basis); break;
    case 2: inner = x2_gate_circuit(inner_basis); break;
    case -1: inner = xdag_gate_circuit(inner_basis); break;
    default:
      throw std::invalid_argument("controlled_x_power_circuit: n must be 1, 2 or -1");
  }
  return controlled_circuit(inner, basis);
}

}  // namespace oamsim
