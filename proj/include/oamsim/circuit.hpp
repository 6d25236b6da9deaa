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

#ifndef OAMSIM_CIRCUIT_HPP
#define OAMSIM_CIRCUIT_HPP

#include <memory>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "oamsim/elements.hpp"
#include "oamsim/gates.hpp"
#include "oamsim/hilbert.hpp"

namespace oamsim {

struct Circuit;

/// One circuit stage: a single element or a nested composite device.
struct Stage {
  std::variant<ElementSpec, std::shared_ptr<const Circuit>> value;

  Stage(ElementSpec spec) : value(std::move(spec)) {}        // NOLINT(runtime/explicit)
  Stage(Circuit circuit);                                    // NOLINT(runtime/explicit)

  bool is_element() const { return std::holds_alternative<ElementSpec>(value); }
  const ElementSpec& element() const { return std::get<ElementSpec>(value); }
  const Circuit& subcircuit() const;
};

/// Ordered composition of parameterized elements with port wiring. The basis
/// of the outermost circuit governs compilation; nested circuits contribute
/// their stages only.
struct Circuit {
  std::string name;
  BasisSpec basis;
  std::vector<Stage> stages;
  int input_path = 0;
};

/// Depth-first flattened element list in application order.
std::vector<ElementSpec> flatten(const Circuit& circuit);

/// Compose all stages in order. Leakage of a logical input mode out of the
/// OAM window raises LeakageError naming the responsible stage; it is never
/// silently dropped.
OpticalOperator compile(const Circuit& circuit);

/// Sagnac-type OAM parity sorter. Routes odd OAM on the input port to
/// `odd_port` unflipped and even OAM to `even_port` with the sign of OAM
/// flipped by the extra reflection. Internal wave-plate angles per D11.
Circuit parity_sorter(const BasisSpec& basis, int odd_port = 0, int even_port = 1,
                      double dove_angle = std::numbers::pi / 4);

/// Structural reverse of parity_sorter; combiner(sorter(psi)) == psi exactly.
Circuit parity_combiner(const BasisSpec& basis, int odd_port = 0, int even_port = 1,
                        double dove_angle = std::numbers::pi / 4);

/// Cyclic gates on the logical qudit (D12 constructions): SPP shifts combined
/// with the even-sign-flip stage built from sorter + arm ops + combiner.
Circuit x_gate_circuit(const BasisSpec& basis = BasisSpec::window(2, true));
Circuit x2_gate_circuit(const BasisSpec& basis = BasisSpec::window(2, true));
Circuit xdag_gate_circuit(const BasisSpec& basis = BasisSpec::window(2, true));

/// Mode-dependent phase gate from a Dove prism pair at relative angle 45deg.
Circuit z_gate_circuit(const BasisSpec& basis = BasisSpec::window(2, true));

/// Polarization-controlled gate: PBS1 routes H through `inner` (ports 0/1)
/// while V idles on `idle_port`; PBS2 recombines. The inner circuit must act
/// on OAM only when fed H-polarized light on its input port.
Circuit controlled_circuit(const Circuit& inner,
                           const BasisSpec& basis = BasisSpec::window(3, true),
                           int idle_port = 2);

/// controlled_circuit around the X^n construction, n in {1, 2, -1}.
Circuit controlled_x_power_circuit(int n,
                                   const BasisSpec& basis = BasisSpec::window(3, true));

}  // namespace oamsim

#endif  // OAMSIM_CIRCUIT_HPP
