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

#ifndef OAMSIM_ELEMENTS_HPP
#define OAMSIM_ELEMENTS_HPP

#include <string>

#include "oamsim/hilbert.hpp"

namespace oamsim {

enum class ElementKind {
  Spp,
  DovePrism,
  Mirror,
  Hwp,
  Qwp,
  Pbs,
  PhaseShifter,
  SlmPrepare,
  SlmProject,
};

std::string element_kind_name(ElementKind kind);
ElementKind element_kind_from_name(const std::string& name);

/// Reduce an angle to the canonical range [0, 2 pi).
double wrap_angle(double angle);

/// Parameterized description of one physical element, as wired into circuits.
struct ElementSpec {
  ElementKind kind = ElementKind::Mirror;
  int spp_step = 0;      // SPP: integer OAM step, nonzero
  double angle = 0.0;    // HWP/QWP fast axis or Dove prism angle, radians
  double phase = 0.0;    // PhaseShifter, radians
  int path = 0;          // target port (PBS: first port)
  int path_b = 1;        // PBS only: second port

  static ElementSpec spp(int step, int path);
  static ElementSpec dove_prism(double angle, int path);
  static ElementSpec mirror(int path);
  static ElementSpec hwp(double angle, int path);
  static ElementSpec qwp(double angle, int path);
  static ElementSpec pbs(int path_a, int path_b);
  static ElementSpec phase_shifter(double phase, int path);

  bool operator==(const ElementSpec&) const = default;

  /// Short human-readable tag, e.g. "SPP(+2)@1" or "PBS(0,2)".
  std::string describe() const;
  void validate() const;
};

/// Operator factories. Every factory returns a lossless operator; amplitude
/// whose image would leave the OAM window is recorded as a leak source.

/// Spiral phase plate: |l> -> |l + k> on the target path. Construction fails
/// when a logical mode (-2..1) would be shifted outside the window.
OpticalOperator spp(const BasisSpec& basis, int step, int path);

/// Dove prism at angle alpha (D5): |l> -> e^{i 2 l alpha} |-l>; polarization
/// passes through untouched (D6).
OpticalOperator dove_prism(const BasisSpec& basis, double angle, int path);

/// Plain mirror: |l> -> |-l>.
OpticalOperator mirror(const BasisSpec& basis, int path);

/// Half-wave plate at fast-axis angle theta (D7 convention).
OpticalOperator hwp(const BasisSpec& basis, double angle, int path);

/// Quarter-wave plate at fast-axis angle theta.
OpticalOperator qwp(const BasisSpec& basis, double angle, int path);

/// Polarizing beam splitter between two ports: H transmits, V reflects.
/// Reflection itself imparts no OAM flip (D8); flips are explicit mirrors.
OpticalOperator pbs(const BasisSpec& basis, int path_a, int path_b);

/// Uniform phase e^{i phi} on every mode of the target path.
OpticalOperator phase_shifter(const BasisSpec& basis, double phase, int path);

/// Build the operator described by an ElementSpec. SlmPrepare/SlmProject are
/// preparation/detection bookends, not operators, and are rejected here.
OpticalOperator element_operator(const BasisSpec& basis, const ElementSpec& spec);

/// Idealized SLM1 (D9): exact synthesis of the requested state. Validates that
/// the target is normalized and lives on the OAM factor of a single path with
/// fixed polarization.
PureState slm_prepare(const PureState& target);

/// Idealized SLM2 + single-mode fiber (D9): exact projection analyzer.
PureState slm_project(const PureState& analyzer);

}  // namespace oamsim

#endif  // OAMSIM_ELEMENTS_HPP
