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

#ifndef OAMSIM_GATES_HPP
#define OAMSIM_GATES_HPP

#include <string>
#include <vector>

#include "oamsim/hilbert.hpp"

namespace oamsim {

/// Ideal gate matrix in the logical qudit representation.
struct GateTarget {
  std::string name;
  int dim = 0;
  Matrix matrix;
};

/// d-th root of unity omega = e^{i 2 pi / d}.
Complex root_of_unity(int d);

/// Cyclic shift X: |k> -> |k+1 mod d>.
GateTarget pauli_x(int d);
/// Mode-dependent phase Z = diag(1, omega, ..., omega^{d-1}).
GateTarget pauli_z(int d);
/// X^n with n any integer (negative n gives adjoint powers).
GateTarget x_power(int d, int n);
/// Weyl operator X^a Z^b.
GateTarget weyl(int d, int a, int b);

/// Hybrid polarization-control gate on 2d dimensions. With H ordered before V
/// the H block carries U and the V block the identity (D14).
GateTarget controlled_target(const GateTarget& u);

/// Embed a logical d=4 target into a full mode basis at the given
/// polarization/path; identity elsewhere.
OpticalOperator embed_logical_gate(const GateTarget& target, const BasisSpec& basis,
                                   Polarization pol = Polarization::H, int path = 0);

enum class EigenKind { X, Y };

/// (|l1> +- |l2>)/sqrt(2) for X, (|l1> +- i |l2>)/sqrt(2) for Y.
PureState eigenbasis_state(EigenKind kind, int sign, int l1, int l2,
                           const BasisSpec& basis = BasisSpec::logical(),
                           Polarization pol = Polarization::H, int path = 0);

std::string eigenbasis_label(EigenKind kind, int sign, int l1, int l2);

struct LabeledState {
  std::string label;
  PureState state;
};

/// The seven measurement bases: B1 computational, B2..B7 the sigma_x/sigma_y
/// eigenstate bases over the OAM pairs.
std::vector<LabeledState> measurement_basis(int n,
                                            const BasisSpec& basis = BasisSpec::logical(),
                                            Polarization pol = Polarization::H,
                                            int path = 0);

/// Row-normalized conversion probabilities P(i, j).
struct ConversionTable {
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  Eigen::MatrixXd probabilities;  // rows sum to 1

  void validate(double tol = kFitTol) const;
};

/// P(i,j) = |<a_j| U |b_i>|^2, renormalized per row over the listed analyzers.
ConversionTable conversion_from_operator(const OpticalOperator& op,
                                         const std::vector<LabeledState>& inputs,
                                         const std::vector<LabeledState>& analyzers);

/// The counts ratio P(i,j) = N_ij / sum_k N_ik. Throws on an all-zero row.
ConversionTable conversion_from_counts(const Eigen::MatrixXd& counts,
                                       const std::vector<std::string>& input_labels,
                                       const std::vector<std::string>& output_labels);

/// Mean of P(i, expected(i)) over inputs.
double summarize_efficiency(const ConversionTable& table,
                            const std::vector<int>& expected_map);

}  // namespace oamsim

#endif  // OAMSIM_GATES_HPP
