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

#include "oamsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace oamsim {

namespace {

int positive_mod(int a, int m) { return ((a % m) + m) % m; }

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("gate targets need dimension >= 2");
}

}  // namespace

Complex root_of_unity(int d) {
  require_dim(d);
  const double arg = 2.0 * std::numbers::pi / d;
  return Complex(std::cos(arg), std::sin(arg));
}

GateTarget pauli_x(int d) {
  require_dim(d);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    m(positive_mod(k + 1, d), k) = 1.0;
  }
  return GateTarget{"X", d, std::move(m)};
}

GateTarget pauli_z(int d) {
  require_dim(d);
  Matrix m = Matrix::Zero(d, d);
  const Complex omega = root_of_unity(d);
  Complex w = 1.0;
  for (int k = 0; k < d; ++k) {
    m(k, k) = w;
    w *= omega;
  }
  return GateTarget{"Z", d, std::move(m)};
}

GateTarget x_power(int d, int n) {
  require_dim(d);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    m(positive_mod(k + n, d), k) = 1.0;
  }
  std::ostringstream name;
  if (n == 1) {
    name << "X";
  } else if (n == -1) {
    name << "Xdag";
  } else {
    name << "X^" << n;
  }
  return GateTarget{name.str(), d, std::move(m)};
}

GateTarget weyl(int d, int a, int b) {
  require_dim(d);
  Matrix m = x_power(d, a).matrix;
  Matrix z = pauli_z(d).matrix;
  Matrix zb = Matrix::Identity(d, d);
  for (int i = 0; i < positive_mod(b, d); ++i) zb = z * zb;
  std::ostringstream name;
  name << "X^" << a << "Z^" << b;
  return GateTarget{name.str(), d, m * zb};
}

GateTarget controlled_target(const GateTarget& u) {
  const int d = u.dim;
  if (u.matrix.rows() != d || u.matrix.cols() != d) {
    throw std::invalid_argument("controlled_target: malformed target matrix");
  }
  if (((u.matrix.adjoint() * u.matrix) - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() >
      kExactTol) {
    throw std::invalid_argument("controlled_target: target is not unitary");
  }
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = u.matrix;                      // H block acts
  m.bottomRightCorner(d, d) = Matrix::Identity(d, d);    // V block idles
  return GateTarget{"C" + u.name, 2 * d, std::move(m)};
}

OpticalOperator embed_logical_gate(const GateTarget& target, const BasisSpec& basis,
                                   Polarization pol, int path) {
  if (target.dim != kLogicalDim) {
    throw std::invalid_argument("embed_logical_gate: expected a d=4 target");
  }
  OpticalOperator op = OpticalOperator::identity(basis);
  const std::vector<int> idx = basis.logical_indices(pol, path);
  for (int c = 0; c < kLogicalDim; ++c) {
    for (int r = 0; r < kLogicalDim; ++r) {
      op.matrix(idx[r], idx[c]) = target.matrix(r, c);
    }
  }
  return op;
}

PureState eigenbasis_state(EigenKind kind, int sign, int l1, int l2,
                           const BasisSpec& basis, Polarization pol, int path) {
  if (l1 == l2) {
    throw std::invalid_argument("eigenbasis_state: OAM values must differ");
  }
  for (int l : {l1, l2}) {
    if (l < kLogicalOamMin || l > kLogicalOamMax) {
      throw std::invalid_argument("eigenbasis_state: OAM " + std::to_string(l) +
                                  " outside the logical window [-2, 1]");
    }
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("eigenbasis_state: sign must be +1 or -1");
  }
  PureState state{basis, Vector::Zero(basis.dim())};
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Complex second =
      (kind == EigenKind::X) ? Complex(sign * inv_sqrt2, 0.0)
                             : Complex(0.0, sign * inv_sqrt2);
  state.amplitudes(basis.index_of(ModeLabel{pol, l1, path})) = inv_sqrt2;
  state.amplitudes(basis.index_of(ModeLabel{pol, l2, path})) = second;
  return state;
}

std::string eigenbasis_label(EigenKind kind, int sign, int l1, int l2) {
  std::ostringstream os;
  os << (kind == EigenKind::X ? 'x' : 'y') << (sign > 0 ? '+' : '-') << '(' << l1 << ';'
     << l2 << ')';
  return os.str();
}

std::vector<LabeledState> measurement_basis(int n, const BasisSpec& basis,
                                            Polarization pol, int path) {
  std::vector<LabeledState> out;
  if (n == 1) {
    for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
      out.push_back({"l=" + std::to_string(l),
                     basis_state(basis, ModeLabel{pol, l, path})});
    }
    return out;
  }
  struct Pairing {
    EigenKind kind;
    int a1, a2, b1, b2;
  };
  Pairing pairing;
  switch (n) {
    case 2: pairing = {EigenKind::X, -2, -1, 0, 1}; break;
    case 3: pairing = {EigenKind::Y, -2, -1, 0, 1}; break;
    case 4: pairing = {EigenKind::X, -2, 0, -1, 1}; break;
    case 5: pairing = {EigenKind::Y, -2, 0, -1, 1}; break;
    case 6: pairing = {EigenKind::X, -2, 1, -1, 0}; break;
    case 7: pairing = {EigenKind::Y, -2, 1, -1, 0}; break;
    default:
      throw std::invalid_argument("measurement_basis: n must be in 1..7");
  }
  for (auto [l1, l2] : {std::pair{pairing.a1, pairing.a2}, {pairing.b1, pairing.b2}}) {
    for (int sign : {+1, -1}) {
      out.push_back({eigenbasis_label(pairing.kind, sign, l1, l2),
                     eigenbasis_state(pairing.kind, sign, l1, l2, basis, pol, path)});
    }
  }
  return out;
}

void ConversionTable::validate(double tol) const {
  if (probabilities.rows() != static_cast<Eigen::Index>(input_labels.size()) ||
      probabilities.cols() != static_cast<Eigen::Index>(output_labels.size())) {
    throw std::invalid_argument("ConversionTable: label/matrix shape mismatch");
  }
  for (Eigen::Index i = 0; i < probabilities.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < probabilities.cols(); ++j) {
      const double p = probabilities(i, j);
      if (p < -tol || p > 1.0 + tol) {
        throw std::invalid_argument("ConversionTable: entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw std::invalid_argument("ConversionTable: row " + std::to_string(i) +
                                  " sums to " + std::to_string(sum));
    }
  }
}

ConversionTable conversion_from_operator(const OpticalOperator& op,
                                         const std::vector<LabeledState>& inputs,
                                         const std::vector<LabeledState>& analyzers) {
  if (inputs.empty() || analyzers.empty()) {
    throw std::invalid_argument("conversion_from_operator: empty input/analyzer list");
  }
  ConversionTable table;
  table.probabilities.resize(inputs.size(), analyzers.size());
  for (const auto& a : analyzers) table.output_labels.push_back(a.label);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    table.input_labels.push_back(inputs[i].label);
    const PureState out = apply(op, inputs[i].state);
    double row_sum = 0.0;
    for (std::size_t j = 0; j < analyzers.size(); ++j) {
      const double p = project(out, analyzers[j].state);
      table.probabilities(i, j) = p;
      row_sum += p;
    }
    if (row_sum <= 0.0) {
      throw std::invalid_argument(
          "conversion_from_operator: input '" + inputs[i].label +
          "' has no overlap with any listed analyzer");
    }
    table.probabilities.row(i) /= row_sum;
  }
  return table;
}

ConversionTable conversion_from_counts(const Eigen::MatrixXd& counts,
                                       const std::vector<std::string>& input_labels,
                                       const std::vector<std::string>& output_labels) {
  if (counts.rows() != static_cast<Eigen::Index>(input_labels.size()) ||
      counts.cols() != static_cast<Eigen::Index>(output_labels.size())) {
    throw std::invalid_argument("conversion_from_counts: label/matrix shape mismatch");
  }
  ConversionTable table{input_labels, output_labels,
                        Eigen::MatrixXd::Zero(counts.rows(), counts.cols())};
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      if (counts(i, j) < 0.0) {
        throw std::invalid_argument("conversion_from_counts: negative count");
      }
      row_sum += counts(i, j);
    }
    if (row_sum <= 0.0) {
      throw std::invalid_argument("conversion_from_counts: all-zero count row for '" +
                                  input_labels[i] + "'");
    }
    table.probabilities.row(i) = counts.row(i) / row_sum;
  }
  return table;
}

double summarize_efficiency(const ConversionTable& table,
                            const std::vector<int>& expected_map) {
  if (expected_map.size() != table.input_labels.size()) {
    throw std::invalid_argument("summarize_efficiency: expected_map must cover inputs");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < expected_map.size(); ++i) {
    const int j = expected_map[i];
    if (j < 0 || j >= static_cast<int>(table.output_labels.size())) {
      throw std::invalid_argument("summarize_efficiency: expected index out of range");
    }
    total += table.probabilities(static_cast<Eigen::Index>(i), j);
  }
  return total / static_cast<double>(expected_map.size());
}

}  // namespace oamsim
