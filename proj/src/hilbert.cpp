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

#include "oamsim/hilbert.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace oamsim {

BasisSpec BasisSpec::logical() {
  return BasisSpec{kLogicalOamMin, kLogicalOamMax, 1, false};
}

BasisSpec BasisSpec::window(int paths, bool include_polarization, int oam_min,
                            int oam_max) {
  BasisSpec spec{oam_min, oam_max, paths, include_polarization};
  spec.validate();
  return spec;
}

void BasisSpec::validate() const {
  if (oam_min > oam_max) {
    throw std::invalid_argument("BasisSpec: empty OAM window [" +
                                std::to_string(oam_min) + ", " + std::to_string(oam_max) +
                                "]");
  }
  if (paths < 1) {
    throw std::invalid_argument("BasisSpec: need at least one path");
  }
}

int BasisSpec::index_of(const ModeLabel& label) const {
  if (label.path < 0 || label.path >= paths) {
    throw std::invalid_argument("BasisSpec: path " + std::to_string(label.path) +
                                " outside basis with " + std::to_string(paths) +
                                " path(s)");
  }
  if (!contains_oam(label.oam)) {
    throw std::invalid_argument("BasisSpec: OAM " + std::to_string(label.oam) +
                                " outside window [" + std::to_string(oam_min) + ", " +
                                std::to_string(oam_max) + "]");
  }
  if (!include_polarization && label.pol != Polarization::H) {
    throw std::invalid_argument(
        "BasisSpec: polarization-free basis only holds H-labelled modes");
  }
  const int pol = (label.pol == Polarization::V) ? 1 : 0;
  return (label.path * pol_count() + pol) * oam_count() + (label.oam - oam_min);
}

ModeLabel BasisSpec::label_of(int index) const {
  if (index < 0 || index >= dim()) {
    throw std::out_of_range("BasisSpec: index " + std::to_string(index) +
                            " out of range for dimension " + std::to_string(dim()));
  }
  ModeLabel label;
  label.oam = oam_min + index % oam_count();
  const int rest = index / oam_count();
  label.pol = (rest % pol_count() == 1) ? Polarization::V : Polarization::H;
  label.path = rest / pol_count();
  return label;
}

std::string BasisSpec::label_string(int index) const {
  return mode_label_string(*this, label_of(index));
}

std::vector<int> BasisSpec::logical_indices(Polarization pol, int path) const {
  std::vector<int> out;
  out.reserve(kLogicalDim);
  for (int oam = kLogicalOamMin; oam <= kLogicalOamMax; ++oam) {
    out.push_back(index_of(ModeLabel{pol, oam, path}));
  }
  return out;
}

std::vector<ModeLabel> enumerate_basis(const BasisSpec& spec) {
  spec.validate();
  std::vector<ModeLabel> labels;
  labels.reserve(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    labels.push_back(spec.label_of(i));
  }
  return labels;
}

std::string mode_label_string(const BasisSpec& spec, const ModeLabel& label) {
  std::ostringstream os;
  if (spec.include_polarization) {
    os << pol_char(label.pol) << ':';
  }
  os << "l=" << label.oam;
  if (spec.paths > 1) {
    os << '@' << label.path;
  }
  return os.str();
}

PureState basis_state(const BasisSpec& basis, const ModeLabel& label) {
  PureState state{basis, Vector::Zero(basis.dim())};
  state.amplitudes(basis.index_of(label)) = 1.0;
  return state;
}

PureState logical_state(const BasisSpec& basis, std::span<const Complex> amplitudes,
                        Polarization pol, int path) {
  if (amplitudes.size() != kLogicalDim) {
    throw std::invalid_argument("logical_state: expected 4 amplitudes");
  }
  double norm2 = 0.0;
  for (const Complex& a : amplitudes) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kFitTol) {
    throw std::invalid_argument("logical_state: amplitudes must be normalized");
  }
  PureState state{basis, Vector::Zero(basis.dim())};
  for (int k = 0; k < kLogicalDim; ++k) {
    state.amplitudes(basis.index_of(ModeLabel{pol, oam_of_logical_index(k), path})) =
        amplitudes[k];
  }
  return state;
}

OpticalOperator OpticalOperator::identity(const BasisSpec& basis) {
  return OpticalOperator{basis, Matrix::Identity(basis.dim(), basis.dim()), true, {}};
}

OpticalOperator OpticalOperator::adjoint() const {
  // Adjoint of an operator with leaked columns is not defined mode-by-mode;
  // only fully supported operators are invertible.
  if (!leak_sources.empty()) {
    throw LeakageError("adjoint: operator has leaked columns");
  }
  return OpticalOperator{basis, matrix.adjoint(), lossless, {}};
}

bool OpticalOperator::is_unitary_on_support(double tol) const {
  const Matrix gram = matrix.adjoint() * matrix;
  auto leaked = [this](int j) {
    return std::binary_search(leak_sources.begin(), leak_sources.end(), j);
  };
  for (int j = 0; j < gram.cols(); ++j) {
    for (int k = 0; k < gram.rows(); ++k) {
      if (leaked(j) || leaked(k)) {
        // Leaked columns must be exactly empty.
        continue;
      }
      const Complex expected = (j == k) ? Complex(1.0) : Complex(0.0);
      if (std::abs(gram(k, j) - expected) > tol) return false;
    }
  }
  for (int j : leak_sources) {
    if (matrix.col(j).norm() > tol) return false;
  }
  return true;
}

double OpticalOperator::max_singular_value() const {
  Eigen::JacobiSVD<Matrix> svd(matrix);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

namespace {

void require_same_basis(const BasisSpec& a, const BasisSpec& b, const char* what) {
  if (!(a == b)) {
    throw BasisMismatchError(std::string(what) + ": operands live on different bases");
  }
}

}  // namespace

PureState apply(const OpticalOperator& op, const PureState& state) {
  require_same_basis(op.basis, state.basis, "apply");
  double leaked_weight = 0.0;
  for (int j : op.leak_sources) {
    leaked_weight += std::norm(state.amplitudes(j));
  }
  if (leaked_weight > kExactTol) {
    std::ostringstream os;
    os << "apply: state has weight " << leaked_weight
       << " on modes whose image leaves the OAM window [" << op.basis.oam_min << ", "
       << op.basis.oam_max << "]:";
    for (int j : op.leak_sources) {
      if (std::norm(state.amplitudes(j)) > kExactTol) {
        os << ' ' << op.basis.label_string(j);
      }
    }
    throw LeakageError(os.str());
  }
  return PureState{state.basis, op.matrix * state.amplitudes};
}

OpticalOperator compose(std::span<const OpticalOperator> ops) {
  if (ops.empty()) {
    throw std::invalid_argument("compose: empty sequence");
  }
  const BasisSpec& basis = ops.front().basis;
  OpticalOperator out = OpticalOperator::identity(basis);
  for (const OpticalOperator& op : ops) {
    require_same_basis(basis, op.basis, "compose");
    // A column of the running product leaks if its image has weight on one of
    // the next operator's leaked columns.
    for (int col = 0; col < out.matrix.cols(); ++col) {
      if (std::binary_search(out.leak_sources.begin(), out.leak_sources.end(), col)) {
        continue;
      }
      double weight = 0.0;
      for (int row : op.leak_sources) {
        weight += std::norm(out.matrix(row, col));
      }
      if (weight > kExactTol) {
        out.leak_sources.insert(
            std::lower_bound(out.leak_sources.begin(), out.leak_sources.end(), col),
            col);
      }
    }
    out.matrix = op.matrix * out.matrix;
    out.lossless = out.lossless && op.lossless;
  }
  // Leaked columns are zero by construction of the factor matrices; enforce
  // exactly so downstream unitarity checks see a clean support.
  for (int col : out.leak_sources) {
    out.matrix.col(col).setZero();
  }
  return out;
}

OpticalOperator compose(std::initializer_list<OpticalOperator> ops) {
  return compose(std::span<const OpticalOperator>(ops.begin(), ops.size()));
}

double fidelity_up_to_global_phase(const OpticalOperator& u, const OpticalOperator& v,
                                   std::span<const int> subspace_indices) {
  require_same_basis(u.basis, v.basis, "fidelity_up_to_global_phase");
  if (subspace_indices.empty()) {
    throw std::invalid_argument("fidelity_up_to_global_phase: empty subspace");
  }
  Complex trace = 0.0;
  for (int j : subspace_indices) {
    trace += u.matrix.col(j).dot(v.matrix.col(j));  // <U e_j | V e_j>
  }
  const double d = static_cast<double>(subspace_indices.size());
  return std::norm(trace) / (d * d);
}

double fidelity_up_to_global_phase(const OpticalOperator& u, const OpticalOperator& v,
                                   std::span<const ModeLabel> subspace) {
  std::vector<int> indices;
  indices.reserve(subspace.size());
  for (const ModeLabel& label : subspace) {
    indices.push_back(u.basis.index_of(label));
  }
  return fidelity_up_to_global_phase(u, v, indices);
}

double project(const PureState& state, const PureState& analyzer) {
  require_same_basis(state.basis, analyzer.basis, "project");
  if (!analyzer.is_normalized()) {
    throw std::invalid_argument("project: analyzer state is not normalized");
  }
  return std::norm(analyzer.amplitudes.dot(state.amplitudes));
}

}  // namespace oamsim
