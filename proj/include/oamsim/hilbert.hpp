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

#ifndef OAMSIM_HILBERT_HPP
#define OAMSIM_HILBERT_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oamsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for exact linear-algebra assertions (unitarity, norms, identities).
inline constexpr double kExactTol = 1e-12;
/// Tolerance for fitted or iterated quantities.
inline constexpr double kFitTol = 1e-9;

/// The logical qudit lives on OAM values -2..1; logical index k = l + 2.
inline constexpr int kLogicalOamMin = -2;
inline constexpr int kLogicalOamMax = 1;
inline constexpr int kLogicalDim = 4;

inline int logical_index_of_oam(int oam) { return oam - kLogicalOamMin; }
inline int oam_of_logical_index(int k) { return k + kLogicalOamMin; }

enum class Polarization { H, V };

inline char pol_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

/// Amplitude would leave the truncated OAM window. Raised instead of silently
/// dropping population, which would corrupt unitarity checks.
class LeakageError : public std::runtime_error {
 public:
  explicit LeakageError(const std::string& what) : std::runtime_error(what) {}
};

class BasisMismatchError : public std::invalid_argument {
 public:
  explicit BasisMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// One basis mode: polarization, OAM topological charge, path port.
struct ModeLabel {
  Polarization pol = Polarization::H;
  int oam = 0;
  int path = 0;

  bool operator==(const ModeLabel&) const = default;
};

/// Deterministic bijection between ModeLabel triples and dense vector indices.
///
/// Ordering is path-major, then H before V, then OAM ascending. A basis
/// without polarization carries H on every label.
struct BasisSpec {
  int oam_min = kLogicalOamMin;
  int oam_max = kLogicalOamMax;
  int paths = 1;
  bool include_polarization = false;

  /// Four OAM modes -2..1, one path, no polarization.
  static BasisSpec logical();
  /// Default simulation window of D2: OAM in [-6, 5].
  static BasisSpec window(int paths, bool include_polarization, int oam_min = -6,
                          int oam_max = 5);

  bool operator==(const BasisSpec&) const = default;

  int oam_count() const { return oam_max - oam_min + 1; }
  int pol_count() const { return include_polarization ? 2 : 1; }
  int dim() const { return paths * pol_count() * oam_count(); }

  bool contains_oam(int oam) const { return oam >= oam_min && oam <= oam_max; }

  int index_of(const ModeLabel& label) const;
  ModeLabel label_of(int index) const;
  std::string label_string(int index) const;

  /// Indices of the logical OAM modes -2..1 at the given polarization and path.
  std::vector<int> logical_indices(Polarization pol = Polarization::H,
                                   int path = 0) const;

  void validate() const;
};

/// enumerate_basis: the full ordered mode list of a BasisSpec.
std::vector<ModeLabel> enumerate_basis(const BasisSpec& spec);

std::string mode_label_string(const BasisSpec& spec, const ModeLabel& label);

/// Complex amplitude vector over an enumerated mode basis.
struct PureState {
  BasisSpec basis;
  Vector amplitudes;

  double squared_norm() const { return amplitudes.squaredNorm(); }
  bool is_normalized(double tol = kFitTol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }
};

/// A basis ket |label>.
PureState basis_state(const BasisSpec& basis, const ModeLabel& label);

/// Embed four logical amplitudes (OAM -2..1) at the given polarization/path.
PureState logical_state(const BasisSpec& basis, std::span<const Complex> amplitudes,
                        Polarization pol = Polarization::H, int path = 0);

/// Dense complex matrix over the mode basis.
///
/// `leak_sources` lists input columns whose physical image falls outside the
/// OAM window; those columns are zero and applying the operator to a state
/// with support there raises LeakageError. A lossless operator is unitary on
/// the remaining columns.
struct OpticalOperator {
  BasisSpec basis;
  Matrix matrix;
  bool lossless = true;
  std::vector<int> leak_sources;  // sorted ascending

  static OpticalOperator identity(const BasisSpec& basis);

  OpticalOperator adjoint() const;
  bool is_unitary_on_support(double tol = kExactTol) const;
  /// Largest singular value; <= 1 (+tol) for physical lossy operators.
  double max_singular_value() const;
};

/// apply: amplitudes' = matrix * amplitudes. Throws LeakageError if the state
/// has weight on a leak-source column, BasisMismatchError on basis mismatch.
PureState apply(const OpticalOperator& op, const PureState& state);

/// compose: sequence in application order (first applied first); the returned
/// matrix is the reverse-order product. Leak sources propagate: a column leaks
/// if its image under the prefix touches a later operator's leak column.
OpticalOperator compose(std::span<const OpticalOperator> ops);
OpticalOperator compose(std::initializer_list<OpticalOperator> ops);

/// |Tr(U^dag V)|^2 / d^2 restricted to the subspace; 1 iff U = e^{i phi} V there.
double fidelity_up_to_global_phase(const OpticalOperator& u, const OpticalOperator& v,
                                   std::span<const int> subspace_indices);
double fidelity_up_to_global_phase(const OpticalOperator& u, const OpticalOperator& v,
                                   std::span<const ModeLabel> subspace);

/// Born probability |<analyzer|state>|^2. The analyzer must be normalized.
double project(const PureState& state, const PureState& analyzer);

}  // namespace oamsim

#endif  // OAMSIM_HILBERT_HPP
