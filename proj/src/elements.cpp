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

#include "oamsim/elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace oamsim {

// Angles and phases are stored in [0, 2 pi); the matrices are periodic anyway.
double wrap_angle(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  return wrapped;
}

namespace {

constexpr Complex kI{0.0, 1.0};

void require_path(const BasisSpec& basis, int path, const char* what) {
  if (path < 0 || path >= basis.paths) {
    throw std::invalid_argument(std::string(what) + ": path " + std::to_string(path) +
                                " not present in basis with " +
                                std::to_string(basis.paths) + " path(s)");
  }
}

/// Shared scaffolding for elements that permute OAM within one path:
/// target_oam(l) gives the image OAM, phase(l) its amplitude.
template <typename TargetFn, typename PhaseFn>
OpticalOperator oam_map_operator(const BasisSpec& basis, int path, TargetFn target_oam,
                                 PhaseFn phase) {
  OpticalOperator op = OpticalOperator::identity(basis);
  for (int col = 0; col < basis.dim(); ++col) {
    const ModeLabel in = basis.label_of(col);
    if (in.path != path) continue;
    op.matrix.col(col).setZero();
    const int out_oam = target_oam(in.oam);
    if (!basis.contains_oam(out_oam)) {
      op.leak_sources.push_back(col);
      continue;
    }
    const int row = basis.index_of(ModeLabel{in.pol, out_oam, in.path});
    op.matrix(row, col) = phase(in.oam);
  }
  return op;
}

/// Jones matrix applied to the polarization factor of one path.
OpticalOperator jones_operator(const BasisSpec& basis, int path,
                               const Eigen::Matrix2cd& jones) {
  if (!basis.include_polarization) {
    throw std::invalid_argument(
        "wave plate: basis does not carry a polarization factor");
  }
  OpticalOperator op = OpticalOperator::identity(basis);
  for (int oam = basis.oam_min; oam <= basis.oam_max; ++oam) {
    const int h = basis.index_of(ModeLabel{Polarization::H, oam, path});
    const int v = basis.index_of(ModeLabel{Polarization::V, oam, path});
    op.matrix(h, h) = jones(0, 0);
    op.matrix(h, v) = jones(0, 1);
    op.matrix(v, h) = jones(1, 0);
    op.matrix(v, v) = jones(1, 1);
  }
  return op;
}

}  // namespace

std::string element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Spp: return "spp";
    case ElementKind::DovePrism: return "dove_prism";
    case ElementKind::Mirror: return "mirror";
    case ElementKind::Hwp: return "hwp";
    case ElementKind::Qwp: return "qwp";
    case ElementKind::Pbs: return "pbs";
    case ElementKind::PhaseShifter: return "phase_shifter";
    case ElementKind::SlmPrepare: return "slm_prepare";
    case ElementKind::SlmProject: return "slm_project";
  }
  throw std::invalid_argument("unknown element kind");
}

ElementKind element_kind_from_name(const std::string& name) {
  for (ElementKind kind :
       {ElementKind::Spp, ElementKind::DovePrism, ElementKind::Mirror, ElementKind::Hwp,
        ElementKind::Qwp, ElementKind::Pbs, ElementKind::PhaseShifter,
        ElementKind::SlmPrepare, ElementKind::SlmProject}) {
    if (element_kind_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown element kind '" + name + "'");
}

ElementSpec ElementSpec::spp(int step, int path) {
  ElementSpec e;
  e.kind = ElementKind::Spp;
  e.spp_step = step;
  e.path = path;
  return e;
}

ElementSpec ElementSpec::dove_prism(double angle, int path) {
  ElementSpec e;
  e.kind = ElementKind::DovePrism;
  e.angle = wrap_angle(angle);
  e.path = path;
  return e;
}

ElementSpec ElementSpec::mirror(int path) {
  ElementSpec e;
  e.kind = ElementKind::Mirror;
  e.path = path;
  return e;
}

ElementSpec ElementSpec::hwp(double angle, int path) {
  ElementSpec e;
  e.kind = ElementKind::Hwp;
  e.angle = wrap_angle(angle);
  e.path = path;
  return e;
}

ElementSpec ElementSpec::qwp(double angle, int path) {
  ElementSpec e;
  e.kind = ElementKind::Qwp;
  e.angle = wrap_angle(angle);
  e.path = path;
  return e;
}

ElementSpec ElementSpec::pbs(int path_a, int path_b) {
  ElementSpec e;
  e.kind = ElementKind::Pbs;
  e.path = path_a;
  e.path_b = path_b;
  return e;
}

ElementSpec ElementSpec::phase_shifter(double phase, int path) {
  ElementSpec e;
  e.kind = ElementKind::PhaseShifter;
  e.phase = wrap_angle(phase);
  e.path = path;
  return e;
}

std::string ElementSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ElementKind::Spp:
      os << "SPP(" << (spp_step > 0 ? "+" : "") << spp_step << ")@" << path;
      break;
    case ElementKind::DovePrism:
      os << "DP(" << angle * 180.0 / std::numbers::pi << "deg)@" << path;
      break;
    case ElementKind::Mirror:
      os << "MIRROR@" << path;
      break;
    case ElementKind::Hwp:
      os << "HWP(" << angle * 180.0 / std::numbers::pi << "deg)@" << path;
      break;
    case ElementKind::Qwp:
      os << "QWP(" << angle * 180.0 / std::numbers::pi << "deg)@" << path;
      break;
    case ElementKind::Pbs:
      os << "PBS(" << path << "," << path_b << ")";
      break;
    case ElementKind::PhaseShifter:
      os << "PHASE(" << phase << "rad)@" << path;
      break;
    case ElementKind::SlmPrepare:
      os << "SLM-PREP@" << path;
      break;
    case ElementKind::SlmProject:
      os << "SLM-PROJ@" << path;
      break;
  }
  return os.str();
}

void ElementSpec::validate() const {
  if (kind == ElementKind::Spp && spp_step == 0) {
    throw std::invalid_argument("ElementSpec: SPP step must be a nonzero integer");
  }
  if (kind == ElementKind::Pbs && path == path_b) {
    throw std::invalid_argument("ElementSpec: PBS needs two distinct ports");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  if (angle < 0.0 || angle >= two_pi || phase < 0.0 || phase >= two_pi) {
    throw std::invalid_argument("ElementSpec: angles live in [0, 2 pi)");
  }
}

OpticalOperator spp(const BasisSpec& basis, int step, int path) {
  require_path(basis, path, "spp");
  if (step == 0) {
    throw std::invalid_argument("spp: step must be a nonzero integer");
  }
  // Precondition: the window must be large enough that logical modes stay
  // interior; otherwise the device cannot act on the qudit at all.
  for (int oam = kLogicalOamMin; oam <= kLogicalOamMax; ++oam) {
    if (!basis.contains_oam(oam + step)) {
      std::ostringstream os;
      os << ElementSpec::spp(step, path).describe() << ": logical mode l=" << oam
         << " would shift to l=" << oam + step << " outside window [" << basis.oam_min
         << ", " << basis.oam_max << "]";
      throw LeakageError(os.str());
    }
  }
  return oam_map_operator(
      basis, path, [step](int l) { return l + step; }, [](int) { return Complex(1.0); });
}

OpticalOperator dove_prism(const BasisSpec& basis, double angle, int path) {
  require_path(basis, path, "dove_prism");
  return oam_map_operator(
      basis, path, [](int l) { return -l; },
      [angle](int l) { return std::exp(kI * (2.0 * l * angle)); });
}

OpticalOperator mirror(const BasisSpec& basis, int path) {
  require_path(basis, path, "mirror");
  return oam_map_operator(
      basis, path, [](int l) { return -l; }, [](int) { return Complex(1.0); });
}

OpticalOperator hwp(const BasisSpec& basis, double angle, int path) {
  require_path(basis, path, "hwp");
  const double c = std::cos(2.0 * angle);
  const double s = std::sin(2.0 * angle);
  Eigen::Matrix2cd jones;
  jones << c, s, s, -c;
  return jones_operator(basis, path, jones);
}

OpticalOperator qwp(const BasisSpec& basis, double angle, int path) {
  require_path(basis, path, "qwp");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2cd jones;
  jones << c * c + kI * s * s, c * s * (1.0 - kI),  //
      c * s * (1.0 - kI), s * s + kI * c * c;
  return jones_operator(basis, path, jones);
}

OpticalOperator pbs(const BasisSpec& basis, int path_a, int path_b) {
  require_path(basis, path_a, "pbs");
  require_path(basis, path_b, "pbs");
  if (path_a == path_b) {
    throw std::invalid_argument("pbs: ports must be distinct");
  }
  if (!basis.include_polarization) {
    throw std::invalid_argument("pbs: basis does not carry a polarization factor");
  }
  OpticalOperator op = OpticalOperator::identity(basis);
  for (int oam = basis.oam_min; oam <= basis.oam_max; ++oam) {
    const int va = basis.index_of(ModeLabel{Polarization::V, oam, path_a});
    const int vb = basis.index_of(ModeLabel{Polarization::V, oam, path_b});
    op.matrix(va, va) = 0.0;
    op.matrix(vb, vb) = 0.0;
    op.matrix(vb, va) = 1.0;
    op.matrix(va, vb) = 1.0;
  }
  return op;
}

OpticalOperator phase_shifter(const BasisSpec& basis, double phase, int path) {
  require_path(basis, path, "phase_shifter");
  OpticalOperator op = OpticalOperator::identity(basis);
  const Complex factor = std::exp(kI * phase);
  for (int col = 0; col < basis.dim(); ++col) {
    if (basis.label_of(col).path == path) {
      op.matrix(col, col) = factor;
    }
  }
  return op;
}

OpticalOperator element_operator(const BasisSpec& basis, const ElementSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ElementKind::Spp: return spp(basis, spec.spp_step, spec.path);
    case ElementKind::DovePrism: return dove_prism(basis, spec.angle, spec.path);
    case ElementKind::Mirror: return mirror(basis, spec.path);
    case ElementKind::Hwp: return hwp(basis, spec.angle, spec.path);
    case ElementKind::Qwp: return qwp(basis, spec.angle, spec.path);
    case ElementKind::Pbs: return pbs(basis, spec.path, spec.path_b);
    case ElementKind::PhaseShifter:
      return phase_shifter(basis, spec.phase, spec.path);
    case ElementKind::SlmPrepare:
    case ElementKind::SlmProject:
      throw std::invalid_argument(spec.describe() +
                                  " is a preparation/detection stage, not an operator");
  }
  throw std::invalid_argument("unknown element kind");
}

namespace {

void require_single_mode_support(const PureState& state, const char* what) {
  if (!state.is_normalized()) {
    throw std::invalid_argument(std::string(what) + ": state is not normalized");
  }
  // Supported on the OAM factor of one path with fixed polarization.
  int path = -1;
  Polarization pol = Polarization::H;
  bool seen = false;
  for (int i = 0; i < state.basis.dim(); ++i) {
    if (std::norm(state.amplitudes(i)) <= kExactTol) continue;
    const ModeLabel label = state.basis.label_of(i);
    if (!seen) {
      path = label.path;
      pol = label.pol;
      seen = true;
    } else if (label.path != path || label.pol != pol) {
      throw std::invalid_argument(
          std::string(what) +
          ": support must lie on one path with fixed polarization");
    }
  }
  if (!seen) {
    throw std::invalid_argument(std::string(what) + ": state is empty");
  }
}

}  // namespace

PureState slm_prepare(const PureState& target) {
  require_single_mode_support(target, "slm_prepare");
  return target;
}

PureState slm_project(const PureState& analyzer) {
  require_single_mode_support(analyzer, "slm_project");
  return analyzer;
}

}  // namespace oamsim
