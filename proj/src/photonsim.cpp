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

#include "oamsim/photonsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "oamsim/rng.hpp"

namespace oamsim {

namespace {

// Stream tag for the per-input angle-drift draws, outside any analyzer index.
constexpr std::uint64_t kAngleStream = 0xD81FF00DULL;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

void SourceSpec::validate() const {
  if (pair_rate_per_mw < 0 || pump_power_mw < 0 || accidental_rate_hz < 0 ||
      integration_time_s < 0) {
    throw std::invalid_argument("SourceSpec: rates and times must be >= 0");
  }
  if (coincidence_efficiency < 0 || coincidence_efficiency > 1) {
    throw std::invalid_argument("SourceSpec: coincidence efficiency must be in [0, 1]");
  }
}

double NoiseModel::eta(int oam) const {
  auto it = coupling_efficiency.find(oam);
  return it == coupling_efficiency.end() ? 1.0 : it->second;
}

double NoiseModel::rho(int oam) const {
  auto it = preparation_fidelity.find(oam);
  return it == preparation_fidelity.end() ? 1.0 : it->second;
}

namespace {

double oam_weighted(const PureState& state, const std::map<int, double>& map) {
  double total = 0.0;
  double weighted = 0.0;
  for (int i = 0; i < state.basis.dim(); ++i) {
    const double w = std::norm(state.amplitudes(i));
    if (w <= 0.0) continue;
    total += w;
    auto it = map.find(state.basis.label_of(i).oam);
    weighted += w * (it == map.end() ? 1.0 : it->second);
  }
  return total > 0.0 ? weighted / total : 1.0;
}

}  // namespace

double NoiseModel::eta_for(const PureState& state) const {
  return oam_weighted(state, coupling_efficiency);
}

double NoiseModel::rho_for(const PureState& state) const {
  return oam_weighted(state, preparation_fidelity);
}

bool NoiseModel::is_ideal() const {
  auto all_one = [](const std::map<int, double>& m) {
    return std::all_of(m.begin(), m.end(),
                       [](const auto& kv) { return kv.second == 1.0; });
  };
  return all_one(coupling_efficiency) && all_one(preparation_fidelity) &&
         waveplate_angle_sigma == 0.0 && dp_angle_sigma == 0.0 &&
         interferometer_phase_sigma == 0.0 && slm_projection_efficiency == 1.0;
}

void NoiseModel::validate() const {
  for (const auto& [l, v] : coupling_efficiency) {
    if (v < 0.0 || v > 1.0) {
      throw std::invalid_argument("NoiseModel: coupling efficiency out of [0, 1]");
    }
  }
  for (const auto& [l, v] : preparation_fidelity) {
    if (v < 0.0 || v > 1.0) {
      throw std::invalid_argument("NoiseModel: preparation fidelity out of [0, 1]");
    }
  }
  if (waveplate_angle_sigma < 0 || dp_angle_sigma < 0 || interferometer_phase_sigma < 0) {
    throw std::invalid_argument("NoiseModel: angle sigmas must be >= 0");
  }
  if (slm_projection_efficiency < 0 || slm_projection_efficiency > 1) {
    throw std::invalid_argument("NoiseModel: projection efficiency out of [0, 1]");
  }
}

ConversionTable conversion_from_count_table(const CountTable& table) {
  return conversion_from_counts(table.counts.cast<double>(), table.input_labels,
                                table.analyzer_labels);
}

namespace {

/// Rebuild the circuit with one draw of the angle noise (D16).
Circuit perturb_circuit(const Circuit& circuit, const NoiseModel& noise,
                        SplitMix64& rng) {
  Circuit noisy{circuit.name, circuit.basis, {}, circuit.input_path};
  for (ElementSpec spec : flatten(circuit)) {
    switch (spec.kind) {
      case ElementKind::Hwp:
      case ElementKind::Qwp:
        if (noise.waveplate_angle_sigma > 0) {
          spec.angle =
              wrap_angle(spec.angle + noise.waveplate_angle_sigma * sample_normal(rng));
        }
        break;
      case ElementKind::DovePrism:
        if (noise.dp_angle_sigma > 0) {
          spec.angle = wrap_angle(spec.angle + noise.dp_angle_sigma * sample_normal(rng));
        }
        break;
      default:
        break;
    }
    noisy.stages.emplace_back(spec);
    // Arm-length drift: a random relative phase on the second port of every
    // interferometer splitter.
    if (spec.kind == ElementKind::Pbs && noise.interferometer_phase_sigma > 0) {
      noisy.stages.emplace_back(ElementSpec::phase_shifter(
          noise.interferometer_phase_sigma * sample_normal(rng), spec.path_b));
    }
  }
  return noisy;
}

bool has_angle_noise(const NoiseModel& noise) {
  return noise.waveplate_angle_sigma > 0 || noise.dp_angle_sigma > 0 ||
         noise.interferometer_phase_sigma > 0;
}

/// The cell rate model shared by expected_rate, sampling and calibration.
double cell_rate(double born_probability, double rho_in, double eta_out,
                 double projection_eff, const SourceSpec& source) {
  const double diag = projection_eff * rho_in;
  const double p_eff = diag * born_probability + (1.0 - diag) / kLogicalDim;
  return source.signal_rate_hz() * eta_out * p_eff + source.accidental_rate_hz;
}

}  // namespace

double expected_rate(const Circuit& circuit, const PureState& input,
                     const PureState& analyzer, const SourceSpec& source,
                     const NoiseModel& noise) {
  source.validate();
  noise.validate();
  if (!input.is_normalized() || !analyzer.is_normalized()) {
    throw std::invalid_argument("expected_rate: states must be normalized");
  }
  const OpticalOperator op = compile(circuit);
  const double p = project(apply(op, input), analyzer);
  return cell_rate(p, noise.rho_for(input), noise.eta_for(analyzer),
                   noise.slm_projection_efficiency, source);
}

CountTable sample_counts(const Circuit& circuit, const std::vector<LabeledState>& inputs,
                         const std::vector<LabeledState>& analyzers,
                         const SourceSpec& source, const NoiseModel& noise,
                         std::uint64_t seed) {
  source.validate();
  noise.validate();
  if (inputs.empty() || analyzers.empty()) {
    throw std::invalid_argument("sample_counts: empty input/analyzer list");
  }
  CountTable table;
  table.seed = seed;
  table.source = source;
  table.counts.resize(inputs.size(), analyzers.size());
  for (const auto& a : analyzers) {
    if (!a.state.is_normalized()) {
      throw std::invalid_argument("sample_counts: analyzer '" + a.label +
                                  "' is not normalized");
    }
    table.analyzer_labels.push_back(a.label);
  }

  const bool jitter = has_angle_noise(noise);
  const OpticalOperator nominal = compile(circuit);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    table.input_labels.push_back(inputs[i].label);
    OpticalOperator op = nominal;
    if (jitter) {
      SplitMix64 angle_rng(substream_seed(seed, i, kAngleStream));
      op = compile(perturb_circuit(circuit, noise, angle_rng));
    }
    const PureState out = apply(op, inputs[i].state);
    const double rho_in = noise.rho_for(inputs[i].state);
    for (std::size_t j = 0; j < analyzers.size(); ++j) {
      const double p = project(out, analyzers[j].state);
      const double rate = cell_rate(p, rho_in, noise.eta_for(analyzers[j].state),
                                    noise.slm_projection_efficiency, source);
      SplitMix64 cell_rng(substream_seed(seed, i, j));
      table.counts(i, j) = sample_poisson(cell_rng, rate * source.integration_time_s);
    }
  }
  return table;
}

namespace {

std::vector<int> permutation_expected_map(const ConversionTable& ideal) {
  std::vector<int> map(ideal.input_labels.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    Eigen::Index best = 0;
    ideal.probabilities.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
    map[i] = static_cast<int>(best);
  }
  return map;
}

ScenarioRun make_run(std::string name, const Circuit& circuit,
                     const std::vector<LabeledState>& inputs,
                     const std::vector<LabeledState>& analyzers,
                     const NoiseModel& noise, std::uint64_t seed,
                     const SourceSpec& source) {
  ScenarioRun run;
  run.name = std::move(name);
  run.counts = sample_counts(circuit, inputs, analyzers, source, noise, seed);
  run.measured = conversion_from_count_table(run.counts);
  run.ideal = conversion_from_operator(compile(circuit), inputs, analyzers);
  run.expected_map = permutation_expected_map(run.ideal);
  return run;
}

}  // namespace

std::array<ScenarioRun, 3> run_table1_scenario(const NoiseModel& noise,
                                               std::uint64_t seed,
                                               const SourceSpec& source) {
  const BasisSpec basis = BasisSpec::window(2, true);
  const std::vector<LabeledState> computational = measurement_basis(1, basis);
  const std::array<Circuit, 3> circuits{x_gate_circuit(basis), x2_gate_circuit(basis),
                                        xdag_gate_circuit(basis)};
  std::array<ScenarioRun, 3> runs;
  for (std::size_t g = 0; g < circuits.size(); ++g) {
    runs[g] = make_run(circuits[g].name, circuits[g], computational, computational,
                       noise, substream_seed(seed, 0x7AB1E, g), source);
  }
  return runs;
}

ScenarioRun run_bases_scenario(const Circuit& gate, int basis_index,
                               const NoiseModel& noise, std::uint64_t seed,
                               const SourceSpec& source) {
  const std::vector<LabeledState> inputs = measurement_basis(basis_index, gate.basis);
  const OpticalOperator ideal_op = compile(gate);
  std::vector<LabeledState> analyzers;
  for (const LabeledState& in : inputs) {
    analyzers.push_back({"img(" + in.label + ")", apply(ideal_op, in.state)});
  }
  return make_run(gate.name + "_B" + std::to_string(basis_index), gate, inputs,
                  analyzers, noise, seed, source);
}

ScenarioRun run_controlled_scenario(int n, ControlState control,
                                    const NoiseModel& noise, std::uint64_t seed,
                                    const SourceSpec& source) {
  const BasisSpec basis = BasisSpec::window(3, true);
  const Circuit circuit = controlled_x_power_circuit(n, basis);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  std::vector<LabeledState> inputs;
  for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
    const PureState h = basis_state(basis, ModeLabel{Polarization::H, l, 0});
    if (control == ControlState::H) {
      inputs.push_back({"H:l=" + std::to_string(l), h});
    } else {
      const PureState v = basis_state(basis, ModeLabel{Polarization::V, l, 0});
      PureState d{basis, (h.amplitudes + v.amplitudes) * inv_sqrt2};
      inputs.push_back({"D:l=" + std::to_string(l), d});
    }
  }

  std::vector<LabeledState> analyzers;
  if (control == ControlState::H) {
    // Fig.-style columns: output OAM modes at horizontal polarization.
    for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
      analyzers.push_back({"H:l=" + std::to_string(l),
                           basis_state(basis, ModeLabel{Polarization::H, l, 0})});
    }
  } else {
    // Hybrid images (|H> U|k> + |V> |k>)/sqrt(2); orthonormal because U is a
    // permutation of the logical modes.
    const OpticalOperator ideal_op = compile(circuit);
    for (const LabeledState& in : inputs) {
      analyzers.push_back({"img(" + in.label + ")", apply(ideal_op, in.state)});
    }
  }

  ScenarioRun run =
      make_run(circuit.name + (control == ControlState::H ? "_H" : "_D"), circuit,
               inputs, analyzers, noise, seed, source);
  return run;
}

namespace {

/// Signal-only expected conversion average for one gate permutation.
/// cell(i, j) = eta_j * (phi_i p_ij + (1 - phi_i)/4), phi_i = s rho_i.
double gate_average(const std::vector<int>& perm, const std::array<double, 4>& rho,
                    const std::array<double, 4>& eta, double s) {
  const double eta_sum = eta[0] + eta[1] + eta[2] + eta[3];
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int j = perm[i];
    const double phi = s * rho[i];
    const double num = eta[j] * (phi + (1.0 - phi) / 4.0);
    const double den = phi * eta[j] + (1.0 - phi) / 4.0 * eta_sum;
    total += num / den;
  }
  return total / 4.0;
}

const std::array<std::vector<int>, 3> kGatePerms{
    std::vector<int>{1, 2, 3, 0},  // X
    std::vector<int>{2, 3, 0, 1},  // X^2
    std::vector<int>{3, 0, 1, 2},  // Xdag
};

struct CalibrationParams {
  std::array<double, 4> rho{1, 1, 1, 1};
  std::array<double, 4> eta{1, 1, 1, 1};
  double s = 1.0;

  static CalibrationParams from_vector(const std::array<double, 9>& v) {
    CalibrationParams p;
    for (int i = 0; i < 4; ++i) p.rho[i] = v[i];
    for (int i = 0; i < 4; ++i) p.eta[i] = v[4 + i];
    p.s = v[8];
    return p;
  }
};

std::array<double, 9> clamp_params(const std::array<double, 9>& v) {
  std::array<double, 9> q = v;
  for (int i = 0; i < 8; ++i) q[i] = std::min(1.0, std::max(0.5, q[i]));
  q[8] = std::min(1.0, std::max(0.5, q[8]));
  return q;
}

std::array<double, 3> averages_of(const CalibrationParams& p) {
  std::array<double, 3> a;
  for (int g = 0; g < 3; ++g) {
    a[g] = gate_average(kGatePerms[g], p.rho, p.eta, p.s);
  }
  return a;
}

/// Scale-separated penalty: matching the targets dominates, the cell floor
/// selects among the under-determined solutions, a weak prior keeps the
/// efficiencies near one.
double calibration_loss(const std::array<double, 9>& v,
                        const std::array<double, 3>& targets) {
  constexpr double kFloor = 0.907;
  const std::array<double, 9> q = clamp_params(v);
  double box = 0.0;
  for (int i = 0; i < 9; ++i) box += (v[i] - q[i]) * (v[i] - q[i]);
  const CalibrationParams p = CalibrationParams::from_vector(q);
  const std::array<double, 3> a = averages_of(p);
  double loss = 0.0;
  for (int g = 0; g < 3; ++g) loss += 1e4 * (a[g] - targets[g]) * (a[g] - targets[g]);
  const double eta_sum = p.eta[0] + p.eta[1] + p.eta[2] + p.eta[3];
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < 4; ++i) {
      const int j = kGatePerms[g][i];
      const double phi = p.s * p.rho[i];
      const double cell = p.eta[j] * (phi + (1.0 - phi) / 4.0) /
                          (phi * p.eta[j] + (1.0 - phi) / 4.0 * eta_sum);
      const double viol = std::max(0.0, kFloor - cell);
      loss += viol * viol;
    }
  }
  for (int i = 0; i < 8; ++i) loss += 1e-5 * (q[i] - 1.0) * (q[i] - 1.0);
  return loss + 10.0 * box;
}

using Params = std::array<double, 9>;

Params nelder_mead(const std::array<double, 3>& targets, Params x0, double scale,
                   int max_iters) {
  constexpr int n = 9;
  auto f = [&targets](const Params& x) { return calibration_loss(x, targets); };
  std::array<Params, n + 1> xs;
  std::array<double, n + 1> fs;
  xs[0] = x0;
  fs[0] = f(x0);
  for (int k = 0; k < n; ++k) {
    Params x = x0;
    x[k] += scale * (k % 2 == 0 ? 1.0 : -1.0);
    xs[k + 1] = x;
    fs[k + 1] = f(x);
  }
  std::array<int, n + 1> order;
  for (int it = 0; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    {
      std::array<Params, n + 1> xs2;
      std::array<double, n + 1> fs2;
      for (int k = 0; k <= n; ++k) {
        xs2[k] = xs[order[k]];
        fs2[k] = fs[order[k]];
      }
      xs = xs2;
      fs = fs2;
    }
    if (fs[n] - fs[0] < 1e-22) break;
    Params centroid{};
    for (int k = 0; k < n; ++k) {
      for (int d = 0; d < n; ++d) centroid[d] += xs[k][d] / n;
    }
    auto blend = [&](double t) {
      Params x;
      for (int d = 0; d < n; ++d) x[d] = centroid[d] + t * (centroid[d] - xs[n][d]);
      return x;
    };
    const Params reflect = blend(1.0);
    const double f_reflect = f(reflect);
    if (f_reflect < fs[0]) {
      const Params expand = blend(2.0);
      const double f_expand = f(expand);
      if (f_expand < f_reflect) {
        xs[n] = expand;
        fs[n] = f_expand;
      } else {
        xs[n] = reflect;
        fs[n] = f_reflect;
      }
    } else if (f_reflect < fs[n - 1]) {
      xs[n] = reflect;
      fs[n] = f_reflect;
    } else {
      const Params contract = blend(-0.5);
      const double f_contract = f(contract);
      if (f_contract < fs[n]) {
        xs[n] = contract;
        fs[n] = f_contract;
      } else {
        for (int k = 1; k <= n; ++k) {
          for (int d = 0; d < n; ++d) xs[k][d] = xs[0][d] + 0.5 * (xs[k][d] - xs[0][d]);
          fs[k] = f(xs[k]);
        }
      }
    }
  }
  int best = 0;
  for (int k = 1; k <= n; ++k) {
    if (fs[k] < fs[best]) best = k;
  }
  return xs[best];
}

}  // namespace

std::array<double, 3> expected_gate_averages(const NoiseModel& noise) {
  CalibrationParams p;
  for (int k = 0; k < 4; ++k) {
    const int oam = oam_of_logical_index(k);
    p.rho[k] = noise.rho(oam);
    p.eta[k] = noise.eta(oam);
  }
  p.s = noise.slm_projection_efficiency;
  return averages_of(p);
}

NoiseModel calibrate_noise(const std::array<double, 3>& target_averages) {
  for (double t : target_averages) {
    if (t <= 0.0 || t > 1.0) {
      throw std::invalid_argument("calibrate_noise: targets must lie in (0, 1]");
    }
  }
  NoiseModel model;
  const bool all_unity = std::all_of(target_averages.begin(), target_averages.end(),
                                     [](double t) { return t == 1.0; });
  if (all_unity) {
    for (int l = kLogicalOamMin; l <= kLogicalOamMax; ++l) {
      model.coupling_efficiency[l] = 1.0;
      model.preparation_fidelity[l] = 1.0;
    }
    return model;  // lossless fixed point
  }

  const double mean =
      (target_averages[0] + target_averages[1] + target_averages[2]) / 3.0;
  const double s0 = clamp01((4.0 * mean - 1.0) / 3.0);
  const std::array<Params, 4> starts{
      Params{0.93, 0.95, 0.97, 1.00, 0.75, 0.85, 1.00, 0.70, 0.97},
      Params{0.91, 0.91, 0.91, 1.00, 0.68, 0.74, 1.00, 0.69, 0.98},
      Params{0.97, 1.00, 0.99, 0.95, 0.96, 1.00, 0.98, 0.93, s0},
      Params{1.00, 0.92, 0.96, 0.94, 0.80, 1.00, 0.75, 0.90, 0.95},
  };
  Params best{};
  double best_loss = std::numeric_limits<double>::infinity();
  for (const Params& start : starts) {
    Params x = nelder_mead(target_averages, start, 0.05, 6000);
    x = nelder_mead(target_averages, x, 0.005, 6000);
    const double loss = calibration_loss(x, target_averages);
    if (loss < best_loss) {
      best_loss = loss;
      best = x;
    }
  }
  const Params q = clamp_params(best);
  const CalibrationParams p = CalibrationParams::from_vector(q);
  for (int k = 0; k < 4; ++k) {
    const int oam = oam_of_logical_index(k);
    model.preparation_fidelity[oam] = p.rho[k];
    model.coupling_efficiency[oam] = p.eta[k];
  }
  model.slm_projection_efficiency = p.s;
  return model;
}

double calibrate_uniform_coupling(double target_average, const SourceSpec& source) {
  source.validate();
  if (target_average <= 0.0 || target_average > 1.0) {
    throw std::invalid_argument("calibrate_uniform_coupling: target must be in (0, 1]");
  }
  const double r0 = source.signal_rate_hz();
  const double acc = source.accidental_rate_hz;
  auto average_at = [r0, acc](double eta) {
    // Uniform eta with an ideal permutation gate: every row has one signal
    // cell and (d - 1) accidental-only cells.
    return (r0 * eta + acc) / (r0 * eta + kLogicalDim * acc);
  };
  if (target_average >= average_at(1.0)) return 1.0;
  double lo = 1e-12, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (average_at(mid) < target_average) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oamsim
