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

#include <doctest.h>

#include <numbers>

#include "oamsim/elements.hpp"
#include "oamsim/gates.hpp"
#include "oamsim/rng.hpp"
#include "oracle.hpp"

using namespace oamsim;

namespace {
constexpr double kPi = std::numbers::pi;

Complex amp_at(const PureState& s, Polarization pol, int oam, int path) {
  return s.amplitudes(s.basis.index_of(ModeLabel{pol, oam, path}));
}
}  // namespace

TEST_CASE("spp") {
  const BasisSpec window = BasisSpec::window(1, false);
  SUBCASE("k=+1 shifts |0> to |1>") {
    const auto out = apply(spp(window, +1, 0),
                           basis_state(window, ModeLabel{Polarization::H, 0, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, 1, 0) - 1.0) < kExactTol);
  }
  SUBCASE("k=+1 then k=-1 is the identity on the logical modes") {
    const auto round = compose({spp(window, +1, 0), spp(window, -1, 0)});
    for (int l = -2; l <= 1; ++l) {
      const auto out =
          apply(round, basis_state(window, ModeLabel{Polarization::H, l, 0}));
      CHECK(std::abs(amp_at(out, Polarization::H, l, 0) - 1.0) < kExactTol);
    }
  }
  SUBCASE("k=+2 shifts |-2> to |0>") {
    const auto out = apply(spp(window, +2, 0),
                           basis_state(window, ModeLabel{Polarization::H, -2, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, 0, 0) - 1.0) < kExactTol);
  }
  SUBCASE("zero step is rejected") {
    CHECK_THROWS_AS(spp(window, 0, 0), std::invalid_argument);
  }
  SUBCASE("window too small for the logical modes") {
    const BasisSpec tight = BasisSpec::window(1, false, -2, 1);
    CHECK_THROWS_AS(spp(tight, +2, 0), LeakageError);
    CHECK_THROWS_WITH_AS(spp(tight, +1, 0),
                         doctest::Contains("SPP(+1)"), LeakageError);
  }
  SUBCASE("applying to an edge mode raises leakage") {
    const auto op = spp(window, +1, 0);
    const auto edge = basis_state(window, ModeLabel{Polarization::H, window.oam_max, 0});
    CHECK_THROWS_AS(apply(op, edge), LeakageError);
  }
}

TEST_CASE("dove prism") {
  const BasisSpec window = BasisSpec::window(1, false);
  SUBCASE("alpha = 0 is a pure OAM flip") {
    const auto op = dove_prism(window, 0.0, 0);
    const auto out = apply(op, basis_state(window, ModeLabel{Polarization::H, 2, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, -2, 0) - 1.0) < kExactTol);
  }
  SUBCASE("alpha = 45deg sends |1> to i|-1>") {
    const auto op = dove_prism(window, kPi / 4, 0);
    const auto out = apply(op, basis_state(window, ModeLabel{Polarization::H, 1, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, -1, 0) - Complex(0, 1)) < kExactTol);
  }
  SUBCASE("a prism pair applies e^{i 2 l (a1 - a2)} with no residual flip") {
    const double a1 = 0.31, a2 = 0.87;
    const auto pair = compose({dove_prism(window, a1, 0), dove_prism(window, a2, 0)});
    for (int l = window.oam_min + 1; l <= window.oam_max; ++l) {
      const auto out = apply(pair, basis_state(window, ModeLabel{Polarization::H, l, 0}));
      const Complex expected = std::exp(Complex(0, 2.0 * l * (a1 - a2)));
      CHECK(std::abs(amp_at(out, Polarization::H, l, 0) - expected) < kExactTol);
    }
  }
  SUBCASE("the counter-traversed 45deg prism phases odd modes by pi, even by 2pi") {
    // One prism mounted at 45deg, seen at +45 and -45 by the two loop
    // directions: relative phase e^{i 2 l (pi/2)} = (-1)^l.
    const auto pair =
        compose({dove_prism(window, kPi / 4, 0), dove_prism(window, -kPi / 4, 0)});
    for (int l = window.oam_min + 1; l <= window.oam_max; ++l) {
      const auto out = apply(pair, basis_state(window, ModeLabel{Polarization::H, l, 0}));
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(amp_at(out, Polarization::H, l, 0) - sign) < kExactTol);
    }
  }
}

TEST_CASE("mirror") {
  const BasisSpec window = BasisSpec::window(1, false);
  SUBCASE("l = 0 is a fixed point") {
    const auto out = apply(mirror(window, 0),
                           basis_state(window, ModeLabel{Polarization::H, 0, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, 0, 0) - 1.0) < kExactTol);
  }
  SUBCASE("flips |+2> to |-2>") {
    const auto out = apply(mirror(window, 0),
                           basis_state(window, ModeLabel{Polarization::H, 2, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, -2, 0) - 1.0) < kExactTol);
  }
  SUBCASE("mirror twice is the identity on interior modes") {
    const auto round = compose({mirror(window, 0), mirror(window, 0)});
    for (int l = -5; l <= 5; ++l) {
      const auto out =
          apply(round, basis_state(window, ModeLabel{Polarization::H, l, 0}));
      CHECK(std::abs(amp_at(out, Polarization::H, l, 0) - 1.0) < kExactTol);
    }
  }
}

TEST_CASE("wave plates") {
  const BasisSpec window = BasisSpec::window(1, true);
  const PureState h = basis_state(window, ModeLabel{Polarization::H, 0, 0});
  const PureState v = basis_state(window, ModeLabel{Polarization::V, 0, 0});

  SUBCASE("HWP(0): H fixed, V negated") {
    const auto op = hwp(window, 0.0, 0);
    CHECK(std::abs(amp_at(apply(op, h), Polarization::H, 0, 0) - 1.0) < kExactTol);
    CHECK(std::abs(amp_at(apply(op, v), Polarization::V, 0, 0) + 1.0) < kExactTol);
  }
  SUBCASE("HWP(22.5deg) takes H to diagonal") {
    const auto out = apply(hwp(window, kPi / 8, 0), h);
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(amp_at(out, Polarization::H, 0, 0) - r) < kExactTol);
    CHECK(std::abs(amp_at(out, Polarization::V, 0, 0) - r) < kExactTol);
  }
  SUBCASE("QWP(45deg) makes circular light from H") {
    const auto out = apply(qwp(window, kPi / 4, 0), h);
    CHECK(project(out, h) == doctest::Approx(0.5));
  }
  SUBCASE("HWP is an involution for any angle") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const double theta = rng.next_double() * 2 * kPi;
      const auto round = compose({hwp(window, theta, 0), hwp(window, theta, 0)});
      CHECK((round.matrix - Matrix::Identity(window.dim(), window.dim()))
                .cwiseAbs()
                .maxCoeff() < kExactTol);
    }
  }
}

TEST_CASE("pbs") {
  const BasisSpec window = BasisSpec::window(2, true);
  const auto op = pbs(window, 0, 1);
  SUBCASE("H transmits") {
    const auto out = apply(op, basis_state(window, ModeLabel{Polarization::H, 1, 0}));
    CHECK(std::abs(amp_at(out, Polarization::H, 1, 0) - 1.0) < kExactTol);
  }
  SUBCASE("V reflects to the other port") {
    const auto out = apply(op, basis_state(window, ModeLabel{Polarization::V, 1, 0}));
    CHECK(std::abs(amp_at(out, Polarization::V, 1, 1) - 1.0) < kExactTol);
  }
  SUBCASE("diagonal input splits with unit norm") {
    PureState d{window, Vector::Zero(window.dim())};
    const double r = 1.0 / std::numbers::sqrt2;
    d.amplitudes(window.index_of(ModeLabel{Polarization::H, 0, 0})) = r;
    d.amplitudes(window.index_of(ModeLabel{Polarization::V, 0, 0})) = r;
    const auto out = apply(op, d);
    CHECK(std::abs(amp_at(out, Polarization::H, 0, 0) - r) < kExactTol);
    CHECK(std::abs(amp_at(out, Polarization::V, 0, 1) - r) < kExactTol);
    CHECK(std::abs(out.squared_norm() - 1.0) < kExactTol);
  }
  SUBCASE("routing twice returns every mode") {
    const auto round = compose({op, op});
    CHECK((round.matrix - Matrix::Identity(window.dim(), window.dim()))
              .cwiseAbs()
              .maxCoeff() < kExactTol);
  }
  SUBCASE("missing port is rejected") {
    CHECK_THROWS_AS(pbs(window, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("slm preparation and projection") {
  const BasisSpec window = BasisSpec::window(1, false);
  SUBCASE("amplitudes (1,0,0,0) prepare |-2>") {
    const std::array<Complex, 4> amps{1.0, 0.0, 0.0, 0.0};
    const PureState out = slm_prepare(logical_state(window, amps));
    CHECK(std::abs(amp_at(out, Polarization::H, -2, 0) - 1.0) < kExactTol);
  }
  SUBCASE("amplitudes (0,0,1,0) prepare the Gaussian passthrough |0>") {
    const std::array<Complex, 4> amps{0.0, 0.0, 1.0, 0.0};
    const PureState out = slm_prepare(logical_state(window, amps));
    CHECK(std::abs(amp_at(out, Polarization::H, 0, 0) - 1.0) < kExactTol);
  }
  SUBCASE("projection probabilities match the 4x4 oracle") {
    // X applied to x+(-2, 0), analyzed in x+(0, +1).
    const oracle::Vec4 in = oracle::superposition('x', +1, -2, 0);
    const oracle::Vec4 analyzer = oracle::superposition('x', +1, 0, 1);
    const double expected =
        oracle::overlap_prob(analyzer, oracle::matvec(oracle::x_shift(), in));

    const OpticalOperator x = embed_logical_gate(pauli_x(4), window);
    const PureState state = apply(x, eigenbasis_state(EigenKind::X, +1, -2, 0, window));
    const PureState proj = slm_project(eigenbasis_state(EigenKind::X, +1, 0, 1, window));
    CHECK(project(state, proj) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("unnormalized targets are rejected") {
    PureState bad = basis_state(window, ModeLabel{Polarization::H, 0, 0});
    bad.amplitudes *= 0.5;
    CHECK_THROWS_AS(slm_prepare(bad), std::invalid_argument);
  }
}

TEST_CASE("every element is unitary over random parameter draws") {
  const BasisSpec window = BasisSpec::window(2, true);
  SplitMix64 rng(2026);
  for (int draw = 0; draw < 1000; ++draw) {
    const int kind = static_cast<int>(rng.next() % 7);
    const double angle = rng.next_double() * 2 * kPi;
    const int path = static_cast<int>(rng.next() % 2);
    OpticalOperator op = [&] {
      switch (kind) {
        case 0: {
          int step = 1 + static_cast<int>(rng.next() % 3);
          if (rng.next() % 2 == 0) step = -step;
          return spp(window, step, path);
        }
        case 1: return dove_prism(window, angle, path);
        case 2: return mirror(window, path);
        case 3: return hwp(window, angle, path);
        case 4: return qwp(window, angle, path);
        case 5: return pbs(window, 0, 1);
        default: return phase_shifter(window, angle, path);
      }
    }();
    CHECK(op.lossless);
    CHECK(op.is_unitary_on_support());
  }
}

TEST_CASE("elements on disjoint paths commute") {
  const BasisSpec window = BasisSpec::window(2, true);
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = hwp(window, rng.next_double() * kPi, 0);
    const auto b = dove_prism(window, rng.next_double() * kPi, 1);
    const auto ab = compose({a, b});
    const auto ba = compose({b, a});
    CHECK((ab.matrix - ba.matrix).cwiseAbs().maxCoeff() < kExactTol);
  }
}
