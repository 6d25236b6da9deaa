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

#include "oamsim/gates.hpp"
#include "oracle.hpp"

using namespace oamsim;

TEST_CASE("pauli_x structure") {
  const GateTarget x = pauli_x(4);
  // Cyclic shift: column k feeds row k+1; the last column wraps to the top.
  CHECK(std::abs(x.matrix(0, 3) - 1.0) < kExactTol);
  CHECK(std::abs(x.matrix(1, 0) - 1.0) < kExactTol);
  for (int c = 0; c < 4; ++c) {
    CHECK(x.matrix.col(c).cwiseAbs().sum() == doctest::Approx(1.0));
  }
  // Matches the oracle entry for entry.
  const oracle::Mat4 ox = oracle::x_shift();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(x.matrix(r, c) - ox[r][c]) < kExactTol);
    }
  }
}

TEST_CASE("pauli_z and omega") {
  const GateTarget z = pauli_z(4);
  CHECK(std::abs(root_of_unity(4) - Complex(0, 1)) < kExactTol);
  CHECK(std::abs(z.matrix(2, 2) - Complex(-1, 0)) < kExactTol);  // omega^2 = -1
  CHECK(std::abs(z.matrix(0, 0) - 1.0) < kExactTol);
  CHECK(std::abs(z.matrix(3, 3) - Complex(0, -1)) < kExactTol);
}

TEST_CASE("x_power") {
  SUBCASE("order-d cyclicity: X^4 = I") {
    const GateTarget id = x_power(4, 4);
    CHECK((id.matrix - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < kExactTol);
  }
  SUBCASE("negative powers give the adjoint") {
    const GateTarget xdag = x_power(4, -1);
    CHECK((xdag.matrix - pauli_x(4).matrix.adjoint()).cwiseAbs().maxCoeff() < kExactTol);
  }
}

TEST_CASE("weyl operators") {
  SUBCASE("weyl(4,1,0) = X, weyl(4,0,1) = Z") {
    CHECK((weyl(4, 1, 0).matrix - pauli_x(4).matrix).cwiseAbs().maxCoeff() < kExactTol);
    CHECK((weyl(4, 0, 1).matrix - pauli_z(4).matrix).cwiseAbs().maxCoeff() < kExactTol);
  }
  SUBCASE("weyl(2,1,1) is proportional to sigma_y") {
    const Matrix m = weyl(2, 1, 1).matrix;
    Matrix expected(2, 2);
    expected << 0, -1, 1, 0;  // XZ
    CHECK((m - expected).cwiseAbs().maxCoeff() < kExactTol);
  }
  SUBCASE("Weyl commutation: applying X then Z equals omega times Z then X") {
    // In matrix form Z X = omega X Z for X|k> = |k+1> and Z|k> = omega^k |k>.
    for (int d = 2; d <= 6; ++d) {
      const Matrix x_then_z = pauli_z(d).matrix * pauli_x(d).matrix;
      const Matrix z_then_x = pauli_x(d).matrix * pauli_z(d).matrix;
      CHECK((x_then_z - root_of_unity(d) * z_then_x).cwiseAbs().maxCoeff() < kExactTol);
    }
  }
  SUBCASE("Z^d = I and X^d = I") {
    for (int d = 2; d <= 6; ++d) {
      Matrix zp = Matrix::Identity(d, d);
      for (int i = 0; i < d; ++i) zp = pauli_z(d).matrix * zp;
      CHECK((zp - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < kExactTol);
      CHECK((x_power(d, d).matrix - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <
            kExactTol);
    }
  }
}

TEST_CASE("controlled_target") {
  SUBCASE("controlled identity is the identity") {
    GateTarget id{"I", 4, Matrix::Identity(4, 4)};
    CHECK((controlled_target(id).matrix - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <
          kExactTol);
  }
  SUBCASE("H block acts, V block idles") {
    const GateTarget cx = controlled_target(pauli_x(4));
    // (|H>, |0>): logical index 2 in the H block.
    Vector in = Vector::Zero(8);
    in(2) = 1.0;
    Vector out = cx.matrix * in;
    CHECK(std::abs(out(3) - 1.0) < kExactTol);  // |H>|1>
    for (int k = 0; k < 4; ++k) {
      Vector vin = Vector::Zero(8);
      vin(4 + k) = 1.0;
      Vector vout = cx.matrix * vin;
      CHECK(std::abs(vout(4 + k) - 1.0) < kExactTol);  // V untouched
    }
  }
  SUBCASE("unitary with blocks exactly U and I") {
    const GateTarget cx2 = controlled_target(x_power(4, 2));
    CHECK((cx2.matrix.adjoint() * cx2.matrix - Matrix::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() < kExactTol);
    CHECK((cx2.matrix.topLeftCorner(4, 4) - x_power(4, 2).matrix).cwiseAbs().maxCoeff() <
          kExactTol);
    CHECK((cx2.matrix.bottomRightCorner(4, 4) - Matrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < kExactTol);
    CHECK((cx2.matrix.topRightCorner(4, 4)).cwiseAbs().maxCoeff() < kExactTol);
    CHECK((cx2.matrix.bottomLeftCorner(4, 4)).cwiseAbs().maxCoeff() < kExactTol);
  }
  SUBCASE("non-unitary targets are rejected") {
    GateTarget bad{"bad", 4, Matrix::Zero(4, 4)};
    CHECK_THROWS_AS(controlled_target(bad), std::invalid_argument);
  }
}

TEST_CASE("measurement bases") {
  SUBCASE("B2 contents") {
    const auto b2 = measurement_basis(2);
    REQUIRE(b2.size() == 4);
    CHECK(b2[0].label == "x+(-2;-1)");
    CHECK(b2[1].label == "x-(-2;-1)");
    CHECK(b2[2].label == "x+(0;1)");
    CHECK(b2[3].label == "x-(0;1)");
  }
  SUBCASE("B7 contains y-(-1;0) = (|-1> - i|0>)/sqrt(2)") {
    const auto b7 = measurement_basis(7);
    const auto& state = b7[3];
    CHECK(state.label == "y-(-1;0)");
    const BasisSpec basis = BasisSpec::logical();
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(state.state.amplitudes(
                       basis.index_of(ModeLabel{Polarization::H, -1, 0})) -
                   r) < kExactTol);
    CHECK(std::abs(state.state.amplitudes(
                       basis.index_of(ModeLabel{Polarization::H, 0, 0})) -
                   Complex(0, -r)) < kExactTol);
  }
  SUBCASE("every basis is orthonormal") {
    for (int n = 1; n <= 7; ++n) {
      const auto states = measurement_basis(n);
      for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = 0; b < states.size(); ++b) {
          const Complex gram =
              states[a].state.amplitudes.dot(states[b].state.amplitudes);
          const Complex expected = (a == b) ? 1.0 : 0.0;
          CHECK(std::abs(gram - expected) < kExactTol);
        }
      }
    }
  }
  SUBCASE("bases match the oracle state by state") {
    for (int n = 1; n <= 7; ++n) {
      const auto states = measurement_basis(n);
      const auto expected = oracle::basis_states(n);
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
          CHECK(std::abs(states[i].state.amplitudes(k) - expected[i][k]) < kExactTol);
        }
      }
    }
  }
  SUBCASE("out-of-window OAM is rejected") {
    CHECK_THROWS_AS(eigenbasis_state(EigenKind::X, +1, -2, 2), std::invalid_argument);
    CHECK_THROWS_AS(eigenbasis_state(EigenKind::X, +1, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("conversion tables") {
  const BasisSpec basis = BasisSpec::logical();
  const auto b1 = measurement_basis(1, basis);

  SUBCASE("ideal X over the computational basis is the shift permutation") {
    const auto table =
        conversion_from_operator(embed_logical_gate(pauli_x(4), basis), b1, b1);
    table.validate();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double expected = (j == (i + 1) % 4) ? 1.0 : 0.0;
        CHECK(table.probabilities(i, j) == doctest::Approx(expected));
      }
    }
  }
  SUBCASE("counts row (90, 5, 3, 2) normalizes to (0.9, 0.05, 0.03, 0.02)") {
    Eigen::MatrixXd counts(1, 4);
    counts << 90, 5, 3, 2;
    const auto table =
        conversion_from_counts(counts, {"in"}, {"a", "b", "c", "d"});
    CHECK(table.probabilities(0, 0) == doctest::Approx(0.90));
    CHECK(table.probabilities(0, 1) == doctest::Approx(0.05));
    CHECK(table.probabilities(0, 2) == doctest::Approx(0.03));
    CHECK(table.probabilities(0, 3) == doctest::Approx(0.02));
  }
  SUBCASE("all-zero count rows are rejected") {
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(1, 4);
    CHECK_THROWS_AS(conversion_from_counts(counts, {"in"}, {"a", "b", "c", "d"}),
                    std::invalid_argument);
  }
  SUBCASE("B2 in / B2 out matches the brute-force oracle on all 16 pairs") {
    const auto b2 = measurement_basis(2, basis);
    const auto table =
        conversion_from_operator(embed_logical_gate(pauli_x(4), basis), b2, b2);
    const auto oracle_states = oracle::basis_states(2);
    const oracle::Mat4 ox = oracle::x_shift();
    for (int i = 0; i < 4; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < 4; ++j) {
        row_sum += oracle::overlap_prob(oracle_states[j],
                                        oracle::matvec(ox, oracle_states[i]));
      }
      for (int j = 0; j < 4; ++j) {
        const double expected = oracle::overlap_prob(
                                    oracle_states[j],
                                    oracle::matvec(ox, oracle_states[i])) /
                                row_sum;
        CHECK(std::abs(table.probabilities(i, j) - expected) < kExactTol);
      }
    }
  }
  SUBCASE("rows sum to one before renormalization when analyzers span the image") {
    for (int n = 2; n <= 7; ++n) {
      const auto inputs = measurement_basis(n, basis);
      const OpticalOperator x = embed_logical_gate(pauli_x(4), basis);
      for (const auto& in : inputs) {
        const PureState out = apply(x, in.state);
        double total = 0.0;
        for (const auto& analyzer : measurement_basis(1, basis)) {
          total += project(out, analyzer.state);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("summarize_efficiency") {
  SUBCASE("ideal permutation table gives 1") {
    const BasisSpec basis = BasisSpec::logical();
    const auto b1 = measurement_basis(1, basis);
    const auto table =
        conversion_from_operator(embed_logical_gate(pauli_x(4), basis), b1, b1);
    CHECK(summarize_efficiency(table, {1, 2, 3, 0}) == doctest::Approx(1.0));
  }
  SUBCASE("reference efficiency rows reproduce the reported averages") {
    auto row_table = [](std::initializer_list<double> values) {
      Eigen::MatrixXd p(4, 4);
      p.setZero();
      int i = 0;
      for (double v : values) {
        p(i, i) = v;
        p(i, (i + 1) % 4) = 1.0 - v;  // placeholder off-mode mass
        ++i;
      }
      return ConversionTable{{"a", "b", "c", "d"}, {"a", "b", "c", "d"}, p};
    };
    const auto x_row = row_table({0.9150, 0.9316, 0.9219, 0.9776});
    CHECK(summarize_efficiency(x_row, {0, 1, 2, 3}) == doctest::Approx(0.936525));
    CHECK(std::abs(summarize_efficiency(x_row, {0, 1, 2, 3}) - 0.9366) <= 5e-4);

    const auto x2_row = row_table({0.9085, 0.9556, 0.9268, 0.9480});
    CHECK(summarize_efficiency(x2_row, {0, 1, 2, 3}) == doctest::Approx(0.934725));
    CHECK(std::abs(summarize_efficiency(x2_row, {0, 1, 2, 3}) - 0.9347) <= 5e-4);

    const auto xdag_row = row_table({0.9279, 0.9207, 0.9562, 0.9106});
    CHECK(summarize_efficiency(xdag_row, {0, 1, 2, 3}) == doctest::Approx(0.92885));
    CHECK(std::abs(summarize_efficiency(xdag_row, {0, 1, 2, 3}) - 0.9289) <= 5e-4);
  }
}
