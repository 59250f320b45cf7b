// Copyright 2026 The iontrap-bell Authors
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

#include "iontrap/operators.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace iontrap {
namespace {

SystemParams test_params(double eta = 0.1, double g = 10.0) {
  SystemParams p;
  p.nu = 500.0;
  p.omega0 = 1e4;
  p.omega = p.omega0 - p.nu;
  p.g = g;
  p.eta = eta;
  return p;
}

Eigen::VectorXcd basis(const FockCutoffs& c, std::size_t n, std::size_t m, Qubit q) {
  return basis_state(c, static_cast<long>(n), static_cast<long>(m), q).amplitudes();
}

std::size_t idx(const FockCutoffs& c, std::size_t n, std::size_t m, Qubit q) {
  return c.index(n, m, q);
}

TEST(SystemParams, Validation) {
  EXPECT_NO_THROW(test_params().validate());
  EXPECT_NO_THROW(test_params(0.1, 0.0).validate());
  SystemParams p = test_params();
  p.eta = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = test_params();
  p.nu = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = test_params();
  p.g = std::nan("");
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_DOUBLE_EQ(test_params().detuning(), 500.0);
}

TEST(Ladder, VibAnnihilatorLowersPhonon) {
  const FockCutoffs c(3, 3);
  const Eigen::VectorXcd out = vib_annihilator(c).apply(basis_state(c, 0, 1, Qubit::g));
  EXPECT_LT((out - basis(c, 0, 0, Qubit::g)).norm(), 1e-15);
}

TEST(Ladder, FieldAnnihilatorKillsVacuum) {
  const FockCutoffs c(3, 4);
  for (std::size_t m = 0; m < 4; ++m) {
    for (const Qubit q : {Qubit::g, Qubit::e}) {
      EXPECT_EQ(field_annihilator(c).apply(basis_state(c, 0, static_cast<long>(m), q)).norm(), 0.0);
    }
  }
}

TEST(Ladder, MatrixElementsAndIdentityOnOtherFactors) {
  const FockCutoffs c(4, 5);
  const OperatorMatrix a = vib_annihilator(c);
  const OperatorMatrix b = field_annihilator(c);
  for (std::size_t col = 0; col < c.total_dim(); ++col) {
    const auto l = c.labels(col);
    for (std::size_t row = 0; row < c.total_dim(); ++row) {
      const auto r = c.labels(row);
      const double expect_a = (r.n_f == l.n_f && r.q == l.q && r.m_v + 1 == l.m_v)
                                  ? std::sqrt(static_cast<double>(l.m_v))
                                  : 0.0;
      const double expect_b = (r.m_v == l.m_v && r.q == l.q && r.n_f + 1 == l.n_f)
                                  ? std::sqrt(static_cast<double>(l.n_f))
                                  : 0.0;
      EXPECT_NEAR(std::abs(a.element(row, col) - expect_a), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(b.element(row, col) - expect_b), 0.0, 1e-15);
    }
  }
}

TEST(Pauli, RaisingAndLowering) {
  const FockCutoffs c(3, 3);
  const OperatorMatrix sp = pauli(c, PauliKind::plus);
  EXPECT_LT((sp.apply(basis_state(c, 1, 2, Qubit::g)) - basis(c, 1, 2, Qubit::e)).norm(), 1e-15);
  EXPECT_EQ(sp.apply(basis_state(c, 1, 2, Qubit::e)).norm(), 0.0);
  const OperatorMatrix sm = pauli(c, PauliKind::minus);
  EXPECT_LT((sm.apply(basis_state(c, 2, 0, Qubit::e)) - basis(c, 2, 0, Qubit::g)).norm(), 1e-15);
  const OperatorMatrix sz = pauli(c, PauliKind::z);
  EXPECT_EQ(sz.element(idx(c, 0, 0, Qubit::e), idx(c, 0, 0, Qubit::e)), Complex(1.0));
  EXPECT_EQ(sz.element(idx(c, 0, 0, Qubit::g), idx(c, 0, 0, Qubit::g)), Complex(-1.0));
  const OperatorMatrix pe = excited_projector(c);
  EXPECT_LT((pe.entries() - 0.5 * (sz + OperatorMatrix::identity(c)).entries()).norm(), 1e-15);
}

TEST(OperatorSine, ZeroAndDiagonal) {
  const FockCutoffs c(1, 1);
  EXPECT_EQ(operator_sine(OperatorMatrix::zero(c)).max_abs(), 0.0);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = std::numbers::pi / 2;
  const OperatorMatrix s = operator_sine(OperatorMatrix(c, d));
  EXPECT_NEAR(std::abs(s.element(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.element(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.element(0, 1)), 0.0, 1e-15);
}

TEST(OperatorSine, MatchesTaylorOracle) {
  const FockCutoffs c(1, 12);
  const OperatorMatrix a = vib_annihilator(c);
  const OperatorMatrix x = Complex(0.1) * (a + a.adjoint());
  const OperatorMatrix s = operator_sine(x);
  const Eigen::MatrixXcd oracle = testing::taylor_sine(x.entries(), 15);
  EXPECT_LE((s.entries() - oracle).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_TRUE(s.is_hermitian());
}

TEST(OperatorSine, RejectsNonHermitian) {
  const FockCutoffs c(2, 2);
  EXPECT_THROW(operator_sine(vib_annihilator(c)), std::invalid_argument);
}

TEST(FreeHamiltonian, DiagonalEntries) {
  const FockCutoffs c(3, 3);
  const SystemParams p = test_params();
  const OperatorMatrix h0 = free_hamiltonian(p, c);
  EXPECT_DOUBLE_EQ(h0.element(idx(c, 0, 0, Qubit::g), idx(c, 0, 0, Qubit::g)).real(),
                   -p.omega0 / 2);
  EXPECT_DOUBLE_EQ(h0.element(idx(c, 1, 1, Qubit::e), idx(c, 1, 1, Qubit::e)).real(),
                   p.omega + p.nu + p.omega0 / 2);
  EXPECT_LT((h0.entries() - Eigen::MatrixXcd(h0.entries().diagonal().asDiagonal())).norm(), 1e-300);
}

TEST(FullHamiltonian, FreeLimitIsDiagonal) {
  const FockCutoffs c(4, 5);
  const SystemParams p = test_params(0.1, 0.0);
  const OperatorMatrix h = full_hamiltonian(p, c);
  for (std::size_t i = 0; i < c.total_dim(); ++i) {
    const auto l = c.labels(i);
    for (std::size_t j = 0; j < c.total_dim(); ++j) {
      const double expect =
          i == j ? p.nu * l.m_v + p.omega * l.n_f + (l.q == Qubit::e ? 0.5 : -0.5) * p.omega0
                 : 0.0;
      EXPECT_EQ(h.element(i, j), Complex(expect));
    }
  }
  EXPECT_EQ(h.entries(), lamb_dicke_hamiltonian(p, c).entries());
}

TEST(FullHamiltonian, SidebandElementFromSine) {
  const FockCutoffs c(4, 10);
  const SystemParams p = test_params(0.05, 20.0);
  const OperatorMatrix h = full_hamiltonian(p, c);
  // Oracle: g <1|sin(eta (a + a'))|0> from a Taylor series on the bare mode.
  const Eigen::MatrixXcd a = vib_annihilator(FockCutoffs(1, 10)).entries();
  const Eigen::MatrixXcd sine = testing::taylor_sine(p.eta * (a + a.adjoint()), 20);
  const Complex expect = p.g * sine(2, 0);  // vib level 1 <- 0 (qubit g)
  const Complex got = h.element(idx(c, 0, 0, Qubit::e), idx(c, 1, 1, Qubit::g));
  EXPECT_NEAR(std::abs(got - expect), 0.0, 1e-12);
  // First order in eta: eta g, with a relative correction of order eta^2.
  EXPECT_NEAR(got.real(), p.eta_g(), p.eta_g() * p.eta * p.eta);
}

TEST(FullHamiltonian, GroundVacuumExpectation) {
  const FockCutoffs c(3, 6);
  const SystemParams p = test_params();
  const OperatorMatrix h = full_hamiltonian(p, c);
  const Eigen::VectorXcd v = basis(c, 0, 0, Qubit::g);
  EXPECT_NEAR(v.dot(h.entries() * v).real(), -p.omega0 / 2, 1e-12);
}

TEST(FullHamiltonian, InteractionIsQubitOffDiagonal) {
  const FockCutoffs c(3, 4);
  const SystemParams p = test_params();
  const OperatorMatrix v = full_hamiltonian(p, c) - free_hamiltonian(p, c);
  for (std::size_t i = 0; i < c.total_dim(); ++i) {
    for (std::size_t j = 0; j < c.total_dim(); ++j) {
      if (c.labels(i).q == c.labels(j).q) EXPECT_EQ(v.element(i, j), Complex(0.0));
    }
  }
}

TEST(Hamiltonians, AreHermitian) {
  const FockCutoffs c(5, 6);
  const SystemParams p = test_params(0.3, 4.0);
  for (const OperatorMatrix& h :
       {free_hamiltonian(p, c), full_hamiltonian(p, c), lamb_dicke_hamiltonian(p, c),
        red_rwa_hamiltonian(p, c), blue_rwa_hamiltonian(p, c)}) {
    EXPECT_LE(h.hermiticity_defect(), 1e-12 * h.max_abs());
  }
}

TEST(LambDicke, SidebandElementIsEtaG) {
  const FockCutoffs c(3, 3);
  const SystemParams p = test_params();
  const OperatorMatrix v = lamb_dicke_hamiltonian(p, c) - free_hamiltonian(p, c);
  EXPECT_DOUBLE_EQ(v.element(idx(c, 0, 0, Qubit::e), idx(c, 1, 1, Qubit::g)).real(), p.eta_g());
}

TEST(LambDicke, DifferenceFromFullScalesAsEtaCubed) {
  const FockCutoffs c(3, 8);
  std::vector<double> diffs;
  const std::vector<double> etas = {0.2, 0.1, 0.05};
  for (const double eta : etas) {
    const SystemParams p = test_params(eta, 10.0);
    diffs.push_back((full_hamiltonian(p, c) - lamb_dicke_hamiltonian(p, c)).max_abs());
  }
  for (std::size_t i = 1; i < etas.size(); ++i) {
    const double order = std::log(diffs[i - 1] / diffs[i]) / std::log(etas[i - 1] / etas[i]);
    EXPECT_NEAR(order, 3.0, 0.2);
  }
}

TEST(RwaHamiltonians, SidebandElements) {
  const FockCutoffs c(4, 4);
  const SystemParams p = test_params();
  const OperatorMatrix red = red_rwa_hamiltonian(p, c);
  EXPECT_NEAR(red.element(idx(c, 1, 1, Qubit::g), idx(c, 0, 0, Qubit::e)).real(), p.eta_g(), 1e-15);
  EXPECT_NEAR(red.element(idx(c, 2, 2, Qubit::g), idx(c, 1, 1, Qubit::e)).real(), 2 * p.eta_g(),
              1e-14);
  const OperatorMatrix blue = blue_rwa_hamiltonian(p, c);
  EXPECT_NEAR(blue.element(idx(c, 1, 0, Qubit::g), idx(c, 0, 1, Qubit::e)).real(), p.eta_g(),
              1e-15);
}

TEST(RwaHamiltonians, MatchSelectionRuleOracle) {
  const FockCutoffs c(5, 4);
  const SystemParams p = test_params(0.07, 3.0);
  EXPECT_LE((red_rwa_hamiltonian(p, c).entries() - testing::brute_force_red(c, p.eta_g()))
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
  EXPECT_LE((blue_rwa_hamiltonian(p, c).entries() - testing::brute_force_blue(c, p.eta_g()))
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
}

TEST(RwaHamiltonians, SelectionRules) {
  const FockCutoffs c(4, 4);
  const SystemParams p = test_params();
  const OperatorMatrix red = red_rwa_hamiltonian(p, c);
  const OperatorMatrix blue = blue_rwa_hamiltonian(p, c);
  for (std::size_t i = 0; i < c.total_dim(); ++i) {
    for (std::size_t j = 0; j < c.total_dim(); ++j) {
      const auto to = c.labels(i);
      const auto from = c.labels(j);
      const long dn = static_cast<long>(to.n_f) - static_cast<long>(from.n_f);
      const long dm = static_cast<long>(to.m_v) - static_cast<long>(from.m_v);
      const long dq = static_cast<long>(to.q) - static_cast<long>(from.q);
      const bool red_allowed = (dn == 1 && dm == 1 && dq == -1) || (dn == -1 && dm == -1 && dq == 1);
      const bool blue_allowed = (dn == 1 && dm == -1 && dq == -1) || (dn == -1 && dm == 1 && dq == 1);
      if (!red_allowed) EXPECT_EQ(red.element(i, j), Complex(0.0)) << i << "," << j;
      if (!blue_allowed) EXPECT_EQ(blue.element(i, j), Complex(0.0)) << i << "," << j;
    }
  }
}

TEST(RwaHamiltonians, FourPairingsRebuildLambDickeInteraction) {
  const FockCutoffs c(5, 5);
  const SystemParams p = test_params(0.1, 7.0);
  const OperatorMatrix a = vib_annihilator(c);
  const OperatorMatrix b = field_annihilator(c);
  const OperatorMatrix sm = pauli(c, PauliKind::minus);
  // Counter-rotating pairings dropped by both sidebands.
  const OperatorMatrix dropped_1 = sm * a * b;
  const OperatorMatrix dropped_2 = sm * a.adjoint() * b;
  const OperatorMatrix counter =
      Complex(p.eta_g()) * (dropped_1 + dropped_1.adjoint() + dropped_2 + dropped_2.adjoint());
  const OperatorMatrix rebuilt = red_rwa_hamiltonian(p, c) + blue_rwa_hamiltonian(p, c) + counter;
  const OperatorMatrix interaction = lamb_dicke_hamiltonian(p, c) - free_hamiltonian(p, c);
  EXPECT_LE((rebuilt - interaction).max_abs(), 1e-12);
}

}  // namespace
}  // namespace iontrap
