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

#include "iontrap/hilbert.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace iontrap {
namespace {

TEST(FockCutoffs, RejectsEmptyModes) {
  EXPECT_THROW(FockCutoffs(0, 3), std::invalid_argument);
  EXPECT_THROW(FockCutoffs(3, 0), std::invalid_argument);
  EXPECT_EQ(FockCutoffs(3, 4).total_dim(), 24u);
}

TEST(FockCutoffs, IndexIsBijection) {
  for (const auto& [nf, nv] : {std::pair{1, 1}, {2, 2}, {3, 5}, {7, 4}, {8, 8}}) {
    const FockCutoffs c(nf, nv);
    std::set<std::size_t> seen;
    for (std::size_t n = 0; n < c.field_dim(); ++n) {
      for (std::size_t m = 0; m < c.vib_dim(); ++m) {
        for (const Qubit q : {Qubit::g, Qubit::e}) {
          const std::size_t idx = c.index(n, m, q);
          ASSERT_LT(idx, c.total_dim());
          EXPECT_TRUE(seen.insert(idx).second);
          const auto l = c.labels(idx);
          EXPECT_EQ(l.n_f, n);
          EXPECT_EQ(l.m_v, m);
          EXPECT_EQ(l.q, q);
        }
      }
    }
    EXPECT_EQ(seen.size(), c.total_dim());
  }
}

TEST(BasisState, FlatteningConvention) {
  const FockCutoffs c(2, 2);
  const PureState e00 = basis_state(c, 0, 0, Qubit::e);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_EQ(e00.amplitudes()[i], Complex(i == 1 ? 1.0 : 0.0));
  const PureState g11 = basis_state(c, 1, 1, Qubit::g);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_EQ(g11.amplitudes()[i], Complex(i == 6 ? 1.0 : 0.0));
}

TEST(BasisState, OutOfRangeIsRejected) {
  const FockCutoffs c(2, 2);
  EXPECT_THROW(basis_state(c, 2, 0, Qubit::g), std::invalid_argument);
  EXPECT_THROW(basis_state(c, 0, 2, Qubit::g), std::invalid_argument);
  EXPECT_THROW(basis_state(c, -1, 0, Qubit::g), std::invalid_argument);
}

TEST(Superpose, EqualWeights) {
  const FockCutoffs c(2, 2);
  const double h = std::sqrt(0.5);
  const PureState s =
      superpose({{h, basis_state(c, 0, 0, Qubit::g)}, {h, basis_state(c, 0, 0, Qubit::e)}});
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(0, 0, Qubit::g) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(0, 0, Qubit::e) - h), 0.0, 1e-15);
}

TEST(Superpose, IdentityAndCancellation) {
  const FockCutoffs c(3, 3);
  std::mt19937_64 rng(7);
  const PureState psi = testing::random_state(c, rng, 3, 3);
  const PureState same = superpose({{1.0, psi}});
  EXPECT_LT((same.amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_THROW(superpose({{1.0, psi}, {-1.0, psi}}), std::invalid_argument);
}

TEST(Superpose, MismatchedCutoffs) {
  EXPECT_THROW(superpose({{1.0, basis_state(FockCutoffs(2, 2), 0, 0, Qubit::g)},
                          {1.0, basis_state(FockCutoffs(2, 3), 0, 0, Qubit::g)}}),
               std::invalid_argument);
}

TEST(InnerProduct, Examples) {
  const FockCutoffs c(2, 2);
  std::mt19937_64 rng(11);
  const PureState psi = testing::random_state(c, rng, 2, 2);
  EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(inner_product(basis_state(c, 0, 0, Qubit::g), basis_state(c, 1, 1, Qubit::g)),
            Complex(0.0));
  const PureState i_psi(c, Complex(0.0, 1.0) * psi.amplitudes());
  EXPECT_NEAR(std::abs(inner_product(psi, i_psi) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_THROW(inner_product(psi, basis_state(FockCutoffs(3, 2), 0, 0, Qubit::g)),
               std::invalid_argument);
}

TEST(InnerProduct, ConjugateSymmetry) {
  const FockCutoffs c(4, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState a = testing::random_state(c, rng, 4, 3);
    const PureState b = testing::random_state(c, rng, 4, 3);
    EXPECT_NEAR(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))), 0.0, 1e-15);
  }
}

TEST(PureState, RejectsUnnormalizedAmplitudes) {
  const FockCutoffs c(2, 2);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v[0] = 1.0 + 1e-9;
  EXPECT_THROW(PureState(c, v), std::invalid_argument);
  EXPECT_THROW(PureState::normalized(c, Eigen::VectorXcd::Zero(8)), std::invalid_argument);
  EXPECT_THROW(PureState(c, Eigen::VectorXcd::Ones(3) / std::sqrt(3.0)), std::invalid_argument);
}

TEST(StateJson, LayoutAndRoundTrip) {
  const FockCutoffs c(2, 2);
  const PureState e00 = basis_state(c, 0, 0, Qubit::e);
  EXPECT_EQ(to_json(e00),
            R"({"amplitudes":[[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],)"
            R"([0.0,0.0],[0.0,0.0]],"field_dim":2,"vib_dim":2})");

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi = testing::random_state(FockCutoffs(3, 4), rng, 3, 4);
    const PureState back = pure_state_from_json(to_json(psi));
    EXPECT_EQ(back.cutoffs(), psi.cutoffs());
    EXPECT_EQ(back.amplitudes(), psi.amplitudes());  // round-trip precision dump
  }
}

TEST(StateJson, RejectsMalformedDocuments) {
  EXPECT_THROW(pure_state_from_json("{"), std::invalid_argument);
  EXPECT_THROW(pure_state_from_json(R"({"field_dim":1,"vib_dim":1,"amplitudes":[[1,0]]})"),
               std::invalid_argument);
  EXPECT_THROW(pure_state_from_json(R"({"field_dim":1,"vib_dim":1,"amplitudes":[[1,0],[0]]})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace iontrap
