// Copyright 2026 The entx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "entx/channels.hpp"
#include "entx/errors.hpp"
#include "support/oracles.hpp"

namespace entx {
namespace {

using testing::C;
using testing::kPi;
using testing::ketbra;
using testing::max_abs_diff;

DensityOp bell_pair() { return tensor(bell_state(Bell::PhiPlus), bell_state(Bell::PhiPlus)); }

CMatrix dephased_four_photon() {
  return (ketbra("HHHH", "HHHH") + ketbra("HHVV", "HHVV") + ketbra("HHVV", "VVHH") +
          ketbra("VVHH", "HHVV") + ketbra("VVHH", "VVHH") + ketbra("VVVV", "VVVV")) /
         4.0;
}

std::vector<double> grid(int steps, double offset) {
  std::vector<double> t;
  for (int n = 0; n < steps; ++n) t.push_back(offset + 2 * kPi * n / steps);
  return t;
}

TEST(ZRotation, ZeroIsIdentity) {
  EXPECT_LT(max_abs_diff(z_rotation_matrix(0.0), CMatrix::Identity(2, 2)), 1e-15);
}

TEST(ZRotation, PiIsMinusIZ) {
  const CMatrix z = z_rotation_matrix(kPi);
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = C(0, -1);
  expect(1, 1) = C(0, 1);
  EXPECT_LT(max_abs_diff(z, expect), 1e-15);
  std::mt19937_64 rng(1);
  const DensityOp rho = testing::random_density(1, rng);
  const DensityOp a = apply_channel(rho, z_rotation(kPi));
  const DensityOp b = apply_channel(rho, KrausSet({1}, {pauli_z()}, true));
  EXPECT_LT(max_abs_diff(a.matrix(), b.matrix()), 1e-14);
}

TEST(ZRotation, QuarterTurnOnPlus) {
  const DensityOp out = apply_channel(basis_state("+"), z_rotation(kPi / 2));
  const CVector plus = basis_pure("+").amplitudes();
  EXPECT_NEAR(plus.dot(out.matrix() * plus).real(), 0.5, 1e-14);
}

TEST(ZRotation, TargetsRequestedMode) {
  const DensityOp rho = basis_state("++");
  const DensityOp out = apply_channel(rho, z_rotation(kPi, 2));
  EXPECT_LT(max_abs_diff(out.matrix(), basis_state("+-").matrix()), 1e-14);
  EXPECT_THROW(z_rotation(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(CpcContinuous, DephasedFourPhotonState) {
  const DensityOp out = cpc_continuous(bell_pair(), {2, 4});
  EXPECT_LT(max_abs_diff(out.matrix(), dephased_four_photon()), 1e-12);
}

TEST(CpcContinuous, DiagonalInputUnchanged) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CMatrix d = CMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) d(i, i) = u(rng);
  d /= d.trace();
  const DensityOp rho = DensityOp::from_matrix(d);
  EXPECT_LT(max_abs_diff(cpc_continuous(rho, {1, 2, 3}).matrix(), d), 1e-15);
}

TEST(CpcContinuous, SingleModeKillsBellCoherence) {
  const DensityOp out = cpc_continuous(bell_state(Bell::PhiPlus), {2});
  EXPECT_LT(max_abs_diff(out.matrix(), (ketbra("HH", "HH") + ketbra("VV", "VV")) / 2.0), 1e-12);
}

TEST(CpcContinuous, InvalidModes) {
  EXPECT_THROW(cpc_continuous(bell_pair(), {5}), ModeError);
  EXPECT_THROW(cpc_continuous(bell_pair(), {2, 2}), ModeError);
  EXPECT_THROW(cpc_continuous(bell_pair(), {}), ModeError);
}

TEST(CpcContinuous, MatchesMaskOracleAndIsIdempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityOp rho = testing::random_density(4, rng, 1 + trial % 16);
    const ModeList modes = trial % 3 == 0 ? ModeList{2, 4} : trial % 3 == 1 ? ModeList{1, 3, 4}
                                                                             : ModeList{3};
    const DensityOp once = cpc_continuous(rho, modes);
    EXPECT_LT(max_abs_diff(once.matrix(), testing::phase_mask(rho.matrix(), 4, modes)), 1e-15);
    EXPECT_LT(max_abs_diff(cpc_continuous(once, modes).matrix(), once.matrix()), 1e-15);
    EXPECT_NEAR(once.trace(), 1.0, 1e-10);
    EXPECT_GE(once.min_eigenvalue(), -1e-9);
  }
}

TEST(CpcDiscrete, SingleStepWithoutOffsetIsIdentity) {
  std::mt19937_64 rng(4);
  const DensityOp rho = testing::random_density(4, rng);
  EXPECT_LT(max_abs_diff(cpc_discrete(rho, {2, 4}, 1).matrix(), rho.matrix()), 1e-14);
}

TEST(CpcDiscrete, TwoStepsKeepOuterCoherence) {
  const DensityOp rho = bell_pair();
  const DensityOp two = cpc_discrete(rho, {2, 4}, 2);
  const auto hhhh = static_cast<Eigen::Index>(testing::index_of("HHHH"));
  const auto vvvv = static_cast<Eigen::Index>(testing::index_of("VVVV"));
  EXPECT_NEAR(std::abs(two(hhhh, vvvv)), 0.25, 1e-12);
  EXPECT_GT(max_abs_diff(two.matrix(), cpc_continuous(rho, {2, 4}).matrix()), 0.2);
  const CMatrix oracle = testing::phase_average(rho.matrix(), 4, {2, 4}, grid(2, 0.0));
  EXPECT_LT(max_abs_diff(two.matrix(), oracle), 1e-12);
  EXPECT_LT(max_abs_diff(cpc_discrete(rho, {2, 4}, 4).matrix(), dephased_four_photon()), 1e-12);
}

TEST(CpcDiscrete, EqualsContinuousForEnoughSteps) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> off(-kPi, kPi);
  for (int steps : {4, 5, 6, 7, 8, 16}) {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityOp rho = testing::random_density(4, rng, 1 + trial % 16);
      const ModeList modes = trial % 2 ? ModeList{2, 4} : ModeList{1, 3};
      const double offset = trial < 5 ? 0.0 : off(rng);
      const DensityOp d = cpc_discrete(rho, modes, steps, offset);
      EXPECT_LT(max_abs_diff(d.matrix(), cpc_continuous(rho, modes).matrix()), 1e-10)
          << "steps=" << steps;
      EXPECT_LT(max_abs_diff(d.matrix(),
                             testing::phase_average(rho.matrix(), 4, modes, grid(steps, offset))),
                1e-12);
    }
  }
}

TEST(CpcDiscrete, ThreeStepsMatchPhaseAverageOracle) {
  std::mt19937_64 rng(6);
  const DensityOp rho = testing::random_density(3, rng);
  const DensityOp d = cpc_discrete(rho, {1, 2, 3}, 3, 0.4);
  EXPECT_LT(max_abs_diff(d.matrix(), testing::phase_average(rho.matrix(), 3, {1, 2, 3},
                                                            grid(3, 0.4))),
            1e-12);
  EXPECT_NEAR(d.trace(), 1.0, 1e-10);
  EXPECT_GE(d.min_eigenvalue(), -1e-9);
}

TEST(PhaseChannelSpec, Validation) {
  EXPECT_THROW(validate(PhaseChannelSpec{{}, ContinuousPhase{}, 0.0}), ModeError);
  EXPECT_THROW(validate(PhaseChannelSpec{{2, 2}, ContinuousPhase{}, 0.0}), ModeError);
  EXPECT_THROW(validate(PhaseChannelSpec{{2, 4}, DiscretePhase{0}, 0.0}), DomainError);
  EXPECT_NO_THROW(validate(PhaseChannelSpec{{2, 4}, DiscretePhase{8}, 0.0}));
  const DensityOp rho = bell_pair();
  const DensityOp a = apply_phase_channel(rho, PhaseChannelSpec{{2, 4}, DiscretePhase{8}, 0.3});
  const DensityOp b = apply_phase_channel(rho, PhaseChannelSpec{{2, 4}, ContinuousPhase{}, 0.0});
  EXPECT_LT(max_abs_diff(a.matrix(), b.matrix()), 1e-12);
}

TEST(NonLocalCancellation, PhaseOnEitherHalfOfBell) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4 * kPi, 4 * kPi);
  const CVector phi = testing::phi_plus_vector();
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = u(rng);
    const CMatrix z = z_rotation_matrix(theta);
    const CMatrix id = CMatrix::Identity(2, 2);
    const CVector left = testing::naive_kron(id, z) * phi;
    const CVector right = testing::naive_kron(z, id) * phi;
    EXPECT_LT(max_abs_diff(left, right), 1e-12);
  }
}

TEST(CollectiveWeight, CountsHMinusV) {
  EXPECT_EQ(collective_weight(0, 4, {2, 4}), 2);
  EXPECT_EQ(collective_weight(static_cast<Eigen::Index>(testing::index_of("HHVV")), 4, {2, 4}), 0);
  EXPECT_EQ(collective_weight(15, 4, {1, 2, 3, 4}), -4);
}

}  // namespace
}  // namespace entx
