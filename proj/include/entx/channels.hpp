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

#ifndef ENTX_CHANNELS_HPP
#define ENTX_CHANNELS_HPP

// Collective phase damping: every targeted qubit receives the same random
// rotation Z(theta) = exp(-i theta Z / 2), with theta either uniform on the
// circle (continuous form) or uniform over N equally spaced phases (discrete
// form, as realized by a stepped retarder).

#include <variant>

#include "entx/qdm.hpp"

namespace entx {

struct ContinuousPhase {};
struct DiscretePhase {
  int steps = 8;
};

struct PhaseChannelSpec {
  ModeList targets;
  std::variant<ContinuousPhase, DiscretePhase> form = ContinuousPhase{};
  double phase_offset = 0.0;  // radians, discrete form only
};

// Throws ModeError for empty/duplicate targets, DomainError for steps < 1.
void validate(const PhaseChannelSpec& spec);

// diag(exp(-i theta/2), exp(+i theta/2)).
CMatrix z_rotation_matrix(double theta);

// Single-unitary Kraus set acting on `mode`.
KrausSet z_rotation(double theta, int mode = 1);

// (#H - #V) over `modes` for computational basis index `index`.
int collective_weight(Eigen::Index index, int num_modes, const ModeList& modes);

// Exact theta-average: keeps element (r, c) iff the collective weights of r
// and c agree on `modes`, zeroes it otherwise.
DensityOp cpc_continuous(const DensityOp& rho, const ModeList& modes);

// (1/N) sum_n U(theta_n) rho U(theta_n)^dag with theta_n = offset + 2 pi n / N
// and U(theta) the product of Z(theta) over `modes`.
DensityOp cpc_discrete(const DensityOp& rho, const ModeList& modes, int steps,
                       double offset = 0.0);

DensityOp apply_phase_channel(const DensityOp& rho, const PhaseChannelSpec& spec);

}  // namespace entx

#endif  // ENTX_CHANNELS_HPP
