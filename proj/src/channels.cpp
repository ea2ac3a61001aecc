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

#include "entx/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "entx/errors.hpp"

namespace entx {

void validate(const PhaseChannelSpec& spec) {
  if (spec.targets.empty()) throw ModeError("phase channel needs at least one target mode");
  for (int m : spec.targets) {
    if (m < 1) throw ModeError("mode numbers start at 1");
  }
  check_modes(spec.targets, *std::max_element(spec.targets.begin(), spec.targets.end()));
  if (const auto* d = std::get_if<DiscretePhase>(&spec.form); d && d->steps < 1) {
    throw DomainError("discrete phase channel needs at least one step");
  }
  if (!std::isfinite(spec.phase_offset)) throw DomainError("phase offset must be finite");
}

CMatrix z_rotation_matrix(double theta) {
  if (!std::isfinite(theta)) throw DomainError("rotation angle must be finite");
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, -theta / 2.0);
  u(1, 1) = std::polar(1.0, theta / 2.0);
  return u;
}

KrausSet z_rotation(double theta, int mode) {
  return KrausSet({mode}, {z_rotation_matrix(theta)}, true);
}

int collective_weight(Eigen::Index index, int num_modes, const ModeList& modes) {
  int k = 0;
  for (int m : modes) {
    const bool vertical = (index >> (num_modes - m)) & 1;
    k += vertical ? -1 : 1;
  }
  return k;
}

DensityOp cpc_continuous(const DensityOp& rho, const ModeList& modes) {
  if (modes.empty()) throw ModeError("phase channel needs at least one target mode");
  check_modes(modes, rho.num_modes());
  const Eigen::Index dim = rho.dim();
  std::vector<int> weight(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    weight[static_cast<std::size_t>(i)] = collective_weight(i, rho.num_modes(), modes);
  }
  CMatrix out = rho.matrix();
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (weight[static_cast<std::size_t>(r)] != weight[static_cast<std::size_t>(c)]) {
        out(r, c) = 0.0;
      }
    }
  }
  return DensityOp::from_matrix(std::move(out));
}

DensityOp cpc_discrete(const DensityOp& rho, const ModeList& modes, int steps, double offset) {
  if (steps < 1) throw DomainError("discrete phase channel needs at least one step");
  if (modes.empty()) throw ModeError("phase channel needs at least one target mode");
  check_modes(modes, rho.num_modes());
  const double weight = 1.0 / std::sqrt(static_cast<double>(steps));
  std::vector<CMatrix> ops;
  ops.reserve(static_cast<std::size_t>(steps));
  for (int n = 0; n < steps; ++n) {
    const double theta = offset + 2.0 * std::numbers::pi * n / steps;
    const CMatrix z = z_rotation_matrix(theta);
    CMatrix u = CMatrix::Ones(1, 1);
    for (std::size_t i = 0; i < modes.size(); ++i) u = Eigen::kroneckerProduct(u, z).eval();
    ops.push_back(weight * u);
  }
  return apply_channel(rho, KrausSet(modes, std::move(ops), true));
}

DensityOp apply_phase_channel(const DensityOp& rho, const PhaseChannelSpec& spec) {
  validate(spec);
  if (const auto* d = std::get_if<DiscretePhase>(&spec.form)) {
    return cpc_discrete(rho, spec.targets, d->steps, spec.phase_offset);
  }
  return cpc_continuous(rho, spec.targets);
}

}  // namespace entx
