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

#include "entx/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entx/errors.hpp"
#include "entx/qdm_io.hpp"

namespace entx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_visibility(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("visibility must lie in [0, 1]");
}

CMatrix pm_bra(Sign s) {
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix bra(1, 2);
  bra << h, (s == Sign::Plus ? h : -h);
  return bra;
}

// Probability-weighted mixture of the kept branches.
ConventionSummary summarize(const std::array<BranchReport, 4>& branches, Accounting a) {
  ConventionSummary out;
  out.accounting = a;
  CMatrix mix = CMatrix::Zero(4, 4);
  double weighted_fidelity = 0.0;
  for (const auto& b : branches) {
    const bool alice_plus = b.outcome.alice == Sign::Plus;
    const bool bob_plus = b.outcome.bob == Sign::Plus;
    bool keep = true;
    bool corrected = true;
    switch (a) {
      case Accounting::AllBranches:
        break;
      case Accounting::AlicePlusCorrected:
        keep = alice_plus;
        break;
      case Accounting::AlicePlusBobPlus:
        keep = alice_plus && bob_plus;
        corrected = false;
        break;
    }
    if (!keep || !b.raw) continue;
    const DensityOp& s = corrected ? *b.corrected : *b.raw;
    out.success_probability += b.probability;
    weighted_fidelity += b.probability * (corrected ? b.fidelity_corrected : b.fidelity_raw);
    mix += b.probability * s.matrix();
  }
  if (out.success_probability >= kNullBranchProbability) {
    out.fidelity = weighted_fidelity / out.success_probability;
    out.state = DensityOp::from_matrix(mix / out.success_probability);
  } else {
    out.fidelity = kNaN;
  }
  return out;
}

}  // namespace

std::string_view to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

std::string_view to_string(Accounting a) {
  switch (a) {
    case Accounting::AllBranches:
      return "all_branches";
    case Accounting::AlicePlusCorrected:
      return "alice_plus_corrected";
    case Accounting::AlicePlusBobPlus:
      return "alice_plus_bob_plus";
  }
  return "?";
}

std::optional<Accounting> parse_accounting(std::string_view text) {
  if (text == "a" || text == "all_branches") return Accounting::AllBranches;
  if (text == "b" || text == "alice_plus_corrected") return Accounting::AlicePlusCorrected;
  if (text == "c" || text == "alice_plus_bob_plus") return Accounting::AlicePlusBobPlus;
  return std::nullopt;
}

CMatrix qpc_kraus(Sign alice) {
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix k = CMatrix::Zero(2, 4);
  k(0, 1) = h;                                   // |H><HV|
  k(1, 2) = alice == Sign::Plus ? h : -h;        // +/- |V><VH|
  return k;
}

CMatrix qpc_fail_projector() {
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = 1.0;
  p(3, 3) = 1.0;
  return p;
}

DensityOp distinguishability_dephase(const DensityOp& rho, int mode, double v) {
  check_visibility(v);
  const CMatrix id = CMatrix::Identity(2, 2);
  return apply_channel(
      rho, KrausSet({mode},
                    {std::sqrt((1.0 + v) / 2.0) * id, std::sqrt((1.0 - v) / 2.0) * pauli_z()},
                    true));
}

Branch qpc(const DensityOp& rho, std::pair<int, int> modes, Sign alice, double v) {
  check_visibility(v);
  if (rho.num_modes() < 2) throw SizeError("parity check needs at least two modes");
  auto [first, second] = modes;
  Branch b = apply_selective(rho, KrausOp{{first, second}, qpc_kraus(alice)});
  if (b.null()) return b;
  const int merged = first < second ? first : first - 1;
  b.state = distinguishability_dephase(*b.state, merged, v);
  return b;
}

Branch bob_project(const DensityOp& rho, int mode, Sign bob) {
  return apply_selective(rho, KrausOp{{mode}, pm_bra(bob)});
}

DensityOp feedforward(const DensityOp& rho, int mode, bool apply) {
  if (!apply) return rho;
  return apply_channel(rho, KrausSet({mode}, {pauli_z()}, true));
}

double pair_coherence(const DensityOp& rho) {
  if (rho.num_modes() != 2) throw SizeError("pair coherence needs a two-mode state");
  return 2.0 * std::abs(rho(0, 3));
}

double closed_form_fidelity(double c_a, double c_b, double v) {
  return (1.0 + c_a * c_b * v) / 2.0;
}

PipelineReport run_pipeline(const DensityOp& src_a, const DensityOp& src_b,
                            const std::optional<PhaseChannelSpec>& channel, double v,
                            Accounting selected) {
  check_visibility(v);
  if (src_a.num_modes() != 2 || src_b.num_modes() != 2) {
    throw SizeError("pipeline sources must be two-mode states");
  }
  if (channel) {
    ModeList t = channel->targets;
    std::sort(t.begin(), t.end());
    if (t != ModeList{2, 4}) throw ModeError("pipeline channel must target modes 2 and 4");
  }
  DensityOp rho = tensor(src_a, src_b);
  if (channel) rho = apply_phase_channel(rho, *channel);

  PipelineReport report;
  report.v = v;
  report.channel_applied = channel.has_value();
  report.selected = selected;

  const PureState target = bell_pure(Bell::PhiPlus);
  std::size_t slot = 0;
  for (Sign alice : {Sign::Plus, Sign::Minus}) {
    // Register after the parity check: (5, 2, 4).
    const Branch parity = qpc(rho, {1, 3}, alice, v);
    for (Sign bob : {Sign::Plus, Sign::Minus}) {
      BranchReport& br = report.branches[slot++];
      br.outcome = {alice, bob};
      br.feedforward = alice != bob;
      br.fidelity_raw = kNaN;
      br.fidelity_corrected = kNaN;
      if (parity.null()) continue;
      const Branch measured = bob_project(*parity.state, 3, bob);
      br.probability = parity.probability * measured.probability;
      if (measured.null()) continue;
      // (5, 2) -> (2, 5)
      DensityOp pair = DensityOp::from_matrix(permute_modes(measured.state->matrix(), 2, {1, 0}));
      br.corrected = feedforward(pair, 1, br.feedforward);
      br.raw = std::move(pair);
      br.fidelity_raw = fidelity_to_pure(*br.raw, target);
      br.fidelity_corrected = fidelity_to_pure(*br.corrected, target);
    }
  }

  const Branch fail = apply_selective(rho, KrausOp{{1, 3}, qpc_fail_projector()});
  report.parity_fail_probability = fail.probability;

  for (Accounting a :
       {Accounting::AllBranches, Accounting::AlicePlusCorrected, Accounting::AlicePlusBobPlus}) {
    report.conventions[static_cast<std::size_t>(a)] = summarize(report.branches, a);
  }
  return report;
}

nlohmann::ordered_json to_document(const PipelineReport& report) {
  nlohmann::ordered_json doc;
  doc["visibility"] = report.v;
  doc["channel_applied"] = report.channel_applied;
  doc["parity_fail_probability"] = report.parity_fail_probability;
  auto branches = nlohmann::ordered_json::array();
  for (const auto& b : report.branches) {
    nlohmann::ordered_json j;
    j["alice"] = std::string(to_string(b.outcome.alice));
    j["bob"] = std::string(to_string(b.outcome.bob));
    j["probability"] = b.probability;
    j["feedforward"] = b.feedforward;
    j["fidelity_raw"] = b.fidelity_raw;
    j["fidelity_corrected"] = b.fidelity_corrected;
    j["modes"] = {2, 5};
    j["state"] = b.corrected ? to_document(*b.corrected) : nlohmann::ordered_json(nullptr);
    branches.push_back(std::move(j));
  }
  doc["branches"] = std::move(branches);
  auto conv = nlohmann::ordered_json::object();
  for (const auto& c : report.conventions) {
    nlohmann::ordered_json j;
    j["success_probability"] = c.success_probability;
    j["fidelity"] = c.fidelity;
    j["state"] = c.state ? to_document(*c.state) : nlohmann::ordered_json(nullptr);
    conv[std::string(to_string(c.accounting))] = std::move(j);
  }
  doc["conventions"] = std::move(conv);
  doc["selected"] = std::string(to_string(report.selected));
  return doc;
}

}  // namespace entx
