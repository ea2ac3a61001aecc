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

#ifndef ENTX_PROTOCOL_HPP
#define ENTX_PROTOCOL_HPP

// Entanglement extraction from two collectively dephased pairs.
//
// Register layout of the composed state: modes 1,2 carry pair A, modes 3,4
// carry pair B. Alice holds 1 and 3, Bob holds 2 and 4, and the collective
// channel acts on 2 and 4. Alice's parity check merges 1 and 3 into a single
// output mode (called 5) and Bob measures 4 in the |+>/|-> basis, leaving
// the extracted pair on (2, 5).

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "entx/channels.hpp"
#include "entx/qdm.hpp"

namespace entx {

enum class Sign { Plus, Minus };

std::string_view to_string(Sign s);

struct QpcOutcome {
  Sign alice = Sign::Plus;
  Sign bob = Sign::Plus;
};

// Success-probability bookkeeping.
enum class Accounting {
  AllBranches,         // every (alice, bob) outcome kept, feedforward applied
  AlicePlusCorrected,  // alice '+' only, both bob outcomes, feedforward applied
  AlicePlusBobPlus,    // alice '+' and bob '+' only, no feedforward
};

std::string_view to_string(Accounting a);
// Accepts "a"/"b"/"c" and the long names above in snake_case.
std::optional<Accounting> parse_accounting(std::string_view text);

// Parity-check outcome operator (|H><HV| +/- |V><VH|)/sqrt(2), 2x4, with
// the input basis ordered HH, HV, VH, VV over (first, second) mode.
CMatrix qpc_kraus(Sign alice);

// Complement of the two success outcomes: |HH><HH| + |VV><VV| (4x4).
CMatrix qpc_fail_projector();

// Scales the H/V coherences of `mode` by v: ((1+v)/2) rho + ((1-v)/2) Z rho Z.
DensityOp distinguishability_dephase(const DensityOp& rho, int mode, double v);

// Applies the parity-check outcome on `modes`, merges the pair into a single
// mode placed at modes.first's slot, then applies distinguishability_dephase
// to it. Throws DomainError for v outside [0, 1].
Branch qpc(const DensityOp& rho, std::pair<int, int> modes, Sign alice, double v);

// Projects `mode` on |+> or |-> and removes it from the register.
Branch bob_project(const DensityOp& rho, int mode, Sign bob);

// Z on `mode` when `apply` is set.
DensityOp feedforward(const DensityOp& rho, int mode, bool apply);

// 2 |<HH|rho|VV>| of a two-mode state.
double pair_coherence(const DensityOp& rho);

// (1 + c_a c_b v) / 2.
double closed_form_fidelity(double c_a, double c_b, double v);

struct BranchReport {
  QpcOutcome outcome;
  double probability = 0.0;
  bool feedforward = false;                // Z applied on mode 2
  std::optional<DensityOp> raw;            // modes (2, 5), before correction
  std::optional<DensityOp> corrected;      // modes (2, 5), after correction
  double fidelity_raw = 0.0;               // NaN on a null branch
  double fidelity_corrected = 0.0;
};

struct ConventionSummary {
  Accounting accounting = Accounting::AllBranches;
  double success_probability = 0.0;
  double fidelity = 0.0;           // probability-weighted over kept branches
  std::optional<DensityOp> state;  // normalized mixture of kept branches
};

struct PipelineReport {
  double v = 1.0;
  bool channel_applied = false;
  std::array<BranchReport, 4> branches;  // (+,+), (+,-), (-,+), (-,-)
  double parity_fail_probability = 0.0;
  std::array<ConventionSummary, 3> conventions;  // indexed by Accounting
  Accounting selected = Accounting::AlicePlusCorrected;

  const ConventionSummary& summary(Accounting a) const {
    return conventions[static_cast<std::size_t>(a)];
  }
  const ConventionSummary& headline() const { return summary(selected); }
};

// tensor -> channel (modes 2, 4) -> parity check on (1, 3) for both signs ->
// bob projection on 4 for both signs -> feedforward where the signs differ.
// Without a channel the collective dephasing step is skipped.
PipelineReport run_pipeline(const DensityOp& src_a, const DensityOp& src_b,
                            const std::optional<PhaseChannelSpec>& channel, double v,
                            Accounting selected = Accounting::AlicePlusCorrected);

nlohmann::ordered_json to_document(const PipelineReport& report);

}  // namespace entx

#endif  // ENTX_PROTOCOL_HPP
