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

#ifndef ENTX_QDM_HPP
#define ENTX_QDM_HPP

// Dense density-operator algebra for polarization qubits.
//
// Basis convention: per mode |H> is index 0 and |V> is index 1; mode 1 is the
// most significant bit of the composite index. Mode numbers in every public
// API are 1-based.

#include <complex>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace entx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using ModeList = std::vector<int>;

inline constexpr int kDefaultModeCap = 8;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;
inline constexpr double kPureNormTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kNullBranchProbability = 1e-12;

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

class PureState {
 public:
  // Throws SizeError unless the length is a power of two, ContractError
  // unless the squared norm is 1 within kPureNormTol.
  static PureState from_amplitudes(CVector amplitudes);

  int num_modes() const { return num_modes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  PureState(int num_modes, CVector amplitudes)
      : num_modes_(num_modes), amplitudes_(std::move(amplitudes)) {}

  int num_modes_;
  CVector amplitudes_;
};

class DensityOp {
 public:
  // Validates Hermiticity, unit trace and the eigenvalue floor; throws
  // ContractError on violation and SizeError on a non-2^n square shape.
  static DensityOp from_matrix(CMatrix matrix);

  explicit DensityOp(const PureState& psi);

  int num_modes() const { return num_modes_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

  double trace() const { return matrix_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  DensityOp(int num_modes, CMatrix matrix)
      : num_modes_(num_modes), matrix_(std::move(matrix)) {}

  int num_modes_;
  CMatrix matrix_;
};

// One operator acting on `targets`. The input space is 2^|targets|; the
// output space may be smaller (2^k with k <= |targets|). Output mode j takes
// the place of targets[j]; targets[k..] disappear from the register.
struct KrausOp {
  ModeList targets;
  CMatrix op;
};

class KrausSet {
 public:
  // With `complete`, sum K^dag K must equal I within kCompletenessTol;
  // otherwise it must be <= I within 1e-9. Throws ContractError.
  KrausSet(ModeList targets, std::vector<CMatrix> operators, bool complete);

  const ModeList& targets() const { return targets_; }
  const std::vector<CMatrix>& operators() const { return operators_; }
  bool complete() const { return complete_; }
  int output_modes() const { return output_modes_; }

 private:
  ModeList targets_;
  std::vector<CMatrix> operators_;
  bool complete_;
  int output_modes_;
};

// Outcome of a selective operation. `state` is empty on a null branch.
struct Branch {
  double probability = 0.0;
  std::optional<DensityOp> state;

  bool null() const { return !state.has_value(); }
};

DensityOp tensor(const DensityOp& a, const DensityOp& b, int mode_cap = kDefaultModeCap);
PureState tensor(const PureState& a, const PureState& b, int mode_cap = kDefaultModeCap);

// Traces out `discard` (1-based). Discarding every mode yields a 0-mode
// operator holding the trace.
DensityOp partial_trace(const DensityOp& rho, const ModeList& discard);

DensityOp apply_channel(const DensityOp& rho, const KrausSet& channel);

Branch apply_selective(const DensityOp& rho, const KrausOp& k);

double fidelity_to_pure(const DensityOp& rho, const PureState& psi);

// Single-qubit Pauli Z = |H><H| - |V><V|.
CMatrix pauli_z();

// --- state constructors ---------------------------------------------------

PureState bell_pure(Bell which);
// Product state from a label string over {H, V, +, -, D, A, R, L}; '+'/'D'
// and '-'/'A' are synonyms.
PureState basis_pure(std::string_view labels);

DensityOp bell_state(Bell which);
DensityOp basis_state(std::string_view labels);
// p |phi+><phi+| + (1 - p) I/4, p in [0, 1].
DensityOp werner(double p);
// (|HH><HH| + |VV><VV|)/2 + (c/2)(|HH><VV| + |VV><HH|), c in [0, 1].
DensityOp phase_noise_pair(double c);

struct BellSpec {
  Bell which;
};
struct BasisSpec {
  std::string labels;
};
struct WernerSpec {
  double p;
};
struct PhaseNoisePairSpec {
  double c;
};
using StateSpec = std::variant<BellSpec, BasisSpec, WernerSpec, PhaseNoisePairSpec>;

DensityOp make_state(const StateSpec& spec);

// --- lower-level helpers shared by the other modules ----------------------

// Computes K rho K^dag for `k` acting on a register of `num_modes` modes.
// Returns the unnormalized matrix on the reduced register.
CMatrix sandwich(const CMatrix& rho, int num_modes, const KrausOp& k);

// Reorders modes: new mode i (0-based) is old mode order[i] (0-based).
CMatrix permute_modes(const CMatrix& m, int num_modes, const std::vector<int>& order);

// Throws ModeError unless every entry is in [1, num_modes] and distinct.
void check_modes(const ModeList& modes, int num_modes);

int modes_for_dim(Eigen::Index dim);

}  // namespace entx

#endif  // ENTX_QDM_HPP
