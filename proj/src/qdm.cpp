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

#include "entx/qdm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "entx/errors.hpp"

namespace entx {

namespace {

constexpr double kSubnormalizedTol = 1e-9;

double min_eigenvalue_of(const CMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

int modes_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw SizeError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

void check_modes(const ModeList& modes, int num_modes) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 1 || modes[i] > num_modes) {
      throw ModeError("mode " + std::to_string(modes[i]) + " outside 1.." +
                      std::to_string(num_modes));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[j] == modes[i]) {
        throw ModeError("mode " + std::to_string(modes[i]) + " listed twice");
      }
    }
  }
}

// ---------------------------------------------------------------------------

PureState PureState::from_amplitudes(CVector amplitudes) {
  const int n = modes_for_dim(amplitudes.size());
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kPureNormTol) {
    throw ContractError("pure state has squared norm " + std::to_string(norm2));
  }
  return PureState(n, std::move(amplitudes));
}

DensityOp DensityOp::from_matrix(CMatrix matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw SizeError("density operator must be square");
  }
  const int n = modes_for_dim(matrix.rows());
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw ContractError("operator is not Hermitian (max deviation " + std::to_string(asym) +
                        ")");
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw ContractError("trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  CMatrix herm = (matrix + matrix.adjoint()) * 0.5;
  const double lo = min_eigenvalue_of(herm);
  if (lo < kEigenvalueFloor) {
    throw ContractError("operator is not positive (min eigenvalue " + std::to_string(lo) + ")");
  }
  return DensityOp(n, std::move(herm));
}

DensityOp::DensityOp(const PureState& psi)
    : num_modes_(psi.num_modes()),
      matrix_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

double DensityOp::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOp::min_eigenvalue() const { return min_eigenvalue_of(matrix_); }

// ---------------------------------------------------------------------------

KrausSet::KrausSet(ModeList targets, std::vector<CMatrix> operators, bool complete)
    : targets_(std::move(targets)), operators_(std::move(operators)), complete_(complete) {
  if (targets_.empty()) throw ModeError("Kraus set needs at least one target mode");
  if (operators_.empty()) throw ContractError("Kraus set has no operators");
  // Targets are validated against a concrete register when applied; here we
  // only need them to be positive and distinct.
  check_modes(targets_, *std::max_element(targets_.begin(), targets_.end()));

  const Eigen::Index din = Eigen::Index{1} << targets_.size();
  const Eigen::Index dout = operators_.front().rows();
  output_modes_ = modes_for_dim(dout);
  if (output_modes_ > static_cast<int>(targets_.size())) {
    throw SizeError("Kraus output space larger than its input space");
  }
  CMatrix acc = CMatrix::Zero(din, din);
  for (const auto& k : operators_) {
    if (k.cols() != din || k.rows() != dout) {
      throw SizeError("Kraus operator shape does not match its target modes");
    }
    acc += k.adjoint() * k;
  }
  const CMatrix identity = CMatrix::Identity(din, din);
  if (complete_) {
    const double dev = (acc - identity).cwiseAbs().maxCoeff();
    if (dev > kCompletenessTol) {
      throw ContractError("Kraus set is not complete (deviation " + std::to_string(dev) + ")");
    }
  } else if (min_eigenvalue_of(identity - acc) < -kSubnormalizedTol) {
    throw ContractError("Kraus set is not trace non-increasing");
  }
}

// ---------------------------------------------------------------------------

CMatrix permute_modes(const CMatrix& m, int num_modes, const std::vector<int>& order) {
  const Eigen::Index dim = Eigen::Index{1} << num_modes;
  std::vector<Eigen::Index> source(static_cast<std::size_t>(dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index old = 0;
    for (int i = 0; i < num_modes; ++i) {
      const Eigen::Index bit = (idx >> (num_modes - 1 - i)) & 1;
      old |= bit << (num_modes - 1 - order[static_cast<std::size_t>(i)]);
    }
    source[static_cast<std::size_t>(idx)] = old;
  }
  CMatrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      out(r, c) = m(source[static_cast<std::size_t>(r)], source[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

CMatrix sandwich(const CMatrix& rho, int num_modes, const KrausOp& k) {
  check_modes(k.targets, num_modes);
  const int t = static_cast<int>(k.targets.size());
  if (k.op.cols() != (Eigen::Index{1} << t)) {
    throw SizeError("operator input dimension does not match its target modes");
  }
  const int out = modes_for_dim(k.op.rows());
  if (out > t) throw SizeError("operator output space larger than its input space");

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(num_modes));
  for (int m : k.targets) order.push_back(m - 1);
  std::vector<int> rest;
  for (int m = 0; m < num_modes; ++m) {
    if (std::find(k.targets.begin(), k.targets.end(), m + 1) == k.targets.end()) {
      rest.push_back(m);
      order.push_back(m);
    }
  }

  const Eigen::Index drest = Eigen::Index{1} << (num_modes - t);
  const CMatrix front = permute_modes(rho, num_modes, order);
  const CMatrix full = Eigen::kroneckerProduct(k.op, CMatrix::Identity(drest, drest)).eval();
  const CMatrix moved = full * front * full.adjoint();

  // `moved` lists the `out` output modes first, then `rest`. Put each output
  // mode back where targets[j] sat and keep the survivors in register order.
  const int remaining = out + static_cast<int>(rest.size());
  std::vector<int> back;
  back.reserve(static_cast<std::size_t>(remaining));
  for (int m = 0; m < num_modes; ++m) {
    const auto tpos = std::find(k.targets.begin(), k.targets.end(), m + 1);
    if (tpos != k.targets.end()) {
      const int j = static_cast<int>(tpos - k.targets.begin());
      if (j < out) back.push_back(j);
    } else {
      const int r = static_cast<int>(std::find(rest.begin(), rest.end(), m) - rest.begin());
      back.push_back(out + r);
    }
  }
  return permute_modes(moved, remaining, back);
}

// ---------------------------------------------------------------------------

DensityOp tensor(const DensityOp& a, const DensityOp& b, int mode_cap) {
  if (a.num_modes() + b.num_modes() > mode_cap) {
    throw SizeError("tensor product would have " +
                    std::to_string(a.num_modes() + b.num_modes()) + " modes; cap is " +
                    std::to_string(mode_cap));
  }
  return DensityOp::from_matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

PureState tensor(const PureState& a, const PureState& b, int mode_cap) {
  if (a.num_modes() + b.num_modes() > mode_cap) {
    throw SizeError("tensor product would have " +
                    std::to_string(a.num_modes() + b.num_modes()) + " modes; cap is " +
                    std::to_string(mode_cap));
  }
  return PureState::from_amplitudes(
      Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval());
}

DensityOp partial_trace(const DensityOp& rho, const ModeList& discard) {
  const int n = rho.num_modes();
  check_modes(discard, n);
  if (discard.empty()) return rho;

  std::vector<int> order;
  for (int m = 1; m <= n; ++m) {
    if (std::find(discard.begin(), discard.end(), m) == discard.end()) order.push_back(m - 1);
  }
  const int kept = static_cast<int>(order.size());
  for (int m : discard) order.push_back(m - 1);

  const CMatrix p = permute_modes(rho.matrix(), n, order);
  const Eigen::Index dk = Eigen::Index{1} << kept;
  const Eigen::Index dd = Eigen::Index{1} << (n - kept);
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index e = 0; e < dd; ++e) {
    out += p(Eigen::seqN(e, dk, dd), Eigen::seqN(e, dk, dd));
  }
  return DensityOp::from_matrix(std::move(out));
}

DensityOp apply_channel(const DensityOp& rho, const KrausSet& channel) {
  if (!channel.complete()) {
    throw ContractError("apply_channel requires a complete Kraus set");
  }
  check_modes(channel.targets(), rho.num_modes());
  CMatrix acc;
  for (const auto& k : channel.operators()) {
    CMatrix term = sandwich(rho.matrix(), rho.num_modes(), KrausOp{channel.targets(), k});
    if (acc.size() == 0) {
      acc = std::move(term);
    } else {
      acc += term;
    }
  }
  return DensityOp::from_matrix(std::move(acc));
}

Branch apply_selective(const DensityOp& rho, const KrausOp& k) {
  const Eigen::Index din = k.op.cols();
  if (min_eigenvalue_of(CMatrix::Identity(din, din) - k.op.adjoint() * k.op) <
      -kSubnormalizedTol) {
    throw ContractError("selective operator violates K^dag K <= I");
  }
  CMatrix out = sandwich(rho.matrix(), rho.num_modes(), k);
  const double p = out.trace().real();
  if (p < kNullBranchProbability) return Branch{std::max(p, 0.0), std::nullopt};
  return Branch{p, DensityOp::from_matrix(out / p)};
}

double fidelity_to_pure(const DensityOp& rho, const PureState& psi) {
  if (rho.num_modes() != psi.num_modes()) {
    throw SizeError("fidelity: state has " + std::to_string(rho.num_modes()) +
                    " modes, reference has " + std::to_string(psi.num_modes()));
  }
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

// ---------------------------------------------------------------------------

PureState bell_pure(Bell which) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (which) {
    case Bell::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case Bell::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case Bell::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case Bell::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return PureState::from_amplitudes(std::move(v));
}

PureState basis_pure(std::string_view labels) {
  if (labels.empty()) throw DomainError("empty basis label string");
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  CVector acc = CVector::Ones(1);
  for (char ch : labels) {
    CVector q(2);
    switch (ch) {
      case 'H': q << 1.0, 0.0; break;
      case 'V': q << 0.0, 1.0; break;
      case '+':
      case 'D': q << s, s; break;
      case '-':
      case 'A': q << s, -s; break;
      case 'R': q << s, i * s; break;
      case 'L': q << s, -i * s; break;
      default:
        throw DomainError(std::string("unknown polarization label '") + ch + "'");
    }
    acc = Eigen::kroneckerProduct(acc, q).eval();
  }
  return PureState::from_amplitudes(std::move(acc));
}

DensityOp bell_state(Bell which) { return DensityOp(bell_pure(which)); }

DensityOp basis_state(std::string_view labels) { return DensityOp(basis_pure(labels)); }

DensityOp werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("werner: p must lie in [0, 1]");
  const CMatrix phi = bell_state(Bell::PhiPlus).matrix();
  return DensityOp::from_matrix(p * phi + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0);
}

DensityOp phase_noise_pair(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("phase_noise_pair: c must lie in [0, 1]");
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = c / 2.0;
  m(3, 0) = c / 2.0;
  return DensityOp::from_matrix(std::move(m));
}

DensityOp make_state(const StateSpec& spec) {
  return std::visit(
      [](const auto& s) -> DensityOp {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BellSpec>) {
          return bell_state(s.which);
        } else if constexpr (std::is_same_v<T, BasisSpec>) {
          return basis_state(s.labels);
        } else if constexpr (std::is_same_v<T, WernerSpec>) {
          return werner(s.p);
        } else {
          return phase_noise_pair(s.c);
        }
      },
      spec);
}

}  // namespace entx
