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

#ifndef ENTX_TOMOGRAPHY_HPP
#define ENTX_TOMOGRAPHY_HPP

// Two-qubit polarization tomography: projector catalog, Poisson count
// simulation, diluted iterative maximum-likelihood reconstruction and
// parametric-bootstrap error bars.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entx/qdm.hpp"

namespace entx {

// A projector |a b><a b| with a, b in {H, V, D, A, R, L}.
struct Setting {
  char a = 'H';
  char b = 'H';

  std::string label() const { return std::string{a, b}; }
  friend bool operator==(const Setting&, const Setting&) = default;
};

class SettingCatalog {
 public:
  // The 36 products {H,V,D,A,R,L} x {H,V,D,A,R,L}, first mode outer.
  static SettingCatalog standard();
  // Throws DomainError on unknown labels.
  static SettingCatalog from_settings(std::vector<Setting> settings);

  std::size_t size() const { return settings_.size(); }
  const std::vector<Setting>& settings() const { return settings_; }
  // Projector vectors |a b>.
  const std::vector<Eigen::Vector4cd>& vectors() const { return vectors_; }

  // Rank of the linear map rho -> (Tr[P_j rho])_j on Hermitian 4x4 operators.
  int rank() const;
  bool informationally_complete() const { return rank() == 16; }

 private:
  std::vector<Setting> settings_;
  std::vector<Eigen::Vector4cd> vectors_;
};

struct CountEntry {
  Setting setting;
  std::uint64_t count = 0;
  double weight = 1.0;  // exposure (time or trials)
};

struct CountRecord {
  std::vector<CountEntry> entries;

  // Throws ContractError on nonpositive weights.
  void validate() const;
  std::uint64_t total() const;
};

// CSV with header "setting_a,setting_b,count,weight".
void write_counts_csv(std::ostream& os, const CountRecord& record);
CountRecord read_counts_csv(std::istream& is);
void save_counts(const std::filesystem::path& path, const CountRecord& record);
CountRecord load_counts(const std::filesystem::path& path);

std::vector<double> born_probabilities(const DensityOp& rho, const SettingCatalog& cat);

// Independent Poisson draws with mean p_j * mean_per_setting. The exposure
// weight of every entry is set to mean_per_setting.
CountRecord simulate_counts(const DensityOp& rho, const SettingCatalog& cat,
                            double mean_per_setting, std::uint64_t seed);

// Counts set to round(p_j * mean_per_setting), no sampling noise.
CountRecord expected_counts(const DensityOp& rho, const SettingCatalog& cat,
                            double mean_per_setting);

struct MleOptions {
  double initial_dilution = 0.1;
  double backtrack = 0.5;
  // After an accepted step the dilution grows by 1/backtrack up to this cap.
  double max_dilution = 1.0;
  double min_dilution = 1e-13;
  double loglik_rel_tol = 1e-12;
  double state_tol = 1e-10;
  long max_iterations = 100000;
  double probability_floor = 1e-12;
  bool record_trace = false;

  // Throws DomainError on out-of-range values.
  void validate() const;
};

struct MleDiagnostics {
  long iterations = 0;
  long rejected_steps = 0;
  double final_dilution = 0.0;
  double log_likelihood = 0.0;
  bool converged = false;
  bool floored = false;  // some setting with counts hit the probability floor
  std::vector<double> trace;  // log-likelihood after each accepted step
};

struct MleResult {
  DensityOp state;
  MleDiagnostics diagnostics;
};

// Poisson log-likelihood with the unknown overall rate profiled out:
//   sum_j n_j log p_j - N log(sum_j w_j p_j)
// (constants dropped). For a catalog whose weighted projectors sum to a
// multiple of the identity this is the per-setting multinomial likelihood.
double log_likelihood(const DensityOp& rho, const CountRecord& counts, const SettingCatalog& cat,
                      double probability_floor = 1e-12);

// Throws ContractError when the catalog is not informationally complete or
// does not match the record entry-by-entry.
MleResult mle_reconstruct(const CountRecord& counts, const SettingCatalog& cat,
                          const MleOptions& opts = {});

struct BootstrapOptions {
  int replicas = 100;
  std::uint64_t seed = 1;
};

struct BootstrapResult {
  double std_dev = 0.0;
  double mean = 0.0;
  int nonconverged = 0;
  std::vector<double> values;
};

// Parametric bootstrap: each replica redraws every count as Poisson around
// the observed count, reconstructs, and evaluates `functional`. Replica r
// uses a generator seeded from (seed, r).
BootstrapResult bootstrap(const CountRecord& counts, const SettingCatalog& cat,
                          const MleOptions& opts,
                          const std::function<double(const DensityOp&)>& functional,
                          const BootstrapOptions& boot);

double trace_distance(const DensityOp& a, const DensityOp& b);

}  // namespace entx

#endif  // ENTX_TOMOGRAPHY_HPP
