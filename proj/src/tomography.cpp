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

#include "entx/tomography.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "entx/errors.hpp"
#include "entx/numfmt.hpp"

namespace entx {

namespace {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

constexpr char kLabels[] = {'H', 'V', 'D', 'A', 'R', 'L'};

Vec4 projector_vector(const Setting& s) {
  return basis_pure(std::string{s.a, s.b}).amplitudes();
}

double quad(const Vec4& v, const Mat4& m) { return v.dot(m * v).real(); }

Mat4 hermitize(const Mat4& m) { return (m + m.adjoint()) * 0.5; }

// Counts and catalog flattened for the inner loop.
struct Problem {
  std::vector<Vec4> vecs;
  std::vector<double> counts;
  std::vector<double> weights;
  double total = 0.0;
  Mat4 weighted_sum = Mat4::Zero();  // sum_j w_j P_j
  double floor = 1e-12;
};

Problem make_problem(const CountRecord& record, const SettingCatalog& cat, double floor) {
  record.validate();
  if (record.entries.size() != cat.size()) {
    throw ContractError("count record has " + std::to_string(record.entries.size()) +
                        " entries, catalog has " + std::to_string(cat.size()));
  }
  Problem pr;
  pr.floor = floor;
  for (std::size_t j = 0; j < cat.size(); ++j) {
    if (!(record.entries[j].setting == cat.settings()[j])) {
      throw ContractError("count record entry " + std::to_string(j) + " (" +
                          record.entries[j].setting.label() + ") does not match catalog (" +
                          cat.settings()[j].label() + ")");
    }
    const Vec4& v = cat.vectors()[j];
    pr.vecs.push_back(v);
    pr.counts.push_back(static_cast<double>(record.entries[j].count));
    pr.weights.push_back(record.entries[j].weight);
    pr.total += pr.counts.back();
    pr.weighted_sum += record.entries[j].weight * v * v.adjoint();
  }
  if (pr.total <= 0.0) throw ContractError("count record holds no events");
  return pr;
}

struct Evaluation {
  std::vector<double> raw;    // Tr[P_j rho]
  std::vector<double> probs;  // floored
  double rate = 0.0;          // sum_j w_j p_j
  bool floored = false;
};

Evaluation evaluate(const Problem& pr, const Mat4& rho) {
  Evaluation ev;
  ev.raw.resize(pr.vecs.size());
  ev.probs.resize(pr.vecs.size());
  for (std::size_t j = 0; j < pr.vecs.size(); ++j) {
    const double p = quad(pr.vecs[j], rho);
    ev.raw[j] = p;
    ev.probs[j] = std::max(p, pr.floor);
    if (p < pr.floor && pr.counts[j] > 0.0) ev.floored = true;
    ev.rate += pr.weights[j] * ev.probs[j];
  }
  return ev;
}

double loglik(const Problem& pr, const Evaluation& ev) {
  double acc = 0.0;
  for (std::size_t j = 0; j < pr.vecs.size(); ++j) {
    if (pr.counts[j] > 0.0) acc += pr.counts[j] * std::log(ev.probs[j]);
  }
  return acc - pr.total * std::log(ev.rate);
}

// I + (1/N) sum_j (n_j / p_j) P_j - H / Tr[H rho]. Equals the identity on
// the support of a stationary point.
Mat4 gradient_operator(const Problem& pr, const Evaluation& ev) {
  Mat4 r = Mat4::Identity() - pr.weighted_sum / ev.rate;
  for (std::size_t j = 0; j < pr.vecs.size(); ++j) {
    if (pr.counts[j] > 0.0) {
      r += (pr.counts[j] / (pr.total * ev.probs[j])) * pr.vecs[j] * pr.vecs[j].adjoint();
    }
  }
  return hermitize(r);
}

// L(new) - L(old), accumulated from per-setting relative changes so that
// increments far below the magnitude of L itself stay resolvable.
double loglik_change(const Problem& pr, const Evaluation& old_ev, const Evaluation& new_ev,
                     const Mat4& delta) {
  double acc = 0.0;
  double rate_change = 0.0;
  for (std::size_t j = 0; j < pr.vecs.size(); ++j) {
    double d;
    if (old_ev.raw[j] >= pr.floor && new_ev.raw[j] >= pr.floor) {
      d = quad(pr.vecs[j], delta);
    } else {
      d = new_ev.probs[j] - old_ev.probs[j];
    }
    rate_change += pr.weights[j] * d;
    if (pr.counts[j] > 0.0) acc += pr.counts[j] * std::log1p(d / old_ev.probs[j]);
  }
  return acc - pr.total * std::log1p(rate_change / old_ev.rate);
}

Mat4 to_mat4(const DensityOp& rho) {
  if (rho.num_modes() != 2) throw SizeError("tomography works on two-mode states");
  return rho.matrix();
}

std::mt19937_64 child_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t draw_poisson(std::mt19937_64& gen, double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(gen);
}

}  // namespace

// ---------------------------------------------------------------------------

SettingCatalog SettingCatalog::standard() {
  std::vector<Setting> s;
  for (char a : kLabels) {
    for (char b : kLabels) s.push_back({a, b});
  }
  return from_settings(std::move(s));
}

SettingCatalog SettingCatalog::from_settings(std::vector<Setting> settings) {
  SettingCatalog cat;
  for (const auto& s : settings) cat.vectors_.push_back(projector_vector(s));
  cat.settings_ = std::move(settings);
  return cat;
}

int SettingCatalog::rank() const {
  Eigen::MatrixXd frame(32, static_cast<Eigen::Index>(vectors_.size()));
  for (std::size_t j = 0; j < vectors_.size(); ++j) {
    const Mat4 p = vectors_[j] * vectors_[j].adjoint();
    for (int k = 0; k < 16; ++k) {
      frame(k, static_cast<Eigen::Index>(j)) = p(k / 4, k % 4).real();
      frame(16 + k, static_cast<Eigen::Index>(j)) = p(k / 4, k % 4).imag();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(frame);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

void CountRecord::validate() const {
  for (const auto& e : entries) {
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ContractError("count record weight must be positive (setting " + e.setting.label() +
                          ")");
    }
  }
}

std::uint64_t CountRecord::total() const {
  std::uint64_t t = 0;
  for (const auto& e : entries) t += e.count;
  return t;
}

void write_counts_csv(std::ostream& os, const CountRecord& record) {
  os << "setting_a,setting_b,count,weight\n";
  for (const auto& e : record.entries) {
    os << e.setting.a << ',' << e.setting.b << ',' << e.count << ',' << format_double(e.weight)
       << '\n';
  }
}

CountRecord read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("setting_a,setting_b,count,weight", 0) != 0) {
    throw InputError("count record: missing header 'setting_a,setting_b,count,weight'");
  }
  CountRecord record;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    const auto bad = [&](const std::string& why) {
      return InputError("count record line " + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 4) throw bad("expected 4 fields");
    if (fields[0].size() != 1 || fields[1].size() != 1) throw bad("setting labels are one char");
    CountEntry e;
    e.setting = {fields[0][0], fields[1][0]};
    const auto& c = fields[2];
    if (auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), e.count);
        ec != std::errc() || p != c.data() + c.size()) {
      throw bad("count is not a nonnegative integer");
    }
    const auto& w = fields[3];
    if (auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), e.weight);
        ec != std::errc() || p != w.data() + w.size()) {
      throw bad("weight is not a number");
    }
    try {
      projector_vector(e.setting);
    } catch (const DomainError& err) {
      throw bad(err.what());
    }
    record.entries.push_back(e);
  }
  try {
    record.validate();
  } catch (const ContractError& err) {
    throw InputError(err.what());
  }
  return record;
}

void save_counts(const std::filesystem::path& path, const CountRecord& record) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  write_counts_csv(os, record);
}

CountRecord load_counts(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path.string());
  return read_counts_csv(is);
}

// ---------------------------------------------------------------------------

std::vector<double> born_probabilities(const DensityOp& rho, const SettingCatalog& cat) {
  const Mat4 m = to_mat4(rho);
  std::vector<double> out;
  out.reserve(cat.size());
  for (const auto& v : cat.vectors()) out.push_back(quad(v, m));
  return out;
}

CountRecord simulate_counts(const DensityOp& rho, const SettingCatalog& cat,
                            double mean_per_setting, std::uint64_t seed) {
  if (!(mean_per_setting > 0.0)) throw DomainError("mean counts per setting must be positive");
  const auto probs = born_probabilities(rho, cat);
  std::mt19937_64 gen(seed);
  CountRecord record;
  for (std::size_t j = 0; j < cat.size(); ++j) {
    record.entries.push_back(
        {cat.settings()[j], draw_poisson(gen, probs[j] * mean_per_setting), mean_per_setting});
  }
  return record;
}

CountRecord expected_counts(const DensityOp& rho, const SettingCatalog& cat,
                            double mean_per_setting) {
  if (!(mean_per_setting > 0.0)) throw DomainError("mean counts per setting must be positive");
  const auto probs = born_probabilities(rho, cat);
  CountRecord record;
  for (std::size_t j = 0; j < cat.size(); ++j) {
    const double mean = std::max(probs[j], 0.0) * mean_per_setting;
    record.entries.push_back(
        {cat.settings()[j], static_cast<std::uint64_t>(std::llround(mean)), mean_per_setting});
  }
  return record;
}

// ---------------------------------------------------------------------------

void MleOptions::validate() const {
  if (!(initial_dilution > 0.0 && initial_dilution <= 1.0)) {
    throw DomainError("initial dilution must lie in (0, 1]");
  }
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw DomainError("backtrack must lie in (0, 1)");
  if (!(max_dilution >= initial_dilution)) {
    throw DomainError("max dilution must be at least the initial dilution");
  }
  if (!(min_dilution > 0.0)) throw DomainError("min dilution must be positive");
  if (max_iterations <= 0) throw DomainError("iteration cap must be positive");
  if (!(loglik_rel_tol > 0.0) || !(state_tol > 0.0)) {
    throw DomainError("convergence thresholds must be positive");
  }
  if (!(probability_floor > 0.0)) throw DomainError("probability floor must be positive");
}

double log_likelihood(const DensityOp& rho, const CountRecord& counts, const SettingCatalog& cat,
                      double probability_floor) {
  const Problem pr = make_problem(counts, cat, probability_floor);
  return loglik(pr, evaluate(pr, to_mat4(rho)));
}

MleResult mle_reconstruct(const CountRecord& counts, const SettingCatalog& cat,
                          const MleOptions& opts) {
  opts.validate();
  if (!cat.informationally_complete()) {
    throw ContractError("setting catalog is not informationally complete");
  }
  const Problem pr = make_problem(counts, cat, opts.probability_floor);

  MleDiagnostics diag;
  Mat4 rho = Mat4::Identity() / 4.0;
  Evaluation ev = evaluate(pr, rho);
  double ll = loglik(pr, ev);
  double eps = opts.initial_dilution;
  bool floored = ev.floored;

  while (diag.iterations < opts.max_iterations) {
    ++diag.iterations;
    const Mat4 step = Mat4::Identity() + eps * gradient_operator(pr, ev);
    Mat4 next = step * rho * step.adjoint();
    next = hermitize(next / next.trace().real());
    const Mat4 delta = next - rho;
    const Evaluation next_ev = evaluate(pr, next);
    const double gain = loglik_change(pr, ev, next_ev, delta);

    if (!(gain > 0.0)) {
      ++diag.rejected_steps;
      eps *= opts.backtrack;
      if (eps < opts.min_dilution) {
        // No ascent left at any resolvable step size.
        diag.converged = true;
        break;
      }
      continue;
    }

    rho = next;
    ev = next_ev;
    floored = floored || ev.floored;
    const double next_ll = loglik(pr, ev);
    if (opts.record_trace) diag.trace.push_back(next_ll);
    const bool small_gain = gain <= opts.loglik_rel_tol * std::max(1.0, std::abs(next_ll));
    const bool small_move = delta.cwiseAbs().maxCoeff() <= opts.state_tol;
    ll = next_ll;
    if (small_gain && small_move) {
      diag.converged = true;
      break;
    }
    eps = std::min(eps / opts.backtrack, opts.max_dilution);
  }

  diag.final_dilution = eps;
  diag.log_likelihood = ll;
  diag.floored = floored;
  return MleResult{DensityOp::from_matrix(CMatrix(rho)), std::move(diag)};
}

BootstrapResult bootstrap(const CountRecord& counts, const SettingCatalog& cat,
                          const MleOptions& opts,
                          const std::function<double(const DensityOp&)>& functional,
                          const BootstrapOptions& boot) {
  if (boot.replicas < 2) throw DomainError("bootstrap needs at least two replicas");
  counts.validate();
  BootstrapResult out;
  out.values.reserve(static_cast<std::size_t>(boot.replicas));
  for (int r = 0; r < boot.replicas; ++r) {
    auto gen = child_generator(boot.seed, static_cast<std::uint64_t>(r));
    CountRecord replica = counts;
    for (auto& e : replica.entries) e.count = draw_poisson(gen, static_cast<double>(e.count));
    const MleResult fit = mle_reconstruct(replica, cat, opts);
    if (!fit.diagnostics.converged) ++out.nonconverged;
    out.values.push_back(functional(fit.state));
  }
  double sum = 0.0;
  for (double x : out.values) sum += x;
  out.mean = sum / static_cast<double>(out.values.size());
  double ss = 0.0;
  for (double x : out.values) ss += (x - out.mean) * (x - out.mean);
  out.std_dev = std::sqrt(ss / static_cast<double>(out.values.size() - 1));
  return out;
}

double trace_distance(const DensityOp& a, const DensityOp& b) {
  if (a.num_modes() != b.num_modes()) throw SizeError("trace distance: mode count mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace entx
