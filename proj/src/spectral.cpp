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

#include "entx/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "entx/errors.hpp"

namespace entx {

namespace {

// Conversion from intensity FWHM to intensity standard deviation.
const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);

// Oracle working units: frequencies in 1e12 rad/s, delays in ps.
constexpr double kFrequencyUnit = 1e12;

double sq(double x) { return x * x; }

}  // namespace

void validate(const SpectralParams& p) {
  if (!(p.domega_p > 0.0 && p.domega_v > 0.0 && p.domega_t > 0.0) ||
      !std::isfinite(p.domega_p) || !std::isfinite(p.domega_v) || !std::isfinite(p.domega_t)) {
    throw DomainError("spectral widths must be positive and finite");
  }
  for (const auto& c : {p.omega_p, p.omega_v, p.omega_t}) {
    if (c && !(*c > 0.0 && std::isfinite(*c))) {
      throw DomainError("center frequencies must be positive when given");
    }
  }
}

double domega_from_filter(double center_wavelength_m, double fwhm_bandwidth_m) {
  if (!(center_wavelength_m > 0.0) || !(fwhm_bandwidth_m > 0.0)) {
    throw DomainError("filter wavelength and bandwidth must be positive");
  }
  const double fwhm_omega =
      2.0 * std::numbers::pi * kSpeedOfLight * fwhm_bandwidth_m / sq(center_wavelength_m);
  return fwhm_omega / kFwhmPerSigma;
}

double domega_from_pulse(double fwhm_duration_s) {
  if (!(fwhm_duration_s > 0.0)) throw DomainError("pulse duration must be positive");
  const double time_bandwidth = 2.0 * std::numbers::ln2 / std::numbers::pi;
  const double fwhm_omega = 2.0 * std::numbers::pi * time_bandwidth / fwhm_duration_s;
  return fwhm_omega / kFwhmPerSigma;
}

SpectralParams from_lab(const LabSettings& lab) {
  auto omega = [](double lambda) { return 2.0 * std::numbers::pi * kSpeedOfLight / lambda; };
  SpectralParams p;
  p.domega_p = domega_from_pulse(lab.pump_fwhm_s);
  p.domega_v = domega_from_filter(lab.visible_center_m, lab.visible_fwhm_m);
  p.domega_t = domega_from_filter(lab.telecom_center_m, lab.telecom_fwhm_m);
  if (lab.pump_center_m) p.omega_p = omega(*lab.pump_center_m);
  p.omega_v = omega(lab.visible_center_m);
  p.omega_t = omega(lab.telecom_center_m);
  return p;
}

HomQuery HomQuery::delay(double tau_s) {
  if (!std::isfinite(tau_s)) throw DomainError("delay must be finite");
  return HomQuery(tau_s);
}

HomQuery HomQuery::path(double path_m) {
  if (!std::isfinite(path_m)) throw DomainError("path difference must be finite");
  return HomQuery(path_m / kSpeedOfLight);
}

double hom_visibility(const SpectralParams& p) {
  validate(p);
  const double p2 = sq(p.domega_p), v2 = sq(p.domega_v), t2 = sq(p.domega_t);
  return std::sqrt(p2 * (p2 + v2 + t2) / ((v2 + p2) * (t2 + p2)));
}

double hom_coincidence(const SpectralParams& p, double tau_s) {
  const double vis = hom_visibility(p);
  const double p2 = sq(p.domega_p), v2 = sq(p.domega_v);
  return 1.0 - vis * std::exp(-v2 * p2 * sq(tau_s) / (v2 + p2));
}

std::vector<double> hom_curve(const SpectralParams& p, std::span<const HomQuery> taus) {
  std::vector<double> out;
  out.reserve(taus.size());
  for (const auto& q : taus) out.push_back(hom_coincidence(p, q.tau()));
  return out;
}

double hom_fwhm_path(const SpectralParams& p) {
  validate(p);
  const double p2 = sq(p.domega_p), v2 = sq(p.domega_v);
  return kSpeedOfLight * 2.0 * std::sqrt(std::numbers::ln2 * (v2 + p2) / (v2 * p2));
}

// ---------------------------------------------------------------------------
// Quadrature oracle.
//
// With heralds at w2 (pair A) and w4 (pair B) and photon 3 delayed by tau,
// the coincidence amplitude behind the beamsplitter is
//   A = [Phi(w3,w2) Phi(w1,w4) e^{i w1 tau} - Phi(w1,w2) Phi(w3,w4) e^{i w3 tau}] / 2.
// Integrating |A|^2 over all four frequencies gives (D^2 - X) / 2 with
//   D = int Phi^2,    X = int dw2 dw4 |g(w2, w4)|^2,
//   g(w2, w4) = int dw Phi(w, w2) Phi(w, w4) e^{i w tau},
// and the distinguishable limit tau -> inf gives D^2 / 2. The oracle returns
// 1 - X / D^2 from a tensor-product midpoint rule on a box around the peak of
// |Phi|^2, doubling the resolution on every axis until both D and X settle.

double hom_numeric_oracle(const SpectralParams& p, double tau_s, const QuadratureOptions& opts) {
  validate(p);
  if (!std::isfinite(tau_s)) throw DomainError("delay must be finite");

  const double dp = p.domega_p / kFrequencyUnit;
  const double dv = p.domega_v / kFrequencyUnit;
  const double dt = p.domega_t / kFrequencyUnit;
  const double wv = p.omega_v.value_or(0.0) / kFrequencyUnit;
  const double wt = p.omega_t.value_or(0.0) / kFrequencyUnit;
  const double wp = p.omega_p ? *p.omega_p / kFrequencyUnit : wv + wt;
  const double tau = tau_s * kFrequencyUnit;

  // Q(x, y) = (x+y-wp)^2/dp^2 + (x-wv)^2/dv^2 + (y-wt)^2/dt^2 and Phi = exp(-Q/4).
  auto quad_form = [&](double x, double y) {
    return sq(x + y - wp) / sq(dp) + sq(x - wv) / sq(dv) + sq(y - wt) / sq(dt);
  };
  Eigen::Matrix2d hess;
  hess << 1.0 / sq(dp) + 1.0 / sq(dv), 1.0 / sq(dp), 1.0 / sq(dp), 1.0 / sq(dp) + 1.0 / sq(dt);
  const Eigen::Vector2d rhs(wp / sq(dp) + wv / sq(dv), wp / sq(dp) + wt / sq(dt));
  const Eigen::Vector2d peak = hess.ldlt().solve(rhs);
  const double q_min = quad_form(peak.x(), peak.y());
  // |Phi|^2 = exp(-(z - peak)^T hess (z - peak) / 2) up to a constant.
  const Eigen::Matrix2d cov = hess.inverse();
  const double half_x = opts.box_sigmas * std::sqrt(cov(0, 0));
  const double half_y = opts.box_sigmas * std::sqrt(cov(1, 1));

  double prev_direct = 0.0, prev_cross = 0.0;
  double last_change = std::numeric_limits<double>::infinity();
  bool have_prev = false;
  for (int n = opts.initial_points; n <= opts.max_points; n *= 2) {
    const double hx = 2.0 * half_x / n;
    const double hy = 2.0 * half_y / n;
    Eigen::VectorXd xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs(i) = peak.x() - half_x + (i + 0.5) * hx;
      ys(i) = peak.y() - half_y + (i + 0.5) * hy;
    }
    // amp(i, j) = Phi(xs_i, ys_j), normalized to 1 at the peak.
    Eigen::MatrixXd amp(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        amp(i, j) = std::exp(-(quad_form(xs(i), ys(j)) - q_min) / 4.0);
      }
    }
    const double direct = hx * hy * amp.squaredNorm();

    Eigen::VectorXcd phase(n);
    for (int i = 0; i < n; ++i) phase(i) = std::polar(hx, xs(i) * tau);
    const Eigen::MatrixXcd weighted = phase.asDiagonal() * amp.cast<std::complex<double>>();
    const Eigen::MatrixXcd g = amp.transpose().cast<std::complex<double>>() * weighted;
    const double cross = hy * hy * g.squaredNorm();

    if (have_prev) {
      last_change = std::max(std::abs(direct - prev_direct), std::abs(cross - prev_cross));
      if (last_change <= opts.abs_tol) return 1.0 - cross / sq(direct);
    }
    prev_direct = direct;
    prev_cross = cross;
    have_prev = true;
  }
  const double estimate = have_prev ? 1.0 - prev_cross / sq(prev_direct) : std::nan("");
  throw QuadratureError("HOM quadrature did not converge within " +
                            std::to_string(opts.max_points) + " points per axis",
                        estimate, last_change);
}

}  // namespace entx
