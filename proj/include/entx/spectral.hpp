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

#ifndef ENTX_SPECTRAL_HPP
#define ENTX_SPECTRAL_HPP

// Gaussian spectral model of two heralded photons meeting on a 50:50
// beamsplitter. Widths are the delta-omega parameters of amplitude Gaussians
// exp[-(w - w0)^2 / (4 dw^2)], i.e. standard deviations of the intensity
// spectra, in rad/s.

#include <optional>
#include <span>
#include <vector>

namespace entx {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct SpectralParams {
  double domega_p = 0.0;  // pump
  double domega_v = 0.0;  // visible filter
  double domega_t = 0.0;  // telecom filter
  // Center angular frequencies; they drop out of every observable here.
  std::optional<double> omega_p;
  std::optional<double> omega_v;
  std::optional<double> omega_t;
};

// Throws DomainError unless all widths (and any given centers) are positive.
void validate(const SpectralParams& p);

// Laboratory description of the source: pump pulse duration and the two
// interference filters, all as intensity FWHM.
struct LabSettings {
  double pump_fwhm_s = 397e-15;
  std::optional<double> pump_center_m = 519e-9;
  double visible_center_m = 780e-9;
  double visible_fwhm_m = 3e-9;
  double telecom_center_m = 1551e-9;
  double telecom_fwhm_m = 10e-9;
};

// (2 pi c dl / l^2) / (2 sqrt(2 ln 2)).
double domega_from_filter(double center_wavelength_m, double fwhm_bandwidth_m);

// Transform-limited Gaussian pulse: (2 pi * (2 ln 2 / pi) / dt) / (2 sqrt(2 ln 2)).
double domega_from_pulse(double fwhm_duration_s);

SpectralParams from_lab(const LabSettings& lab);

class HomQuery {
 public:
  static HomQuery delay(double tau_s);
  static HomQuery path(double path_m);

  double tau() const { return tau_; }
  double path_length() const { return tau_ * kSpeedOfLight; }

 private:
  explicit HomQuery(double tau) : tau_(tau) {}
  double tau_;
};

double hom_visibility(const SpectralParams& p);

// Normalized four-fold coincidence, 1 - V exp[-dv^2 dp^2 tau^2 / (dv^2 + dp^2)].
double hom_coincidence(const SpectralParams& p, double tau_s);
std::vector<double> hom_curve(const SpectralParams& p, std::span<const HomQuery> taus);

// Dip FWHM expressed as a path-length difference, in meters.
double hom_fwhm_path(const SpectralParams& p);

struct QuadratureOptions {
  double abs_tol = 1e-8;      // on each integral, in units of (1e12 rad/s)^k
  int initial_points = 32;    // per axis
  int max_points = 1024;      // per axis
  double box_sigmas = 10.0;   // half-width of the integration box
};

// Coincidence from direct quadrature of the frequency integrals over the
// joint amplitude Phi(w, w') and the beamsplitter transformation, normalized
// by the distinguishable-photon rate. Throws QuadratureError with the last
// estimate if the refinement budget is exhausted.
double hom_numeric_oracle(const SpectralParams& p, double tau_s,
                          const QuadratureOptions& opts = {});

}  // namespace entx

#endif  // ENTX_SPECTRAL_HPP
