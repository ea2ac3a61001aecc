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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "entx/errors.hpp"
#include "entx/spectral.hpp"

namespace entx {
namespace {

constexpr double kC = 299792458.0;

SpectralParams rounded() { return SpectralParams{3.0e12, 3.9e12, 3.3e12, {}, {}, {}}; }

// Plug-in of the closed-form dip, written out independently.
double dip_oracle(double p, double v, double t, double tau) {
  const double p2 = p * p, v2 = v * v, t2 = t * t;
  const double vis = std::sqrt(p2 * (p2 + v2 + t2) / ((v2 + p2) * (t2 + p2)));
  return 1.0 - vis * std::exp(-v2 * p2 * tau * tau / (v2 + p2));
}

TEST(Widths, FilterConversions) {
  EXPECT_NEAR(domega_from_filter(780e-9, 3e-9) / 3.9e12, 1.0, 0.02);
  EXPECT_NEAR(domega_from_filter(1551e-9, 10e-9) / 3.3e12, 1.0, 0.02);
  EXPECT_LT(domega_from_filter(780e-9, 1e-15), 1e7);
  // Hand value: 2 pi c dl / l^2 / (2 sqrt(2 ln 2)).
  const double expect = 2 * M_PI * kC * 3e-9 / (780e-9 * 780e-9) / (2 * std::sqrt(2 * std::log(2.0)));
  EXPECT_NEAR(domega_from_filter(780e-9, 3e-9), expect, expect * 1e-14);
  EXPECT_THROW(domega_from_filter(0.0, 3e-9), DomainError);
  EXPECT_THROW(domega_from_filter(780e-9, -1e-9), DomainError);
}

TEST(Widths, PulseConversion) {
  const double d = domega_from_pulse(397e-15);
  EXPECT_NEAR(d / 3.0e12, 1.0, 0.02);
  EXPECT_NEAR(domega_from_pulse(198.5e-15) / d, 2.0, 1e-12);
  EXPECT_LT(domega_from_pulse(1e3), 1e-2);
  EXPECT_THROW(domega_from_pulse(0.0), DomainError);
  EXPECT_THROW(domega_from_pulse(-1e-15), DomainError);
}

TEST(Widths, FromLabDefaults) {
  const SpectralParams p = from_lab(LabSettings{});
  EXPECT_NEAR(p.domega_p / 3.0e12, 1.0, 0.02);
  EXPECT_NEAR(p.domega_v / 3.9e12, 1.0, 0.02);
  EXPECT_NEAR(p.domega_t / 3.3e12, 1.0, 0.02);
  EXPECT_NEAR(hom_visibility(p), 0.80, 0.01);
  EXPECT_NEAR(hom_fwhm_path(p), 210e-6, 5e-6);
}

TEST(Visibility, RoundedParams) {
  const double v = hom_visibility(rounded());
  EXPECT_NEAR(v, 0.80, 0.01);
  EXPECT_NEAR(v, 0.810, 5e-4);
}

TEST(Visibility, Limits) {
  SpectralParams p = rounded();
  p.domega_p = 1e20;
  EXPECT_NEAR(hom_visibility(p), 1.0, 1e-9);
  p.domega_p = 1e3;
  EXPECT_LT(hom_visibility(p), 1e-8);
  p.domega_p = 0.0;
  EXPECT_THROW(hom_visibility(p), DomainError);
}

TEST(Visibility, RangeAndExchangeSymmetry) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(0.1e12, 20e12);
  for (int trial = 0; trial < 200; ++trial) {
    const SpectralParams p{w(rng), w(rng), w(rng), {}, {}, {}};
    const SpectralParams q{p.domega_p, p.domega_t, p.domega_v, {}, {}, {}};
    const double v = hom_visibility(p);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_NEAR(v, hom_visibility(q), 1e-14);
  }
}

TEST(Curve, ReferencePointsAndLimits) {
  const SpectralParams p = rounded();
  EXPECT_NEAR(hom_coincidence(p, 0.0), 0.190, 5e-4);
  EXPECT_NEAR(hom_coincidence(p, 0.0), dip_oracle(3.0e12, 3.9e12, 3.3e12, 0.0), 1e-14);
  EXPECT_NEAR(hom_coincidence(p, 1e-9), 1.0, 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tau(-3e-12, 3e-12);
  for (int i = 0; i < 100; ++i) {
    const double t = tau(rng);
    EXPECT_NEAR(hom_coincidence(p, t), hom_coincidence(p, -t), 1e-15);
    EXPECT_NEAR(hom_coincidence(p, t), dip_oracle(3.0e12, 3.9e12, 3.3e12, t), 1e-13);
    EXPECT_GE(hom_coincidence(p, t), hom_coincidence(p, 0.0));
  }
}

TEST(Curve, QueriesByDelayOrPath) {
  const SpectralParams p = rounded();
  const std::vector<HomQuery> q = {HomQuery::delay(0.0), HomQuery::path(100e-6),
                                   HomQuery::delay(100e-6 / kC)};
  const auto out = hom_curve(p, q);
  ASSERT_EQ(out.size(), 3U);
  EXPECT_NEAR(out[0], 1.0 - hom_visibility(p), 1e-15);
  EXPECT_NEAR(out[1], out[2], 1e-15);
  EXPECT_NEAR(q[1].path_length(), 100e-6, 1e-18);
  EXPECT_THROW(HomQuery::delay(std::nan("")), DomainError);
}

TEST(Fwhm, RoundedParams) { EXPECT_NEAR(hom_fwhm_path(rounded()) / 210e-6, 1.0, 0.02); }

TEST(Fwhm, SymmetricCaseAndScaling) {
  const double d = 2.5e12;
  const SpectralParams p{d, d, 4e12, {}, {}, {}};
  EXPECT_NEAR(hom_fwhm_path(p), kC * 2 * std::sqrt(2 * std::log(2.0)) / d, 1e-18);
  const SpectralParams q = rounded();
  const SpectralParams q2{2 * q.domega_p, 2 * q.domega_v, q.domega_t, {}, {}, {}};
  EXPECT_NEAR(hom_fwhm_path(q2), hom_fwhm_path(q) / 2, 1e-18);
}

TEST(Fwhm, IsTheHalfDepthWidth) {
  // Half-depth points of the dip, located independently by bisection.
  const SpectralParams p = rounded();
  const double depth = hom_visibility(p);
  auto f = [&](double tau) { return 1.0 - hom_coincidence(p, tau) - depth / 2; };
  double lo = 0.0, hi = 5e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(2 * lo * kC, hom_fwhm_path(p), 1e-12);
}

TEST(CenterFrequencies, DoNotMatter) {
  SpectralParams p = rounded();
  const double v = hom_visibility(p);
  const double c = hom_coincidence(p, 0.3e-12);
  const double f = hom_fwhm_path(p);
  const double o = hom_numeric_oracle(p, 0.3e-12);
  p.omega_p = 3.63e15;
  p.omega_v = 2.41e15;
  p.omega_t = 1.21e15;
  EXPECT_EQ(hom_visibility(p), v);
  EXPECT_EQ(hom_coincidence(p, 0.3e-12), c);
  EXPECT_EQ(hom_fwhm_path(p), f);
  EXPECT_NEAR(hom_numeric_oracle(p, 0.3e-12), o, 1e-9);
  p.omega_v = -1.0;
  EXPECT_THROW(hom_visibility(p), DomainError);
}

TEST(Oracle, ReferencePoints) {
  const SpectralParams p = rounded();
  EXPECT_NEAR(hom_numeric_oracle(p, 0.0), hom_coincidence(p, 0.0), 1e-6);
  EXPECT_NEAR(hom_numeric_oracle(p, 1e-12), hom_coincidence(p, 1e-12), 1e-6);
  const SpectralParams s{3e12, 3e12, 3e12, {}, {}, {}};
  EXPECT_NEAR(hom_numeric_oracle(s, 0.0), 1.0 - std::sqrt(3.0) / 2.0, 1e-6);
}

TEST(Oracle, FiveByFiveGrid) {
  const std::vector<double> widths = {1e12, 2.25e12, 3.5e12, 4.75e12, 6e12};
  const std::vector<double> taus = {0.0, 0.2e-12, -0.2e-12, 1e-12, -1e-12};
  for (double wp : widths)
    for (double wv : widths)
      for (double wt : widths)
        for (double tau : taus) {
          const SpectralParams p{wp, wv, wt, {}, {}, {}};
          const double closed = hom_coincidence(p, tau);
          EXPECT_LE(std::abs(hom_numeric_oracle(p, tau) - closed), 1e-6 * closed)
              << wp << ' ' << wv << ' ' << wt << ' ' << tau;
        }
}

TEST(Oracle, ReportsNonConvergence) {
  QuadratureOptions o;
  o.max_points = 32;
  o.abs_tol = 1e-30;
  try {
    hom_numeric_oracle(rounded(), 0.5e-12, o);
    FAIL() << "expected a quadrature error";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
    EXPECT_NEAR(e.estimate(), hom_coincidence(rounded(), 0.5e-12), 1e-2);
  }
}

}  // namespace
}  // namespace entx
