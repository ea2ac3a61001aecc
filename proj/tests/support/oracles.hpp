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

// Test-side reference implementations. Everything here is written with plain
// index loops so it shares no code paths with the library under test.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "entx/qdm.hpp"

namespace entx::testing {

using C = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

inline int bit(std::size_t index, int mode, int n) {  // mode is 1-based, mode 1 = MSB
  return static_cast<int>((index >> (n - mode)) & 1U);
}

// Ginibre construction: G G^dag / Tr, with G of shape dim x rank.
inline CMatrix random_density_matrix(int n, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix m(dim, rank);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (int c = 0; c < rank; ++c) m(r, c) = C(g(rng), g(rng));
  }
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline DensityOp random_density(int n, std::mt19937_64& rng, int rank = -1) {
  if (rank < 0) rank = 1 << n;
  return DensityOp::from_matrix(random_density_matrix(n, rank, rng));
}

inline CVector random_amplitudes(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(Eigen::Index{1} << n);
  for (auto& x : v) x = C(g(rng), g(rng));
  return v / v.norm();
}

inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Trace out the listed 1-based modes of an n-mode operator.
inline CMatrix naive_partial_trace(const CMatrix& rho, int n, const std::vector<int>& discard) {
  std::vector<int> keep;
  for (int m = 1; m <= n; ++m) {
    bool drop = false;
    for (int d : discard) drop = drop || d == m;
    if (!drop) keep.push_back(m);
  }
  const std::size_t kd = std::size_t{1} << keep.size();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t y = 0; y < dim; ++y) {
      bool same = true;
      for (int d : discard) same = same && bit(x, d, n) == bit(y, d, n);
      if (!same) continue;
      std::size_t rx = 0, ry = 0;
      for (int m : keep) {
        rx = (rx << 1) | static_cast<std::size_t>(bit(x, m, n));
        ry = (ry << 1) | static_cast<std::size_t>(bit(y, m, n));
      }
      out(static_cast<Eigen::Index>(rx), static_cast<Eigen::Index>(ry)) +=
          rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
  }
  return out;
}

inline int weight_hv(std::size_t index, int n, const std::vector<int>& modes) {
  int k = 0;
  for (int m : modes) k += bit(index, m, n) == 0 ? 1 : -1;
  return k;
}

// Phase average of the basis element |x><y| under the collective rotation:
// the factor exp(-i theta (k_x - k_y) / 2) averaged over the given angles.
inline CMatrix phase_average(const CMatrix& rho, int n, const std::vector<int>& modes,
                             const std::vector<double>& thetas) {
  CMatrix out = rho;
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t y = 0; y < dim; ++y) {
      const int dk = weight_hv(x, n, modes) - weight_hv(y, n, modes);
      C f = 0.0;
      for (double t : thetas) f += std::exp(C(0.0, -t * dk / 2.0));
      f /= static_cast<double>(thetas.size());
      out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) *= f;
    }
  }
  return out;
}

inline CMatrix phase_mask(const CMatrix& rho, int n, const std::vector<int>& modes) {
  CMatrix out = rho;
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      if (weight_hv(x, n, modes) != weight_hv(y, n, modes))
        out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = 0.0;
  return out;
}

inline std::size_t index_of(const char* labels) {
  std::size_t x = 0;
  for (const char* p = labels; *p; ++p) x = (x << 1) | (*p == 'V' ? 1U : 0U);
  return x;
}

// |a><b| for computational labels such as "HHVV".
inline CMatrix ketbra(const char* a, const char* b) {
  int n = 0;
  while (a[n]) ++n;
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index_of(a)), static_cast<Eigen::Index>(index_of(b))) = 1.0;
  return m;
}

inline CVector phi_plus_vector(int sign = +1) {
  CVector v = CVector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = sign / std::sqrt(2.0);
  return v;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Brute-force extraction protocol on a four-mode input (modes 1,2,3,4), written
// with explicit index loops. Returns the unnormalized (2,5) operator for the
// requested branch; its trace is the branch probability.
inline CMatrix brute_branch(const CMatrix& rho1234, int alice, int bob, double v,
                            bool feedforward) {
  // Merge: <a, m2, m4| K |m1 m2 m3 m4> = [(a=m1=H, m3=V) + alice (a=m1=V, m3=H)] / sqrt(2).
  CMatrix k = CMatrix::Zero(8, 16);
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2)
      for (int m3 = 0; m3 < 2; ++m3)
        for (int m4 = 0; m4 < 2; ++m4) {
          if (m1 == m3) continue;
          const int in = (m1 << 3) | (m2 << 2) | (m3 << 1) | m4;
          const int out = (m1 << 2) | (m2 << 1) | m4;  // output register (5, 2, 4)
          k(out, in) = (m1 == 0 ? 1.0 : static_cast<double>(alice)) / std::sqrt(2.0);
        }
  CMatrix r = k * rho1234 * k.adjoint();
  // Partial distinguishability: coherences across the merged qubit shrink by v.
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      if (((x >> 2) & 1) != ((y >> 2) & 1)) r(x, y) *= v;
  // Bob's projection on mode 4 (last register bit), then trace it out.
  CMatrix pair = CMatrix::Zero(4, 4);  // ordered (5, 2) for now
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      for (int bx = 0; bx < 2; ++bx)
        for (int by = 0; by < 2; ++by) {
          if ((x & 1) != bx || (y & 1) != by) continue;
          const double cx = (bx == 0 ? 1.0 : static_cast<double>(bob)) / std::sqrt(2.0);
          const double cy = (by == 0 ? 1.0 : static_cast<double>(bob)) / std::sqrt(2.0);
          pair(x >> 1, y >> 1) += cx * r(x, y) * cy;
        }
  // Reorder to (2, 5) and optionally apply Z on mode 2.
  CMatrix out = CMatrix::Zero(4, 4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const int sx = ((x & 1) << 1) | (x >> 1);
      const int sy = ((y & 1) << 1) | (y >> 1);
      double f = 1.0;
      if (feedforward) f = ((sx >> 1) ? -1.0 : 1.0) * ((sy >> 1) ? -1.0 : 1.0);
      out(sx, sy) = f * pair(x, y);
    }
  return out;
}

}  // namespace entx::testing
