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

#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance suite. Nothing here calls the FFT path of the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tnls/field.hpp"

namespace tnls::oracle {

inline double max_abs_diff(const TorusField& a, const TorusField& b) {
  const int band = std::max(a.max_mode(), b.max_mode());
  double d = 0.0;
  for (int n = -band; n <= band; ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

inline double max_abs(const TorusField& a) { return max_abs_diff(a, TorusField(0)); }

/// Field with i.i.d. complex coefficients of modulus <= 1 from std::mt19937_64,
/// unrelated to the library's Philox streams.
inline TorusField random_field(int max_mode, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(2 * max_mode + 1));
  for (auto& v : c) v = scale * Complex(u(gen), u(gen));
  return TorusField(max_mode, std::move(c));
}

/// sum_{n = n1 - n2 + n3} u(n1) conj(u(n2)) u(n3), optionally dropping the
/// resonant triples n2 = n1 or n2 = n3. O(N^3).
inline TorusField triple_sum(const TorusField& u, bool non_resonant_only) {
  const int N = u.max_mode();
  std::vector<Complex> out(static_cast<std::size_t>(6 * N + 1));
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        if (non_resonant_only && (n2 == n1 || n2 == n3)) continue;
        out[static_cast<std::size_t>(n1 - n2 + n3 + 3 * N)] += u[n1] * std::conj(u[n2]) * u[n3];
      }
  return TorusField(3 * N, std::move(out));
}

/// int_0^{2 pi} |u(x)|^p dx by a direct O(M N) sum of the trigonometric series
/// on M > p N points: the trapezoid rule is exact for trigonometric
/// polynomials of degree < M.
inline double integral_abs_pow_direct(const TorusField& u, int p) {
  const int N = u.max_mode();
  const int M = p * N + 1 + 8;
  double acc = 0.0;
  for (int j = 0; j < M; ++j) {
    const double x = kTwoPi * j / M;
    Complex v{};
    for (int n = -N; n <= N; ++n) v += u[n] * std::polar(1.0, n * x);
    acc += std::pow(std::abs(v), p);
  }
  return acc * kTwoPi / M;
}

/// Direct sum of sum_{|n| <= N} 1 / (1 + |n|^{2 alpha}) in ascending order.
inline double a_N_direct(int N, double alpha) {
  double acc = 1.0;
  for (int n = 1; n <= N; ++n) acc += 2.0 / (1.0 + std::pow(n, 2.0 * alpha));
  return acc;
}

/// Brute-force lattice sum over the disc |n| <= N in Z^2.
inline double a_N_planar_direct(int N) {
  double acc = 0.0;
  const long long NN = static_cast<long long>(N) * N;
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b)
      if (static_cast<long long>(a) * a + static_cast<long long>(b) * b <= NN) acc += 1.0 / (1.0 + a * a + b * b);
  return acc;
}

/// Probabilists' Hermite polynomial with variance sigma from the explicit sum
/// H_n(x; s) = n! sum_k (-s/2)^k x^{n-2k} / (k! (n-2k)!).
inline double hermite_explicit(int n, double x, double sigma) {
  double acc = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    acc += std::pow(-0.5 * sigma, k) * std::pow(x, n - 2 * k) / (std::tgamma(k + 1.0) * std::tgamma(n - 2 * k + 1.0));
  }
  return acc * std::tgamma(n + 1.0);
}

}  // namespace tnls::oracle
