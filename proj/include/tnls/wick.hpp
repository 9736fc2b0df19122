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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tnls/field.hpp"

namespace tnls::wick {

inline constexpr int kMaxHermiteDegree = 50;

/// H_n(x; sigma) from H_{k+1} = x H_k - sigma k H_{k-1}, H_0 = 1, H_1 = x.
/// Throws std::invalid_argument for sigma <= 0, n < 0 or n > kMaxHermiteDegree.
double hermite(int n, double x, double sigma = 1.0);

/// :|g|^2: = |g|^2 - var.
double wick_abs_square(std::complex<double> g, double var);

/// :|g|^4: = |g|^4 - 4 var |g|^2 + 2 var^2.
double wick_abs_fourth(std::complex<double> g, double var);

/// :|g|^{2n}: as a polynomial in |g|^2 for a complex Gaussian with
/// E|g|^2 = variance. coeffs[k] multiplies |g|^{2k}; coeffs[n] == 1.
struct WickPolynomial {
  int degree = 0;
  double variance = 1.0;
  std::vector<double> coeffs;

  double operator()(std::complex<double> g) const;
};

/// Closed form (-1)^n n! V^n L_n(|g|^2 / V) with L_n the Laguerre polynomial.
WickPolynomial wick_polynomial(int n, double variance);

/// sum_{|n| <= N} 1 / (1 + |n|^{2 alpha}), summed directly. 0^0 is taken as 1.
double a_N(int N, double alpha);

/// The planar-torus constant sum_{n in Z^2, |n| <= N} 1 / (1 + |n|^2) with
/// the Euclidean |n|. Grows like 2 pi log N, unlike the one-dimensional
/// a_N(N, 1), which converges. Rows are summed in closed form.
double a_N_planar(int N);

/// mean_intensity(P_N field) - a_N(N, alpha).
double c_N(const TorusField& field, int N, double alpha);

/// 1/2 int |d_x u^N|^2 + sign/4 int (|u^N|^4 - 4 a_N |u^N|^2 + 2 a_N^2), u^N = P_N field.
double wick_hamiltonian(const TorusField& field, int N, double alpha, int sign);

/// One term coeff * prod_j H_{orders[j]}(x_j) of a homogeneous chaos.
struct ChaosTerm {
  double coeff = 1.0;
  std::vector<int> orders;
};

struct HypercontractivityConfig {
  std::vector<ChaosTerm> terms;  ///< all terms must share one total order n
  double q = 4.0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct HypercontractivityReport {
  int n = 0;
  int d = 0;
  double q = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;      ///< empirical ||F||_q
  double rhs = 0.0;      ///< (q - 1)^{n/2} ||F||_2
  double l2 = 0.0;       ///< empirical ||F||_2
  double std_error = 0.0;  ///< relative standard error of lhs / ||F||_2
  bool pass = false;
};

/// Monte-Carlo check of ||F||_q <= (q-1)^{n/2} ||F||_2 under the standard
/// Gaussian measure on R^d. Sums are reduced over a fixed partition, so the
/// result is bit-identical for any thread count.
/// Throws std::invalid_argument for q < 2, fewer than 1e4 samples, an empty or
/// inhomogeneous combination, or a negative order.
HypercontractivityReport hypercontractivity_check(const HypercontractivityConfig& cfg);

struct CheckResult {
  std::string name;
  double value = 0.0;      ///< measured deviation or statistic
  double threshold = 0.0;  ///< pass iff value <= threshold
  bool pass = false;
};

/// Hermite and Wick identities evaluated with the supplied variance
/// parameter against standard complex Gaussians (true variance 2). Feeding a
/// wrong variance makes the Wick checks fail.
std::vector<CheckResult> identity_suite(double variance, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads = 1);

}  // namespace tnls::wick
