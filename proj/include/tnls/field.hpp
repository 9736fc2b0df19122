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
#include <cstddef>
#include <span>
#include <vector>

namespace tnls {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A complex function on the torus R/2piZ stored as its Fourier coefficients
/// on the modes -N..N. Values are immutable; every operation that changes a
/// field returns a new one.
class TorusField {
public:
  /// Zero field on modes -max_mode..max_mode.
  explicit TorusField(int max_mode = 0);

  /// Takes ownership of 2*max_mode+1 coefficients ordered n = -N..N.
  /// Throws std::invalid_argument on a length mismatch or a non-finite value.
  TorusField(int max_mode, std::vector<Complex> coeffs);

  static TorusField single_mode(int max_mode, int n, Complex amplitude);

  int max_mode() const noexcept { return max_mode_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of mode n; zero outside the band.
  Complex operator[](int n) const noexcept {
    return (n < -max_mode_ || n > max_mode_) ? Complex{}
                                             : coeffs_[static_cast<std::size_t>(n + max_mode_)];
  }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Same coefficients zero-extended (or truncated) to a new band.
  TorusField with_band(int max_mode) const;

  bool operator==(const TorusField&) const = default;

private:
  int max_mode_;
  std::vector<Complex> coeffs_;
};

TorusField operator+(const TorusField& a, const TorusField& b);
TorusField operator-(const TorusField& a, const TorusField& b);
TorusField operator*(Complex scale, const TorusField& f);
TorusField conj(const TorusField& f);

/// Which norm `norm` evaluates. Weights use <n> = 1 + |n|.
struct NormSpec {
  enum class Kind { L2, Sobolev, FourierLebesgue };
  Kind kind = Kind::L2;
  double s = 0.0;
  double p = 2.0;

  static NormSpec l2() { return {Kind::L2, 0.0, 2.0}; }
  static NormSpec sobolev(double s) { return {Kind::Sobolev, s, 2.0}; }
  static NormSpec fourier_lebesgue(double s, double p) { return {Kind::FourierLebesgue, s, p}; }
};

/// Samples u(x_j) = sum_n u_n e^{i n x_j}, x_j = 2 pi j / grid_points.
std::vector<Complex> synthesize(const TorusField& field, std::size_t grid_points);

/// Fourier coefficients of uniformly spaced samples, restricted to |n| <= max_mode.
TorusField analyze(std::span<const Complex> samples, int max_mode);

/// Dirichlet projection onto |n| <= n_max. The result has band n_max.
TorusField project(const TorusField& field, int n_max);

/// Coefficient-sum norm (no 2 pi factor).
double norm(const TorusField& field, const NormSpec& spec);

/// Average of |u|^2 over the torus, equal to sum_n |u_n|^2.
double mean_intensity(const TorusField& field);

/// L^2(T) inner product: 2 pi sum_n f_n conj(g_n).
Complex pairing(const TorusField& f, const TorusField& g);

/// Physical L^2 norm sqrt(int |u|^2 dx).
double l2_physical(const TorusField& f);

/// Exact integral of |u|^p over the torus for even p, via a grid fine enough
/// that the rectangle rule is exact for the band-limited integrand.
double integral_abs_pow(const TorusField& field, int p);

/// Smallest grid size >= 2(2N+1) whose factors are 2, 3, 5, 7.
std::size_t quadrature_grid_size(int max_mode);

/// Smallest size >= n with prime factors in {2, 3, 5, 7}.
std::size_t fast_fft_size(std::size_t n);

}  // namespace tnls
