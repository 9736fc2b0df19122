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

#include "tnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tnls/fft.hpp"
#include "tnls/trajectory.hpp"

namespace tnls {
namespace {

std::size_t slot(int n, std::size_t grid) {
  const auto m = static_cast<long long>(grid);
  long long r = static_cast<long long>(n) % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

double bracket(int n) { return 1.0 + std::abs(static_cast<double>(n)); }

}  // namespace

TorusField::TorusField(int max_mode) : max_mode_(max_mode) {
  if (max_mode < 0) throw std::invalid_argument("TorusField: negative max_mode");
  coeffs_.assign(static_cast<std::size_t>(2 * max_mode + 1), Complex{});
}

TorusField::TorusField(int max_mode, std::vector<Complex> coeffs)
    : max_mode_(max_mode), coeffs_(std::move(coeffs)) {
  if (max_mode < 0) throw std::invalid_argument("TorusField: negative max_mode");
  if (coeffs_.size() != static_cast<std::size_t>(2 * max_mode + 1)) {
    throw std::invalid_argument("TorusField: expected " + std::to_string(2 * max_mode + 1) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("TorusField: non-finite coefficient");
    }
  }
}

TorusField TorusField::single_mode(int max_mode, int n, Complex amplitude) {
  if (std::abs(n) > max_mode) throw std::invalid_argument("single_mode: mode outside band");
  std::vector<Complex> c(static_cast<std::size_t>(2 * max_mode + 1));
  c[static_cast<std::size_t>(n + max_mode)] = amplitude;
  return TorusField(max_mode, std::move(c));
}

TorusField TorusField::with_band(int max_mode) const {
  std::vector<Complex> c(static_cast<std::size_t>(2 * max_mode + 1));
  const int lim = std::min(max_mode, max_mode_);
  for (int n = -lim; n <= lim; ++n) c[static_cast<std::size_t>(n + max_mode)] = (*this)[n];
  return TorusField(max_mode, std::move(c));
}

namespace {

template <typename Op>
TorusField combine(const TorusField& a, const TorusField& b, Op op) {
  const int band = std::max(a.max_mode(), b.max_mode());
  std::vector<Complex> c(static_cast<std::size_t>(2 * band + 1));
  for (int n = -band; n <= band; ++n) c[static_cast<std::size_t>(n + band)] = op(a[n], b[n]);
  return TorusField(band, std::move(c));
}

}  // namespace

TorusField operator+(const TorusField& a, const TorusField& b) {
  return combine(a, b, [](Complex x, Complex y) { return x + y; });
}

TorusField operator-(const TorusField& a, const TorusField& b) {
  return combine(a, b, [](Complex x, Complex y) { return x - y; });
}

TorusField operator*(Complex scale, const TorusField& f) {
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : c) x *= scale;
  return TorusField(f.max_mode(), std::move(c));
}

TorusField conj(const TorusField& f) {
  // conj(u)(x) = sum conj(u_n) e^{-inx}, so mode n takes conj(u_{-n}).
  const int band = f.max_mode();
  std::vector<Complex> c(f.size());
  for (int n = -band; n <= band; ++n) c[static_cast<std::size_t>(n + band)] = std::conj(f[-n]);
  return TorusField(band, std::move(c));
}

std::vector<Complex> synthesize(const TorusField& field, std::size_t grid_points) {
  if (grid_points == 0) throw std::invalid_argument("synthesize: grid_points must be positive");
  std::vector<Complex> grid(grid_points);
  const int band = field.max_mode();
  for (int n = -band; n <= band; ++n) grid[slot(n, grid_points)] += field[n];
  fft::backward(grid);
  return grid;
}

TorusField analyze(std::span<const Complex> samples, int max_mode) {
  if (max_mode < 0) throw std::invalid_argument("analyze: negative max_mode");
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(2 * max_mode + 1)) {
    throw std::invalid_argument("analyze: " + std::to_string(m) + " samples cannot resolve " +
                                std::to_string(2 * max_mode + 1) + " modes");
  }
  std::vector<Complex> work(samples.begin(), samples.end());
  fft::forward(work);
  const double inv = 1.0 / static_cast<double>(m);
  std::vector<Complex> c(static_cast<std::size_t>(2 * max_mode + 1));
  for (int n = -max_mode; n <= max_mode; ++n) {
    c[static_cast<std::size_t>(n + max_mode)] = work[slot(n, m)] * inv;
  }
  return TorusField(max_mode, std::move(c));
}

TorusField project(const TorusField& field, int n_max) {
  if (n_max < 0) throw std::invalid_argument("project: negative cutoff");
  return field.with_band(n_max);
}

double norm(const TorusField& field, const NormSpec& spec) {
  const int band = field.max_mode();
  switch (spec.kind) {
    case NormSpec::Kind::L2:
    case NormSpec::Kind::Sobolev: {
      const double s = spec.kind == NormSpec::Kind::L2 ? 0.0 : spec.s;
      double acc = 0.0;
      for (int n = -band; n <= band; ++n) {
        const double w = s == 0.0 ? 1.0 : std::pow(bracket(n), 2.0 * s);
        acc += w * std::norm(field[n]);
      }
      return std::sqrt(acc);
    }
    case NormSpec::Kind::FourierLebesgue: {
      const double p = spec.p;
      if (!(p >= 1.0)) throw std::invalid_argument("norm: Fourier-Lebesgue exponent p < 1");
      if (!std::isfinite(spec.s)) throw std::invalid_argument("norm: non-finite regularity");
      if (std::isinf(p)) {
        double sup = 0.0;
        for (int n = -band; n <= band; ++n) {
          sup = std::max(sup, std::pow(bracket(n), spec.s) * std::abs(field[n]));
        }
        return sup;
      }
      if (p == 2.0) return norm(field, NormSpec::sobolev(spec.s));
      double acc = 0.0;
      for (int n = -band; n <= band; ++n) {
        acc += std::pow(bracket(n), spec.s * p) * std::pow(std::abs(field[n]), p);
      }
      return std::pow(acc, 1.0 / p);
    }
  }
  return 0.0;
}

double mean_intensity(const TorusField& field) {
  double acc = 0.0;
  for (const auto& c : field.coeffs()) acc += std::norm(c);
  return acc;
}

Complex pairing(const TorusField& f, const TorusField& g) {
  const int band = std::min(f.max_mode(), g.max_mode());
  Complex acc{};
  for (int n = -band; n <= band; ++n) acc += f[n] * std::conj(g[n]);
  return kTwoPi * acc;
}

double l2_physical(const TorusField& f) { return std::sqrt(kTwoPi * mean_intensity(f)); }

std::size_t fast_fft_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

std::size_t quadrature_grid_size(int max_mode) {
  return fast_fft_size(static_cast<std::size_t>(2 * (2 * max_mode + 1)));
}

double integral_abs_pow(const TorusField& field, int p) {
  if (p <= 0 || p % 2 != 0) throw std::invalid_argument("integral_abs_pow: p must be even");
  const int band = field.max_mode();
  // |u|^p has band p*N; the rectangle rule is exact for trig polynomials of
  // degree below the grid size.
  const std::size_t m = std::max(quadrature_grid_size(band),
                                 fast_fft_size(static_cast<std::size_t>(p * band + 1)));
  const auto grid = synthesize(field, m);
  double acc = 0.0;
  for (const auto& u : grid) {
    const double a = std::norm(u);
    acc += std::pow(a, p / 2);
  }
  return kTwoPi * acc / static_cast<double>(m);
}

namespace {

double spacetime_norm(const Trajectory& traj, int p) {
  if (traj.size() < 2) throw std::invalid_argument("spacetime norm: need at least two snapshots");
  const double dt = traj.times[1] - traj.times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("spacetime norm: times must increase");
  const double span = traj.times.back() - traj.times.front();
  const double tol = 1e-9 * std::max(1.0, std::abs(span));
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double step = traj.times[k] - traj.times[k - 1];
    if (std::abs(step - dt) > tol) {
      throw std::invalid_argument("spacetime norm: non-uniform time grid");
    }
  }
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    acc += dt * integral_abs_pow(traj.snapshots[k], p);
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace

double spacetime_l4_norm(const Trajectory& traj) { return spacetime_norm(traj, 4); }
double spacetime_l6_norm(const Trajectory& traj) { return spacetime_norm(traj, 6); }

}  // namespace tnls
