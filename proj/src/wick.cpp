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

#include "tnls/wick.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tnls/montecarlo.hpp"
#include "tnls/rng.hpp"

namespace tnls::wick {

double hermite(int n, double x, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("hermite: sigma must be positive");
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  if (n > kMaxHermiteDegree) throw std::invalid_argument("hermite: degree above 50");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - sigma * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double wick_abs_square(std::complex<double> g, double var) { return std::norm(g) - var; }

double wick_abs_fourth(std::complex<double> g, double var) {
  const double a = std::norm(g);
  return a * a - 4.0 * var * a + 2.0 * var * var;
}

double WickPolynomial::operator()(std::complex<double> g) const {
  const double a = std::norm(g);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * a + *it;
  return acc;
}

WickPolynomial wick_polynomial(int n, double variance) {
  if (n < 0) throw std::invalid_argument("wick_polynomial: negative degree");
  if (!(variance > 0.0)) throw std::invalid_argument("wick_polynomial: variance must be positive");
  // (-1)^n n! V^n L_n(a/V) = sum_k (-1)^{n-k} binom(n,k) n!/k! V^{n-k} a^k
  WickPolynomial p{n, variance, std::vector<double>(static_cast<std::size_t>(n + 1))};
  for (int k = 0; k <= n; ++k) {
    double c = 1.0;
    for (int j = k + 1; j <= n; ++j) c *= static_cast<double>(j) * j / (j - k) * variance;
    p.coeffs[static_cast<std::size_t>(k)] = ((n - k) % 2 == 0) ? c : -c;
  }
  return p;
}

double a_N(int N, double alpha) {
  if (N < 0) throw std::invalid_argument("a_N: negative truncation");
  double acc = 1.0 / (1.0 + std::pow(0.0, 2.0 * alpha));
  for (int n = N; n >= 1; --n) acc += 2.0 / (1.0 + std::pow(static_cast<double>(n), 2.0 * alpha));
  return acc;
}

namespace {

// sum_{n >= a} 1 / (n^2 + b2): an explicit head, then Euler-Maclaurin.
double row_tail(long long a, double b2) {
  constexpr long long kHead = 64;
  double acc = 0.0;
  for (long long n = a; n < a + kHead; ++n) acc += 1.0 / (static_cast<double>(n) * static_cast<double>(n) + b2);
  const double x = static_cast<double>(a + kHead);
  const double b = std::sqrt(b2);
  const double d = x * x + b2;
  acc += (0.5 * M_PI - std::atan(x / b)) / b;  // integral
  acc += 0.5 / d;                              // f / 2
  acc += 2.0 * x / (12.0 * d * d);             // -f' / 12
  acc -= 24.0 * x * (x * x - b2) / (720.0 * d * d * d * d);  // f''' / 720
  return acc;
}

}  // namespace

double a_N_planar(int N) {
  if (N < 0) throw std::invalid_argument("a_N_planar: negative truncation");
  const long long NN = static_cast<long long>(N) * N;
  double acc = 0.0;
  for (int n1 = N; n1 >= -N; --n1) {
    const long long r2 = NN - static_cast<long long>(n1) * n1;
    auto k = static_cast<long long>(std::sqrt(static_cast<double>(r2)));
    while (k * k > r2) --k;
    while ((k + 1) * (k + 1) <= r2) ++k;
    const double b2 = 1.0 + static_cast<double>(n1) * n1;
    const double b = std::sqrt(b2);
    // sum over all n2 is (pi / b) coth(pi b)
    acc += M_PI / (b * std::tanh(M_PI * b)) - 2.0 * row_tail(k + 1, b2);
  }
  return acc;
}

double c_N(const TorusField& field, int N, double alpha) {
  return mean_intensity(project(field, N)) - a_N(N, alpha);
}

double wick_hamiltonian(const TorusField& field, int N, double alpha, int sign) {
  const TorusField u = project(field, N);
  const double a = a_N(N, alpha);
  double kinetic = 0.0;
  for (int n = -N; n <= N; ++n) kinetic += static_cast<double>(n) * n * std::norm(u[n]);
  kinetic *= 0.5 * kTwoPi;
  const double quartic = integral_abs_pow(u, 4) - 4.0 * a * kTwoPi * mean_intensity(u) +
                         2.0 * a * a * kTwoPi;
  return kinetic + 0.25 * static_cast<double>(sign) * quartic;
}

HypercontractivityReport hypercontractivity_check(const HypercontractivityConfig& cfg) {
  if (!(cfg.q >= 2.0)) throw std::invalid_argument("hypercontractivity_check: q must be >= 2");
  if (cfg.samples < 10'000) throw std::invalid_argument("hypercontractivity_check: need >= 1e4 samples");
  if (cfg.terms.empty()) throw std::invalid_argument("hypercontractivity_check: empty chaos combination");
  int order = -1;
  std::size_t dim = 0;
  for (const auto& t : cfg.terms) {
    if (t.orders.empty()) throw std::invalid_argument("hypercontractivity_check: term without orders");
    int total = 0;
    for (int o : t.orders) {
      if (o < 0) throw std::invalid_argument("hypercontractivity_check: negative order");
      total += o;
    }
    if (order >= 0 && total != order) {
      throw std::invalid_argument("hypercontractivity_check: terms of different chaos order");
    }
    order = total;
    dim = std::max(dim, t.orders.size());
  }

  const rng::Stream stream(cfg.seed, rng::kTagGaussian);
  const std::uint64_t blocks = (dim + 1) / 2;
  const double q = cfg.q;
  auto sums = mc::reduce<2>(cfg.samples, cfg.threads, [&](std::uint64_t i) {
    std::vector<double> x(2 * blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const auto z = stream.normals(i * blocks + b);
      x[2 * b] = z[0];
      x[2 * b + 1] = z[1];
    }
    double f = 0.0;
    for (const auto& t : cfg.terms) {
      double prod = t.coeff;
      for (std::size_t j = 0; j < t.orders.size(); ++j) prod *= hermite(t.orders[j], x[j]);
      f += prod;
    }
    const double f2 = f * f;
    const double fq = q == 2.0 ? f2 : std::pow(std::abs(f), q);
    return std::array<double, 2>{fq, f2};
  });

  HypercontractivityReport r;
  r.n = order;
  r.d = static_cast<int>(dim);
  r.q = q;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  const double mq = sums.mean(0);
  const double m2 = sums.mean(1);
  r.lhs = std::pow(mq, 1.0 / q);
  r.l2 = std::sqrt(m2);
  r.rhs = std::pow(q - 1.0, 0.5 * order) * r.l2;
  const double rel_q = mq > 0.0 ? sums.std_error(0) / (q * mq) : 0.0;
  const double rel_2 = m2 > 0.0 ? sums.std_error(1) / (2.0 * m2) : 0.0;
  r.std_error = std::hypot(rel_q, rel_2);
  r.pass = r.lhs <= r.rhs * (1.0 + 3.0 * r.std_error + 1e-12);
  return r;
}

namespace {

CheckResult below(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value <= threshold};
}

}  // namespace

std::vector<CheckResult> identity_suite(double variance, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads) {
  std::vector<CheckResult> out;

  // Closed forms at integer points, where every operation is exact.
  double h2_dev = 0.0, h4_dev = 0.0;
  for (int xi = -5; xi <= 5; ++xi) {
    const double x = xi;
    for (double sigma : {0.5, 1.0, 2.0}) h2_dev = std::max(h2_dev, std::abs(hermite(2, x, sigma) - (x * x - sigma)));
    h4_dev = std::max(h4_dev, std::abs(hermite(4, x) - (x * x * x * x - 6.0 * x * x + 3.0)));
  }
  out.push_back(below("hermite_h2_closed_form", h2_dev, 0.0));
  out.push_back(below("hermite_h4_closed_form", h4_dev, 0.0));

  // Generating function e^{tx - sigma t^2 / 2} = sum_n H_n(x; sigma) t^n / n!.
  double gen_dev = 0.0;
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    // Twelve terms leave a remainder near 1e-7 once sigma reaches 2 at |t| = 1/2.
    for (double sigma : {0.25, 0.5, 1.0}) {
      for (double t = -0.5; t <= 0.5; t += 0.125) {
        double series = 0.0, fact = 1.0, tp = 1.0;
        for (int n = 0; n <= 12; ++n) {
          if (n > 0) {
            fact *= n;
            tp *= t;
          }
          series += hermite(n, x, sigma) * tp / fact;
        }
        gen_dev = std::max(gen_dev, std::abs(series - std::exp(t * x - 0.5 * sigma * t * t)));
      }
    }
  }
  out.push_back(below("hermite_generating_function", gen_dev, 1e-8));

  const rng::Stream stream(seed, rng::kTagGaussian);
  // Observables: :|g|^2:, :|g|^4:, then H_m H_n products for the
  // orthogonality table.
  constexpr int kMaxOrder = 4;
  constexpr std::size_t kPairs = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;
  constexpr std::size_t K = 2 + kPairs;
  auto sums = mc::reduce<K>(samples, threads, [&](std::uint64_t i) {
    const auto z = stream.normals(i);
    const std::complex<double> g(z[0], z[1]);
    std::array<double, K> v{};
    v[0] = wick_abs_square(g, variance);
    v[1] = wick_abs_fourth(g, variance);
    std::array<double, kMaxOrder + 1> h{};
    for (int n = 0; n <= kMaxOrder; ++n) h[static_cast<std::size_t>(n)] = hermite(n, z[0]);
    std::size_t k = 2;
    for (int m = 0; m <= kMaxOrder; ++m)
      for (int n = m; n <= kMaxOrder; ++n) v[k++] = h[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(n)];
    return v;
  });

  auto zscore = [&](std::size_t k, double expected) {
    const double se = sums.std_error(k);
    const double dev = std::abs(sums.mean(k) - expected);
    return se > 0.0 ? dev / se : (dev == 0.0 ? 0.0 : HUGE_VAL);
  };

  // :|g|^4: = H_4(x) + 2 H_2(x) H_2(y) + H_4(y) pointwise, relative to 1 + |g|^4.
  double g4_max = 0.0;
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(samples, 100'000); ++i) {
    const auto z = stream.normals(i);
    const std::complex<double> g(z[0], z[1]);
    const double chaos = hermite(4, z[0]) + 2.0 * hermite(2, z[0]) * hermite(2, z[1]) + hermite(4, z[1]);
    g4_max = std::max(g4_max, std::abs(wick_abs_fourth(g, variance) - chaos) / (1.0 + std::norm(g) * std::norm(g)));
  }
  out.push_back(below("g4_matches_chaos_expansion", g4_max, 1e-10));
  out.push_back(below("wick_square_zero_mean_z", zscore(0, 0.0), 3.0));
  out.push_back(below("wick_fourth_zero_mean_z", zscore(1, 0.0), 3.0));

  std::size_t k = 2;
  double factorial_m = 1.0;
  for (int m = 0; m <= kMaxOrder; ++m) {
    if (m > 0) factorial_m *= m;
    for (int n = m; n <= kMaxOrder; ++n, ++k) {
      const double expected = (m == n) ? factorial_m : 0.0;
      out.push_back(below("hermite_orthogonality_" + std::to_string(m) + "_" + std::to_string(n) + "_z",
                          zscore(k, expected), 3.0));
    }
  }
  return out;
}

}  // namespace tnls::wick
