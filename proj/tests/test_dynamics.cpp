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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "tnls/dynamics.hpp"
#include "tnls/wick.hpp"

using namespace tnls;
using doctest::Approx;

namespace {

EquationSpec equation(Variant v, int sign = +1, std::optional<int> truncation = {}) {
  EquationSpec e;
  e.variant = v;
  e.sign = sign;
  e.truncation = truncation;
  return e;
}

IntegratorSpec integrator(Scheme s, double dt, double t_end, int stride = 1) {
  IntegratorSpec i;
  i.scheme = s;
  i.dt = dt;
  i.t_end = t_end;
  i.snapshot_stride = stride;
  return i;
}

double l2_distance(const TorusField& a, const TorusField& b) {
  const int band = std::max(a.max_mode(), b.max_mode());
  return l2_physical(a.with_band(band) - b.with_band(band));
}

}  // namespace

TEST_CASE("nonlinearity on plane waves") {
  const Complex A(0.6, 0.8);
  const TorusField u = std::abs(A) * TorusField::single_mode(3, 2, A / std::abs(A));
  const double a2 = std::norm(A);
  const auto wnls = nonlinearity(u, equation(Variant::WNLS));
  const auto nls = nonlinearity(u, equation(Variant::NLS));
  CHECK(std::abs(wnls[2] + a2 * u[2]) < 1e-14);
  CHECK(std::abs(nls[2] - a2 * u[2]) < 1e-14);
  CHECK(oracle::max_abs_diff(wnls, (-a2) * u) < 1e-14);
}

TEST_CASE("cubic term and resonant split against the triple sum") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const TorusField u = oracle::random_field(seed == 4 ? 16 : 7, seed);
    CHECK(oracle::max_abs_diff(cubic_term(u), oracle::triple_sum(u, false)) < 1e-12);
    const auto [n1, n2] = resonant_split(u);
    CHECK(oracle::max_abs_diff(n1, oracle::triple_sum(u, true)) < 1e-12);
    CHECK(oracle::max_abs_diff(n1 + n2, nonlinearity(u, equation(Variant::WNLS))) < 1e-12);
    for (int n = -u.max_mode(); n <= u.max_mode(); ++n) CHECK(std::abs(n2[n] + std::norm(u[n]) * u[n]) < 1e-14);
  }
  const auto [a, b] = resonant_split(TorusField::single_mode(2, 1, 0.5));
  CHECK(oracle::max_abs(a) < 1e-15);
  CHECK(std::abs(b[1] + 0.125) < 1e-15);
}

TEST_CASE("truncated nonlinearities stay in the band") {
  const TorusField u = oracle::random_field(6, 8);
  const auto f = nonlinearity(u, equation(Variant::TruncatedNLS, +1, 4));
  CHECK(f.max_mode() == 4);
  CHECK(oracle::max_abs_diff(f, project(cubic_term(project(u, 4)), 4)) < 1e-13);
  const double a = wick::a_N(4, 1.0);
  const auto h = nonlinearity(u, equation(Variant::TruncatedWNLSHamiltonian, +1, 4));
  CHECK(oracle::max_abs_diff(h, f - (2.0 * a) * project(u, 4)) < 1e-13);
}

TEST_CASE("linear propagator") {
  const auto u = linear_propagator(TorusField::single_mode(1, 1, 1.0), M_PI);
  CHECK(std::abs(u[1] + 1.0) < 1e-15);
  const TorusField c = TorusField::single_mode(0, 0, Complex(0.3, 0.4));
  CHECK(linear_propagator(c, 12.7) == c);
  const TorusField r = oracle::random_field(9, 4);
  CHECK(oracle::max_abs_diff(linear_propagator(linear_propagator(r, 0.3), 0.45), linear_propagator(r, 0.75)) < 1e-14);
}

TEST_CASE("conserved quantities") {
  const TorusField e1 = TorusField::single_mode(1, 1, 1.0);
  for (int sign : {+1, -1}) {
    const auto q = conserved(e1, sign);
    CHECK(q.mass == Approx(kTwoPi));
    CHECK(q.momentum == Approx(kTwoPi));
    CHECK(q.hamiltonian == Approx(M_PI + sign * M_PI / 2));
    const auto one = conserved(TorusField::single_mode(0, 0, 1.0), sign);
    CHECK(one.mass == Approx(kTwoPi));
    CHECK(one.momentum == 0.0);
    CHECK(one.hamiltonian == Approx(sign * M_PI / 2));
  }
  const auto z = conserved(TorusField(3), +1);
  CHECK(z.mass == 0.0);
  CHECK(z.momentum == 0.0);
  CHECK(z.hamiltonian == 0.0);
}

TEST_CASE("galilean boost") {
  const TorusField u = oracle::random_field(4, 21);
  CHECK(galilean_boost(u, 0) == u);
  const auto b = galilean_boost(TorusField::single_mode(1, 1, 1.0), 2);
  CHECK(b[2] == Complex(1.0, 0.0));
  CHECK(b[1] == Complex{});
  CHECK_THROWS_AS(galilean_boost(u, 3), std::invalid_argument);
  for (int beta : {-4, 2, 6}) {
    const auto q = conserved(u, +1);
    CHECK(conserved(galilean_boost(u, beta), +1).momentum == Approx(q.momentum + 0.5 * beta * q.mass).epsilon(1e-12));
  }
}

TEST_CASE("evolution commutes with boosts") {
  // resolved data: the boost must not push energy onto wrapped grid slots
  const int beta = 4, k = beta / 2, B = 40;
  const TorusField u0 = oracle::random_field(5, 13, 0.4).with_band(B);
  const auto integ = integrator(Scheme::StrangSplitStep, 1e-3, 0.5, 500);
  for (int sign : {+1, -1}) {
    const auto eq = equation(Variant::NLS, sign);
    const Trajectory plain = evolve(u0, eq, integ);
    const Trajectory boosted = evolve(project(galilean_boost(u0, beta), B), eq, integ);
    const double t = plain.times.back();
    double err = 0.0;
    for (int n = -B; n <= B - k; ++n) {
      const Complex expect = plain.snapshots.back()[n] * std::polar(1.0, beta * beta * t / 4.0 + n * beta * t);
      err = std::max(err, std::abs(boosted.snapshots.back()[n + k] - expect));
    }
    CHECK(err < 1e-10);
  }
}

TEST_CASE("plane waves evolve in closed form") {
  const double A = 0.9;
  const int n = 2;
  for (Scheme s : {Scheme::StrangSplitStep, Scheme::RK4}) {
    for (int sign : {+1, -1}) {
      for (Variant v : {Variant::NLS, Variant::WNLS}) {
        const double w = n * n + (v == Variant::NLS ? 1 : -1) * sign * A * A;
        const Trajectory tr = evolve(TorusField::single_mode(3, n, A), equation(v, sign), integrator(s, 1e-3, 1.0, 1000));
        CHECK(std::abs(tr.snapshots.back()[n] - std::polar(A, w)) < 1e-8);
      }
    }
  }
  const Trajectory zero = evolve(TorusField(3), equation(Variant::NLS), integrator(Scheme::StrangSplitStep, 1e-2, 1.0));
  for (const auto& s : zero.snapshots) CHECK(oracle::max_abs(s) == 0.0);
}

// Momentum is only conserved while the solution stays resolved: modes
// aliased on the collocation grid break continuous translation invariance.
TEST_CASE("split step conserves mass and momentum") {
  const TorusField u0 = oracle::random_field(4, 5, 0.3).with_band(48);
  for (Variant v : {Variant::NLS, Variant::WNLS}) {
    const Trajectory tr = evolve(u0, equation(v, -1), integrator(Scheme::StrangSplitStep, 1e-3, 1.0, 50));
    const auto& first = tr.ledger.front();
    for (const auto& row : tr.ledger) {
      CHECK(std::abs(row.mass - first.mass) / first.mass < 1e-12);
      CHECK(std::abs(row.momentum - first.momentum) <= 1e-10 * (std::abs(first.momentum) + first.mass));
    }
  }
}

TEST_CASE("gauge maps NLS onto WNLS") {
  const double A = 0.8;
  const TorusField pw = TorusField::single_mode(2, 1, A);
  const auto integ = integrator(Scheme::StrangSplitStep, 1e-3, 1.0, 100);
  for (int sign : {+1, -1}) {
    const Trajectory nls = evolve(pw, equation(Variant::NLS, sign), integ);
    const Trajectory same = gauge_transform(nls, 0.0, sign);
    CHECK(same.snapshots == nls.snapshots);
    const Trajectory mapped = gauge_transform(nls, A * A, sign);
    const Trajectory wnls = evolve(pw, equation(Variant::WNLS, sign), integ);
    for (std::size_t k = 0; k < wnls.size(); ++k) CHECK(oracle::max_abs_diff(mapped.snapshots[k], wnls.snapshots[k]) < 1e-10);
  }
}

TEST_CASE("truncation gauge") {
  const int N = 6;
  const double a = wick::a_N(N, 1.0);
  // mean intensity a_N gives c_N = 0
  const TorusField level = TorusField::single_mode(N, 0, std::sqrt(a));
  const auto integ = integrator(Scheme::StrangSplitStep, 2e-3, 0.5, 25);
  const Trajectory flat = evolve(level, equation(Variant::TruncatedWNLSHamiltonian, +1, N), integ);
  const Trajectory same = truncation_gauge(flat, N, 1.0);
  for (std::size_t k = 0; k < flat.size(); ++k) CHECK(oracle::max_abs_diff(same.snapshots[k], flat.snapshots[k]) < 1e-14);

  for (int sign : {+1, -1}) {
    const TorusField u0 = oracle::random_field(N, 40 + sign, 0.5);
    const Trajectory ham = evolve(u0, equation(Variant::TruncatedWNLSHamiltonian, sign, N), integ);
    const Trajectory gauged = evolve(u0, equation(Variant::TruncatedWNLSGauged, sign, N), integ);
    const Trajectory mapped = truncation_gauge(ham, N, 1.0, sign, true);
    for (std::size_t k = 0; k < mapped.size(); ++k) CHECK(l2_distance(mapped.snapshots[k], gauged.snapshots[k]) < 1e-9);
  }
}

// i v_t - v_xx + sign F(v) = 0 in Fourier is v_t = i n^2 v + i sign F; the
// central difference of the computed gauged trajectory must satisfy it to O(h^2).
TEST_CASE("gauged truncated flow satisfies its equation") {
  const int N = 6;
  const auto eq = equation(Variant::TruncatedWNLSGauged, -1, N);
  const TorusField u0 = oracle::random_field(N, 77, 0.5);
  const double h = 1e-4;
  const Trajectory tr = evolve(u0, eq, integrator(Scheme::RK4, h, 0.05, 1));
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < tr.size(); k += 10) {
    const TorusField& v = tr.snapshots[k];
    const TorusField f = nonlinearity(v, eq);
    for (int n = -N; n <= N; ++n) {
      const Complex dt = (tr.snapshots[k + 1][n] - tr.snapshots[k - 1][n]) / (2.0 * h);
      const Complex rhs = Complex(0.0, 1.0) * (static_cast<double>(n * n) * v[n] + static_cast<double>(eq.sign) * f[n]);
      worst = std::max(worst, std::abs(dt - rhs));
    }
  }
  CHECK(worst < 2e-4);
}

TEST_CASE("divergence carries the last valid time") {
  IntegratorSpec integ = integrator(Scheme::StrangSplitStep, 1e-3, 5.0, 100);
  integ.amplitude_cap = 3.0;
  const TorusField u0 = TorusField::single_mode(2, 0, 2.0) + TorusField::single_mode(2, 1, 0.01);
  double last = -1.0;
  try {
    evolve_observed(u0, equation(Variant::NLS, -1), integ, [&](double t, const TorusField&) { last = t; });
    FAIL("expected divergence");
  } catch (const IntegrationDiverged& e) {
    CHECK(e.last_valid_time() > 0.0);
    CHECK(e.last_valid_time() < 5.0);
    CHECK(e.last_valid_time() >= last);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(equation(Variant::NLS, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(equation(Variant::TruncatedNLS, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(equation(Variant::NLS, 1, 8).validate(), std::invalid_argument);
  CHECK_NOTHROW(equation(Variant::TruncatedWNLSGauged, -1, 8).validate());
  CHECK_THROWS_AS(integrator(Scheme::RK4, 0.0, 1.0).validate(), std::invalid_argument);
  CHECK(variant_from_string(to_string(Variant::TruncatedWNLSHamiltonian)) == Variant::TruncatedWNLSHamiltonian);
  CHECK(scheme_from_string(to_string(Scheme::RK4)) == Scheme::RK4);
  CHECK_THROWS_AS(variant_from_string("KdV"), std::invalid_argument);
}
