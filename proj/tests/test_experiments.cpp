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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "tnls/experiments.hpp"

using namespace tnls;
using namespace tnls::experiments;
using doctest::Approx;

namespace {

WeakSequenceSpec small_sequence(Variant v, Complex bump = 1.0) {
  WeakSequenceSpec s;
  s.base = TorusField::single_mode(1, 1, 1.0);
  s.probe = s.base;
  s.bump = bump;
  s.modes = {2, 4, 8};
  s.horizon = 0.5;
  s.eq.variant = v;
  s.integ.dt = 2e-3;
  s.working_band = 32;
  return s;
}

}  // namespace

TEST_CASE("shipped thresholds match the defaults") {
  const auto file = Thresholds::load(TNLS_FIXTURE_DIR "/thresholds.json");
  CHECK(file.to_json() == Thresholds::defaults().to_json());
  CHECK(Thresholds::from_json(Thresholds::defaults().to_json()).to_json() == Thresholds::defaults().to_json());
}

TEST_CASE("sequence validation") {
  auto s = small_sequence(Variant::WNLS);
  CHECK_NOTHROW(s.validate());
  s.modes = {4, 0};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_sequence(Variant::WNLS);
  s.working_band = 16;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_sequence(Variant::WNLS);
  s.probe = TorusField(1);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("zero bump gives zero gaps") {
  const auto r = weak_continuity_run(small_sequence(Variant::WNLS, 0.0));
  for (const auto& p : r.points) {
    CHECK(p.gap == 0.0);
    CHECK(p.l4_norm_gap == 0.0);
  }
}

TEST_CASE("gaps do not depend on the order of the modes") {
  auto s = small_sequence(Variant::WNLS);
  const auto a = weak_continuity_run(s);
  s.modes = {8, 2, 4};
  s.threads = 3;
  const auto b = weak_continuity_run(s);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = *std::find_if(a.points.begin(), a.points.end(), [&](const auto& q) { return q.n == s.modes[i]; });
    CHECK(b.points[i].n == s.modes[i]);
    CHECK(b.points[i].gap == p.gap);
    CHECK(b.points[i].l4_norm_gap == p.l4_norm_gap);
  }
  CHECK(b.spearman == Approx(a.spearman).epsilon(1e-14));
  CHECK(b.ratio_last_first == a.ratio_last_first);
  s.modes = {2, 4, 2};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("WNLS gaps are invariant under a global phase") {
  const Complex rot = std::polar(1.0, 0.7);
  auto s = small_sequence(Variant::WNLS);
  const auto a = weak_continuity_run(s);
  s.base = rot * s.base;
  s.probe = rot * s.probe;
  s.bump = rot * s.bump;
  const auto b = weak_continuity_run(s);
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(b.points[i].gap == Approx(a.points[i].gap).epsilon(1e-9));
}

TEST_CASE("molinet run obeys the gauge identity") {
  const auto r = molinet_gap_run(small_sequence(Variant::NLS));
  REQUIRE(r.gauge_residual.size() == 3);
  for (double g : r.gauge_residual) CHECK(g < 1e-8);
  CHECK(r.predicted_plateau > 0.0);
  CHECK(r.nls.points.back().gap > r.wnls.points.back().gap);
  const auto zero = molinet_gap_run(small_sequence(Variant::NLS, 0.0));
  for (const auto& p : zero.nls.points) CHECK(p.gap == 0.0);
  for (const auto& p : zero.wnls.points) CHECK(p.gap == 0.0);
}

TEST_CASE("closed-form free L4 integral against time quadrature") {
  const TorusField f = oracle::random_field(4, 12, 0.7);
  const double T = 0.8;
  const int K = 4000;
  double acc = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double t = -T + 2.0 * T * k / K;
    const double w = (k == 0 || k == K) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * oracle::integral_abs_pow_direct(linear_propagator(f, t), 4);
  }
  acc *= 2.0 * T / K / 3.0;
  CHECK(free_l4_fourth_power(f, T) == Approx(acc).epsilon(1e-7));
}

TEST_CASE("free L4 ratio is invariant over a full period") {
  const TorusField f = oracle::random_field(5, 31);
  const double base = free_l4_fourth_power(f, M_PI);
  for (double s : {0.3, 1.1, 2.9}) CHECK(free_l4_fourth_power(linear_propagator(f, s), M_PI) == Approx(base).epsilon(1e-10));
}

TEST_CASE("strichartz probe") {
  RandomDataSpec e;
  e.max_mode = 3;
  e.gaussian_scale = 0.0;
  e.offset = TorusField::single_mode(3, 1, 1.0);
  const double T = 0.5;
  const auto r = strichartz_ratio_probe(e, T, 100);
  CHECK(r.used_samples == 100);
  CHECK(r.max_ratio == Approx(std::pow(4.0 * M_PI * T, 0.25) / std::sqrt(kTwoPi)));
  CHECK(r.rel_change < 1e-12);

  e.offset.reset();
  const auto z = strichartz_ratio_probe(e, T, 100);
  CHECK(z.used_samples == 0);
  CHECK_THROWS_AS(strichartz_ratio_probe(e, 1.5, 100), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_ratio_probe(e, T, 99), std::invalid_argument);
}

TEST_CASE("a priori probe at s = 0 is mass conservation") {
  RandomDataSpec e;
  e.alpha = 0.5;
  e.max_mode = 8;
  e.seed = 4;
  const auto r = apriori_growth_probe(e, 0.0, 0.2, 6, +1, 1e-3, 2);
  REQUIRE(r.ratios.size() == 6);
  for (double q : r.ratios) CHECK(std::abs(q - 1.0) < 1e-10);
  for (double q : r.ratios_doubled) CHECK(std::abs(q - 1.0) < 1e-10);
  CHECK(r.verdict);
  CHECK_THROWS_AS(apriori_growth_probe(e, 0.5, 0.2, 6), std::invalid_argument);
}

TEST_CASE("plane wave solution") {
  EquationSpec eq;
  eq.variant = Variant::WNLS;
  eq.sign = -1;
  const auto u = plane_wave_solution(TorusField::single_mode(2, 2, 0.5), eq, 1.0);
  REQUIRE(u);
  CHECK(std::abs((*u)[2] - std::polar(0.5, 4.0 + 0.25)) < 1e-15);
  CHECK(!plane_wave_solution(oracle::random_field(2, 1), eq, 1.0));
}

TEST_CASE("order study") {
  EquationSpec eq;
  eq.variant = Variant::NLS;
  const TorusField two = TorusField::single_mode(2, 0, 0.6) + TorusField::single_mode(2, 1, 0.4);
  const auto strang = integrator_order_study(two, eq, Scheme::StrangSplitStep, {0.02, 0.01, 0.005});
  CHECK(strang.order == Approx(2.0).epsilon(0.1));
  CHECK(strang.verdict);
  CHECK(!strang.exact_reference);

  eq.variant = Variant::WNLS;
  const auto rk = integrator_order_study(two, eq, Scheme::RK4, {0.02, 0.01, 0.005});
  CHECK(rk.order == Approx(4.0).epsilon(0.05));
  CHECK(rk.verdict);

  const auto quiet = integrator_order_study(TorusField::single_mode(2, 1, 1e-9), eq, Scheme::StrangSplitStep,
                                            {0.1, 0.05, 0.025});
  CHECK(quiet.exact_reference);
  CHECK(quiet.exact_to_roundoff);
  CHECK(quiet.verdict);

  CHECK_THROWS_AS(integrator_order_study(two, eq, Scheme::RK4, {0.02, 0.01}), std::invalid_argument);
  CHECK_THROWS_AS(integrator_order_study(two, eq, Scheme::RK4, {0.01, 0.02, 0.005}), std::invalid_argument);
}

TEST_CASE("reports carry metadata and verdicts") {
  const auto r = weak_continuity_run(small_sequence(Variant::WNLS));
  const Json meta{{"run", "unit"}};
  const auto rep = to_report(r, meta);
  CHECK(rep.metadata["run"] == "unit");
  CHECK(rep.verdict == r.verdict);
  CHECK(!rep.series.empty());
  const auto nd = rep.to_ndjson();
  const auto first = Json::parse(nd.substr(0, nd.find('\n')));
  CHECK(first["type"] == "header");
  CHECK(rep.summary_csv().rfind("name,value\n", 0) == 0);
  CHECK(rep.spec_hash() == fnv1a_hex(rep.metadata.dump()));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}
