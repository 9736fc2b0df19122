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
#include "tnls/montecarlo.hpp"
#include "tnls/random_data.hpp"
#include "tnls/wick.hpp"

using namespace tnls;
using doctest::Approx;

namespace {

RandomDataSpec spec(double alpha, int max_mode, std::uint64_t seed = 1) {
  RandomDataSpec s;
  s.alpha = alpha;
  s.max_mode = max_mode;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("sampling is deterministic and extends consistently") {
  const auto a = sample(spec(1.0, 16, 99));
  CHECK(a == sample(spec(1.0, 16, 99)));
  CHECK(!(a == sample(spec(1.0, 16, 100))));
  const auto wide = sample(spec(1.0, 32, 99));
  for (int n = -16; n <= 16; ++n) CHECK(wide[n] == a[n]);
  CHECK(!(a == sample(spec(1.0, 16, 99).member(0))));
}

TEST_CASE("zero scale returns the offset") {
  RandomDataSpec s = spec(0.5, 3);
  s.gaussian_scale = 0.0;
  s.offset = TorusField::single_mode(3, 1, Complex(0.25, -1.0));
  CHECK(sample(s) == *s.offset);
  CHECK(expected_mean_intensity(s) == Approx(1.0625));
  s.offset = TorusField::single_mode(3, 1, 1.0);
  CHECK(expected_mean_intensity(s) == 1.0);
  s.offset = TorusField::single_mode(5, 5, 1.0);
  CHECK_THROWS_AS(sample(s), std::invalid_argument);
}

TEST_CASE("expected mean intensity") {
  CHECK(expected_mean_intensity(spec(1.0, 1)) == Approx(2.0));
  CHECK(expected_mean_intensity(spec(0.75, 40)) == Approx(wick::a_N(40, 0.75)));
}

TEST_CASE("white noise has flat spectrum one half") {
  const int M = 4;
  const auto base = spec(0.0, M, 2026);
  const auto sums = mc::reduce<2 * M + 2>(100'000, 4, [&](std::uint64_t i) {
    const auto u = sample(base.member(i));
    std::array<double, 2 * M + 2> v{};
    for (int n = -M; n <= M; ++n) v[static_cast<std::size_t>(n + M)] = std::norm(u[n]);
    v[2 * M + 1] = mean_intensity(u);
    return v;
  });
  for (std::size_t k = 0; k < 2 * M + 1; ++k) CHECK(std::abs(sums.mean(k) - 0.5) <= 3.0 * sums.std_error(k));
  CHECK(std::abs(sums.mean(2 * M + 1) - expected_mean_intensity(base)) <= 3.0 * sums.std_error(2 * M + 1));
}

TEST_CASE("regularity profile") {
  const auto rows = regularity_profile(spec(1.0, 64, 5), {0.0, 0.5}, {8, 16, 32, 64}, 200, 2);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].s == 0.0);
  CHECK(rows[0].cutoff == 8);
  CHECK(rows[4].s == 0.5);
  for (const auto& r : rows) {
    CHECK(r.q25 <= r.median);
    CHECK(r.median <= r.q75);
    CHECK(r.samples == 200);
  }
  // s = 0 saturates, s = 1/2 keeps growing like sqrt(log M)
  CHECK(rows[3].median / rows[0].median < 1.05);
  CHECK(rows[7].median / rows[4].median > 1.2);
  CHECK(regularity_profile(spec(1.0, 64, 5), {0.0, 0.5}, {8, 16, 32, 64}, 200, 1)[5].median == rows[5].median);

  CHECK_THROWS_AS(regularity_profile(spec(1.0, 16), {0.0}, {8, 32}, 10), std::invalid_argument);
  CHECK_THROWS_AS(regularity_profile(spec(1.0, 16), {0.0}, {8, 4}, 10), std::invalid_argument);
  CHECK_THROWS_AS(regularity_profile(spec(1.0, 16), {0.0}, {8}, 0), std::invalid_argument);
}

TEST_CASE("profile csv") {
  const auto rows = regularity_profile(spec(0.0, 8), {0.0}, {4, 8}, 5);
  const auto csv = profile_csv(rows);
  CHECK(csv.rfind("s,M,median_norm,q25,q75,samples\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
