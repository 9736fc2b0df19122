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
#include <set>
#include <vector>

#include "tnls/montecarlo.hpp"
#include "tnls/parallel.hpp"
#include "tnls/rng.hpp"
#include "tnls/stats.hpp"

using namespace tnls;
using doctest::Approx;

// Known-answer vectors shipped with Random123 for philox4x32_10.
TEST_CASE("philox known answers") {
  CHECK(rng::philox4x32({0, 0, 0, 0}, {0, 0}) == rng::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(rng::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        rng::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(rng::philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        rng::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of their coordinates") {
  const rng::Stream a(42, rng::kTagGaussian), b(42, rng::kTagGaussian), c(42, rng::kTagModes);
  CHECK(a.block(1000) == b.block(1000));
  CHECK(a.block(7) != c.block(7));
  CHECK(a.normals(3) == b.normals(3));
  CHECK(rng::derive_seed(5, 1) == rng::derive_seed(5, 1));
  std::set<std::uint64_t> children;
  for (std::uint64_t i = 0; i < 1000; ++i) children.insert(rng::derive_seed(5, i));
  CHECK(children.size() == 1000);
}

TEST_CASE("unit interval excludes zero") {
  CHECK(rng::to_unit_open0(0, 0) > 0.0);
  CHECK(rng::to_unit_open0(0xffffffff, 0xffffffff) == 1.0);
}

TEST_CASE("normal moments") {
  const rng::Stream s(2024, rng::kTagGaussian);
  const auto sums = mc::reduce<3>(200'000, 4, [&](std::uint64_t i) {
    const auto z = s.normals(i);
    return std::array<double, 3>{z[0], z[0] * z[0], z[0] * z[1]};
  });
  CHECK(std::abs(sums.mean(0)) < 4 * sums.std_error(0));
  CHECK(std::abs(sums.mean(1) - 1.0) < 4 * sums.std_error(1));
  CHECK(std::abs(sums.mean(2)) < 4 * sums.std_error(2));
}

TEST_CASE("reductions do not depend on the thread count") {
  const rng::Stream s(9, rng::kTagGaussian);
  auto f = [&](std::uint64_t i) {
    const auto z = s.normals(i);
    return std::array<double, 1>{z[0] * z[0] * z[1]};
  };
  const auto one = mc::reduce<1>(100'003, 1, f);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = mc::reduce<1>(100'003, t, f);
    CHECK(many.sum[0] == one.sum[0]);
    CHECK(many.sum_sq[0] == one.sum_sq[0]);
    CHECK(many.count == one.count);
  }
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<int> hits(1000);
  parallel_for(hits.size(), 6, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("quantiles and ranks") {
  CHECK(stats::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(stats::quantile({0.0, 10.0}, 0.25) == Approx(2.5));
  const std::vector<double> x{1, 2, 3, 4, 5}, up{2, 4, 5, 9, 20}, down{5, 4, 3, 2, 1};
  CHECK(stats::spearman(x, up) == Approx(1.0));
  CHECK(stats::spearman(x, down) == Approx(-1.0));
  const std::vector<double> ties{1, 1, 2, 2, 3};
  CHECK(stats::spearman(x, ties) == Approx(0.9486832980505138));
}

TEST_CASE("log-log slope and tails") {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
  CHECK(stats::loglog_slope(x, y) == Approx(2.0));
  CHECK(stats::chi_square_sf(0.0, 3) == Approx(1.0));
  CHECK(stats::chi_square_sf(3.841458820694124, 1) == Approx(0.05));
  const std::vector<double> v{1, 2, 3, 4};
  const auto m = stats::mean_and_stderr(v);
  CHECK(m.mean == Approx(2.5));
  CHECK(m.std_error == Approx(std::sqrt(5.0 / 12.0)));
}
