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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tnls/parallel.hpp"

namespace tnls::mc {

/// Running sums of K observables over a Monte-Carlo loop.
template <std::size_t K>
struct Sums {
  std::uint64_t count = 0;
  std::array<double, K> sum{};
  std::array<double, K> sum_sq{};

  void add(const std::array<double, K>& v) {
    ++count;
    for (std::size_t k = 0; k < K; ++k) {
      sum[k] += v[k];
      sum_sq[k] += v[k] * v[k];
    }
  }

  void merge(const Sums& o) {
    count += o.count;
    for (std::size_t k = 0; k < K; ++k) {
      sum[k] += o.sum[k];
      sum_sq[k] += o.sum_sq[k];
    }
  }

  double mean(std::size_t k) const { return sum[k] / static_cast<double>(count); }

  double std_error(std::size_t k) const {
    const double n = static_cast<double>(count);
    const double m = mean(k);
    const double var = std::max(0.0, (sum_sq[k] / n - m * m) * n / (n - 1.0));
    return std::sqrt(var / n);
  }
};

inline constexpr std::size_t kPartitions = 64;

/// Evaluates f(i) for i in [0, samples) and reduces the results over a fixed
/// partition of the index range, merged in partition order. The floating-point
/// result is therefore independent of `threads`.
template <std::size_t K, typename F>
Sums<K> reduce(std::uint64_t samples, unsigned threads, F&& f) {
  std::vector<Sums<K>> parts(kPartitions);
  parallel_for(kPartitions, threads, [&](std::size_t p) {
    const std::uint64_t begin = samples * p / kPartitions;
    const std::uint64_t end = samples * (p + 1) / kPartitions;
    for (std::uint64_t i = begin; i < end; ++i) parts[p].add(f(i));
  });
  Sums<K> total;
  for (const auto& s : parts) total.merge(s);
  return total;
}

}  // namespace tnls::mc
