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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnls/field.hpp"

namespace tnls {

/// Gaussian random Fourier data
///   u(x) = v0(x) + sum_{|n| <= max_mode} g_n / sqrt(1 + |n|^{2 alpha}) e^{inx},
/// with g_n independent complex Gaussians, E|g_n|^2 = gaussian_scale and
/// independent real and imaginary parts.
struct RandomDataSpec {
  double alpha = 0.0;
  int max_mode = 0;
  std::uint64_t seed = 0;
  std::optional<TorusField> offset;
  double gaussian_scale = 1.0;

  void validate() const;
  /// Same spec with seed derive_seed(seed, index): ensemble member `index`.
  RandomDataSpec member(std::uint64_t index) const;
};

/// Deterministic in (seed, n): each coefficient comes from the counter-based
/// stream keyed by the seed at counter n, so a larger max_mode extends a
/// sample without changing its existing modes.
TorusField sample(const RandomDataSpec& spec);

/// gaussian_scale * sum_{|n| <= max_mode} 1/(1 + |n|^{2 alpha}) + mean_intensity(offset).
double expected_mean_intensity(const RandomDataSpec& spec);

struct ProfileRow {
  double s = 0.0;
  int cutoff = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::size_t samples = 0;
};

/// Median (and quartiles) over ensemble members of ||P_M u||_{H^s} for every
/// (s, M). Rows are ordered by s, then M.
/// Throws std::invalid_argument if cutoffs are not increasing, exceed
/// max_mode, or samples == 0.
std::vector<ProfileRow> regularity_profile(const RandomDataSpec& spec, const std::vector<double>& s_values,
                                           const std::vector<int>& cutoffs, std::size_t samples,
                                           unsigned threads = 1);

/// CSV with header s,M,median_norm,q25,q75,samples.
std::string profile_csv(const std::vector<ProfileRow>& rows);

}  // namespace tnls
