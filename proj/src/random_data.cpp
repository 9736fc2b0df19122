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

#include "tnls/random_data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "tnls/parallel.hpp"
#include "tnls/rng.hpp"
#include "tnls/stats.hpp"

namespace tnls {

void RandomDataSpec::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("random data: alpha must be >= 0");
  if (max_mode < 0) throw std::invalid_argument("random data: max_mode must be >= 0");
  if (!(gaussian_scale >= 0.0)) throw std::invalid_argument("random data: gaussian_scale must be >= 0");
  if (offset && offset->max_mode() > max_mode) {
    throw std::invalid_argument("random data: offset is not band-limited to max_mode");
  }
}

RandomDataSpec RandomDataSpec::member(std::uint64_t index) const {
  RandomDataSpec out = *this;
  out.seed = rng::derive_seed(seed, index);
  return out;
}

TorusField sample(const RandomDataSpec& spec) {
  spec.validate();
  const int band = spec.max_mode;
  const rng::Stream stream(spec.seed, rng::kTagModes);
  const double amp = std::sqrt(0.5 * spec.gaussian_scale);
  std::vector<Complex> c(static_cast<std::size_t>(2 * band + 1));
  for (int n = -band; n <= band; ++n) {
    const auto z = stream.normals(static_cast<std::uint64_t>(static_cast<std::int64_t>(n)));
    const double weight = 1.0 / std::sqrt(1.0 + std::pow(std::abs(static_cast<double>(n)), 2.0 * spec.alpha));
    Complex v = amp * weight * Complex(z[0], z[1]);
    if (spec.offset) v += (*spec.offset)[n];
    c[static_cast<std::size_t>(n + band)] = v;
  }
  return TorusField(band, std::move(c));
}

double expected_mean_intensity(const RandomDataSpec& spec) {
  spec.validate();
  double acc = 0.0;
  for (int n = -spec.max_mode; n <= spec.max_mode; ++n) {
    acc += 1.0 / (1.0 + std::pow(std::abs(static_cast<double>(n)), 2.0 * spec.alpha));
  }
  acc *= spec.gaussian_scale;
  if (spec.offset) acc += mean_intensity(*spec.offset);
  return acc;
}

std::vector<ProfileRow> regularity_profile(const RandomDataSpec& spec, const std::vector<double>& s_values,
                                           const std::vector<int>& cutoffs, std::size_t samples,
                                           unsigned threads) {
  spec.validate();
  if (samples == 0) throw std::invalid_argument("regularity_profile: samples must be positive");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 0 || cutoffs[i] > spec.max_mode) {
      throw std::invalid_argument("regularity_profile: cutoff " + std::to_string(cutoffs[i]) +
                                  " outside [0, max_mode]");
    }
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) throw std::invalid_argument("regularity_profile: cutoffs must increase");
  }
  const std::size_t cells = s_values.size() * cutoffs.size();
  // norms[cell][sample]
  std::vector<std::vector<double>> norms(cells, std::vector<double>(samples));
  parallel_for(samples, threads, [&](std::size_t k) {
    const TorusField u = sample(spec.member(k));
    for (std::size_t i = 0; i < s_values.size(); ++i) {
      // Accumulate the weighted partial sums once per s across increasing cutoffs.
      double acc = 0.0;
      int done = -1;
      for (std::size_t j = 0; j < cutoffs.size(); ++j) {
        for (int n = done + 1; n <= cutoffs[j]; ++n) {
          const double w = std::pow(1.0 + n, 2.0 * s_values[i]);
          acc += w * (n == 0 ? std::norm(u[0]) : std::norm(u[n]) + std::norm(u[-n]));
        }
        done = cutoffs[j];
        norms[i * cutoffs.size() + j][k] = std::sqrt(acc);
      }
    }
  });
  std::vector<ProfileRow> rows;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    for (std::size_t j = 0; j < cutoffs.size(); ++j) {
      const auto& v = norms[i * cutoffs.size() + j];
      rows.push_back({s_values[i], cutoffs[j], stats::quantile(v, 0.5), stats::quantile(v, 0.25),
                      stats::quantile(v, 0.75), samples});
    }
  }
  return rows;
}

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream out;
  out << "s,M,median_norm,q25,q75,samples\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{}\n", r.s, r.cutoff, r.median, r.q25, r.q75, r.samples);
  }
  return out.str();
}

}  // namespace tnls
