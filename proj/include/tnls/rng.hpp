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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace tnls::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Stateless: the output is
/// a pure function of (counter, key), so any draw can be reproduced from its
/// coordinates regardless of evaluation order.
Counter philox4x32(Counter ctr, Key key) noexcept;

inline Key key_from_seed(std::uint64_t seed) noexcept {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Uniform in (0, 1] with 53 random bits.
inline double to_unit_open0(std::uint32_t lo, std::uint32_t hi) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

/// Two independent standard normals from one Philox block (Box-Muller).
inline std::array<double, 2> normal_pair(const Counter& block) noexcept {
  const double u1 = to_unit_open0(block[0], block[1]);
  const double u2 = to_unit_open0(block[2], block[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

/// A keyed stream of blocks: the block at index i is philox(ctr(i), key),
/// with `tag` occupying the counter's upper words to separate stream families.
class Stream {
public:
  Stream(std::uint64_t seed, std::uint64_t tag) noexcept : key_(key_from_seed(seed)), tag_(tag) {}

  Counter block(std::uint64_t index) const noexcept {
    return philox4x32({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                       static_cast<std::uint32_t>(tag_), static_cast<std::uint32_t>(tag_ >> 32)},
                      key_);
  }

  std::array<double, 2> normals(std::uint64_t index) const noexcept {
    return normal_pair(block(index));
  }

private:
  Key key_;
  std::uint64_t tag_;
};

/// Child seed for ensemble member `index`, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// Tags separating the stream families used across the library.
inline constexpr std::uint64_t kTagModes = 0x4d4f444553ULL;     // "MODES"
inline constexpr std::uint64_t kTagDerive = 0x4445524956ULL;    // "DERIV"
inline constexpr std::uint64_t kTagGaussian = 0x4741555353ULL;  // "GAUSS"

}  // namespace tnls::rng
