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

#include <complex>
#include <cstddef>
#include <span>

namespace tnls::fft {

/// In-place unnormalized transforms backed by FFTW.
///   forward:  X_k = sum_j x_j e^{-2 pi i jk/n}
///   backward: x_j = sum_k X_k e^{+2 pi i jk/n}
/// Plans are created once per size and cached; execution is safe from any
/// number of threads.
void forward(std::span<std::complex<double>> data);
void backward(std::span<std::complex<double>> data);
void forward(std::span<std::complex<long double>> data);
void backward(std::span<std::complex<long double>> data);

}  // namespace tnls::fft
