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

#include "tnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>
#include <vector>

namespace tnls::fft {
namespace {

template <typename Real>
struct Fftw;

template <>
struct Fftw<double> {
  using plan = fftw_plan;
  using complex = fftw_complex;
  static plan make(int n, complex* buf, int sign, unsigned flags) { return fftw_plan_dft_1d(n, buf, buf, sign, flags); }
  static void run(plan p, complex* buf) { fftw_execute_dft(p, buf, buf); }
  static void destroy(plan p) { fftw_destroy_plan(p); }
};

template <>
struct Fftw<long double> {
  using plan = fftwl_plan;
  using complex = fftwl_complex;
  static plan make(int n, complex* buf, int sign, unsigned flags) { return fftwl_plan_dft_1d(n, buf, buf, sign, flags); }
  static void run(plan p, complex* buf) { fftwl_execute_dft(p, buf, buf); }
  static void destroy(plan p) { fftwl_destroy_plan(p); }
};

template <typename Real>
class PlanCache {
  using F = Fftw<Real>;
  using Plan = std::remove_pointer_t<typename F::plan>;
  struct Deleter {
    void operator()(Plan* p) const noexcept { F::destroy(p); }
  };

public:
  typename F::plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second.get();
    // FFTW_ESTIMATE leaves the buffer untouched and gives a deterministic plan.
    // The planner itself is not thread safe, hence one lock for both precisions.
    std::lock_guard planner(planner_mutex());
    std::vector<std::complex<Real>> scratch(n);
    auto* buf = reinterpret_cast<typename F::complex*>(scratch.data());
    auto p = F::make(static_cast<int>(n), buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, std::unique_ptr<Plan, Deleter>(p));
    return p;
  }

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan, Deleter>> plans_;
};

template <typename Real>
void execute(std::span<std::complex<Real>> data, int sign) {
  if (data.size() <= 1) return;
  auto p = PlanCache<Real>::instance().get(data.size(), sign);
  Fftw<Real>::run(p, reinterpret_cast<typename Fftw<Real>::complex*>(data.data()));
}

}  // namespace

void forward(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }
void backward(std::span<std::complex<double>> data) { execute(data, FFTW_BACKWARD); }
void forward(std::span<std::complex<long double>> data) { execute(data, FFTW_FORWARD); }
void backward(std::span<std::complex<long double>> data) { execute(data, FFTW_BACKWARD); }

}  // namespace tnls::fft
