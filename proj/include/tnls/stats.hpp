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

#include <span>
#include <utility>
#include <vector>

namespace tnls::stats {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanEstimate mean_and_stderr(std::span<const double> xs);

/// Linear-interpolated quantile, q in [0, 1]. Input need not be sorted.
double quantile(std::vector<double> xs, double q);
inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Upper-tail probability of the chi-square distribution with k degrees of freedom.
double chi_square_sf(double statistic, int k);

}  // namespace tnls::stats
