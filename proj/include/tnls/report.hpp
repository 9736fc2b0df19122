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

#include <string>
#include <utility>
#include <vector>

#include "tnls/serialize.hpp"

namespace tnls {

struct Series {
  std::string name;
  std::string x_units;
  std::string y_units;
  std::vector<double> x;
  std::vector<double> y;
};

/// Structured experiment output. `metadata` carries the full producing specs
/// and seeds; `spec_hash` identifies them and tags every series.
struct ExperimentReport {
  std::string kind;
  Json metadata = Json::object();
  std::vector<Series> series;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, bool>> verdicts;
  bool verdict = false;

  /// FNV-1a of metadata.dump().
  std::string spec_hash() const;

  /// Newline-delimited records: a header with metadata, one record per
  /// series, then a summary with scalars and verdicts.
  std::string to_ndjson() const;

  /// name,value table of scalars and verdicts.
  std::string summary_csv() const;
};

std::string fnv1a_hex(const std::string& text);

}  // namespace tnls
