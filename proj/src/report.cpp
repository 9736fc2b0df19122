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

#include "tnls/report.hpp"

#include <cstdint>
#include <sstream>

#include <fmt/format.h>

namespace tnls {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string ExperimentReport::spec_hash() const { return fnv1a_hex(metadata.dump()); }

std::string ExperimentReport::to_ndjson() const {
  const std::string hash = spec_hash();
  std::ostringstream out;
  Json header;
  header["type"] = "header";
  header["kind"] = kind;
  header["spec_hash"] = hash;
  header["metadata"] = metadata;
  out << header.dump() << '\n';
  for (const auto& s : series) {
    Json j;
    j["type"] = "series";
    j["name"] = s.name;
    j["spec_hash"] = hash;
    j["x_units"] = s.x_units;
    j["y_units"] = s.y_units;
    j["x"] = s.x;
    j["y"] = s.y;
    out << j.dump() << '\n';
  }
  Json summary;
  summary["type"] = "summary";
  summary["spec_hash"] = hash;
  Json sc = Json::object();
  for (const auto& [k, v] : scalars) sc[k] = v;
  summary["scalars"] = std::move(sc);
  Json vd = Json::object();
  for (const auto& [k, v] : verdicts) vd[k] = v;
  summary["verdicts"] = std::move(vd);
  summary["verdict"] = verdict;
  out << summary.dump() << '\n';
  return out.str();
}

std::string ExperimentReport::summary_csv() const {
  std::ostringstream out;
  out << "name,value\n";
  for (const auto& [k, v] : scalars) out << fmt::format("{},{}\n", k, v);
  for (const auto& [k, v] : verdicts) out << fmt::format("{},{}\n", k, v ? "true" : "false");
  out << fmt::format("verdict,{}\n", verdict ? "true" : "false");
  return out.str();
}

}  // namespace tnls
