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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tnls/serialize.hpp"

namespace tnls::cli {

inline constexpr const char* kToolName = "tnls";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "TNLS_OUT_DIR";

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
  kExitVerdict = 4,
};

struct RunOptions {
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;  ///< falls back to the config, then 1
  bool repro = false;
  std::vector<std::string> overrides;  ///< "dotted.path=value", applied in order
};

const std::vector<std::string>& command_names();

/// $TNLS_OUT_DIR when set and non-empty, otherwise "tnls-out".
std::filesystem::path default_out_dir();

/// Applies --seed and --set overrides to `config`, validates it and runs the
/// command. Diagnostics go to `err`, one-line progress to `log`. Returns an
/// ExitCode.
int run(const std::string& command, Json config, const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace tnls::cli
